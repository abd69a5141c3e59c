use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Name of the defined Black Swan predicate. It is an abbreviation and
/// never reaches the kernel; see [`crate::logic::expand_defs`].
pub const BLACK_SWAN: &str = "B";
pub const OCCURS: &str = "occ";
pub const IMAGINABLE: &str = "img";
pub const LESS: &str = "lt";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(n) => Some(n),
            Term::Const(_) => None,
        }
    }

    /// Variables occurring in the term (at most one, there are no function symbols).
    pub fn vars(&self) -> BTreeSet<String> {
        self.as_var().map(|v| v.to_string()).into_iter().collect()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// First-order formula. Equality is purely syntactic: `forall x (p(x))` and
/// `forall y (p(y))` are different formulas.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Pred(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Pred(name.into(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(body))
    }

    /// Splits `a -> b` into its antecedent and consequent.
    pub fn as_implies(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Implies(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Pred(..) => 1,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Every predicate symbol with the arities it is used at.
    pub fn predicates(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.collect_predicates(&mut out);
        out
    }

    fn collect_predicates(&self, out: &mut BTreeSet<(String, usize)>) {
        match self {
            Formula::Pred(p, args) => {
                out.insert((p.clone(), args.len()));
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => {
                a.collect_predicates(out)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_predicates(out);
                b.collect_predicates(out);
            }
        }
    }

    fn collect_terms<'a>(&'a self, out: &mut Vec<&'a Term>) {
        match self {
            Formula::Pred(_, args) => out.extend(args.iter()),
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.collect_terms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_terms(out);
                b.collect_terms(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("predicate `{name}` has arity {expected}, used with {found} argument(s)")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("constant `{0}` is not declared")]
    UndeclaredConstant(String),
    #[error("`{0}` is declared both as a predicate and as a constant")]
    NameClash(String),
    #[error("`{0}` is not a valid lowercase identifier")]
    BadName(String),
}

/// Predicate arities and declared constants.
///
/// Defined symbols (abbreviations) are kept apart from the primitive
/// predicates; they may appear in input text but are expanded before any
/// formula reaches the kernel or the model checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    predicates: BTreeMap<String, usize>,
    defined: BTreeMap<String, usize>,
    constants: BTreeSet<String>,
}

fn is_lower_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl Signature {
    pub fn empty() -> Self {
        Signature {
            predicates: BTreeMap::new(),
            defined: BTreeMap::new(),
            constants: BTreeSet::new(),
        }
    }

    /// `occ/1`, `img/1`, `lt/2`, plus the abbreviation `B/1`.
    pub fn black_swan() -> Self {
        let mut sig = Signature::empty();
        sig.predicates.insert(OCCURS.into(), 1);
        sig.predicates.insert(IMAGINABLE.into(), 1);
        sig.predicates.insert(LESS.into(), 2);
        sig.defined.insert(BLACK_SWAN.into(), 1);
        sig
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Result<Self, SignatureError> {
        if !is_lower_ident(name) {
            return Err(SignatureError::BadName(name.into()));
        }
        if self.constants.contains(name) {
            return Err(SignatureError::NameClash(name.into()));
        }
        self.predicates.insert(name.into(), arity);
        Ok(self)
    }

    pub fn with_constant(mut self, name: &str) -> Result<Self, SignatureError> {
        if !is_lower_ident(name) {
            return Err(SignatureError::BadName(name.into()));
        }
        if self.predicates.contains_key(name) {
            return Err(SignatureError::NameClash(name.into()));
        }
        self.constants.insert(name.into());
        Ok(self)
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.constants.iter().map(String::as_str)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.predicates
            .get(name)
            .or_else(|| self.defined.get(name))
            .copied()
    }

    pub fn primitive_predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Checks predicate arities and constant declarations.
    pub fn check(&self, f: &Formula) -> Result<(), SignatureError> {
        for (name, found) in f.predicates() {
            match self.arity(&name) {
                None => return Err(SignatureError::UnknownPredicate(name)),
                Some(expected) if expected != found => {
                    return Err(SignatureError::ArityMismatch {
                        name,
                        expected,
                        found,
                    })
                }
                Some(_) => {}
            }
        }
        let mut terms = Vec::new();
        f.collect_terms(&mut terms);
        for t in terms {
            if let Term::Const(c) = t {
                if !self.constants.contains(c) {
                    return Err(SignatureError::UndeclaredConstant(c.clone()));
                }
            }
        }
        Ok(())
    }
}

impl Default for Signature {
    fn default() -> Self {
        Signature::black_swan()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn black_swan_signature() {
        let sig = Signature::black_swan();
        let prims: Vec<_> = sig.primitive_predicates().collect();
        assert_eq!(prims, vec![("img", 1), ("lt", 2), ("occ", 1)]);
        assert_eq!(sig.arity("B"), Some(1));
        assert_eq!(sig.constants().count(), 0);
    }

    #[test]
    fn arity_and_constants_are_checked() {
        let sig = Signature::black_swan().with_constant("c").unwrap();
        let ok = Formula::pred("lt", vec![Term::var("x"), Term::Const("c".into())]);
        assert!(sig.check(&ok).is_ok());
        let bad = Formula::pred("occ", vec![Term::var("x"), Term::var("y")]);
        assert!(matches!(
            sig.check(&bad),
            Err(SignatureError::ArityMismatch {
                expected: 1,
                found: 2,
                ..
            })
        ));
        let undeclared = Formula::pred("occ", vec![Term::Const("d".into())]);
        assert_eq!(
            sig.check(&undeclared),
            Err(SignatureError::UndeclaredConstant("d".into()))
        );
        assert_eq!(
            sig.check(&Formula::pred("p", vec![])),
            Err(SignatureError::UnknownPredicate("p".into()))
        );
    }

    #[test]
    fn names_must_be_disjoint_lowercase() {
        assert_eq!(
            Signature::black_swan().with_constant("occ"),
            Err(SignatureError::NameClash("occ".into()))
        );
        assert!(Signature::empty().with_predicate("Big", 1).is_err());
        assert!(Signature::empty().with_constant("").is_err());
    }
}
