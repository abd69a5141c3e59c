//! Axiom schemas FO1..FO12 and instance recognition.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::logic::{substitute, Formula, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SchemaId {
    FO1,
    FO2,
    FO3,
    FO4,
    FO5,
    FO6,
    FO7,
    FO8,
    FO9,
    FO10,
    FO11,
    FO12,
}

impl SchemaId {
    pub const ALL: [SchemaId; 12] = [
        SchemaId::FO1,
        SchemaId::FO2,
        SchemaId::FO3,
        SchemaId::FO4,
        SchemaId::FO5,
        SchemaId::FO6,
        SchemaId::FO7,
        SchemaId::FO8,
        SchemaId::FO9,
        SchemaId::FO10,
        SchemaId::FO11,
        SchemaId::FO12,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    /// The schema as printed, with metavariables `A`, `B`, `C`, `x`, `t`.
    pub fn display_pattern(self) -> &'static str {
        match self {
            SchemaId::FO1 => "A -> (B -> A)",
            SchemaId::FO2 => "(A -> B) -> (A -> (B -> C)) -> (A -> C)",
            SchemaId::FO3 => "A -> A \\/ B",
            SchemaId::FO4 => "B -> A \\/ B",
            SchemaId::FO5 => "(A -> C) -> (B -> C) -> (A \\/ B -> C)",
            SchemaId::FO6 => "(A -> B) -> (A -> ~B) -> ~A",
            SchemaId::FO7 => "~~A -> A",
            SchemaId::FO8 => "A /\\ B -> A",
            SchemaId::FO9 => "A /\\ B -> B",
            SchemaId::FO10 => "A -> B -> A /\\ B",
            SchemaId::FO11 => "A[x:=t] -> exists x (A)",
            SchemaId::FO12 => "forall x (A) -> A[x:=t]",
        }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FO{}", self.number())
    }
}

impl FromStr for SchemaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.strip_prefix("FO")
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|n| (1..=12).contains(n))
            .map(|n| SchemaId::ALL[n - 1])
            .ok_or_else(|| format!("unknown axiom schema `{s}`"))
    }
}

/// A witness that a formula is an instance of a schema.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Instantiation {
    /// Propositional metavariables `A`, `B`, `C`.
    pub metas: BTreeMap<String, Formula>,
    /// The quantified variable of FO11/FO12.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
    /// The instantiating term of FO11/FO12.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term: Option<Term>,
}

impl fmt::Display for Instantiation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .metas
            .iter()
            .map(|(k, v)| format!("{k} := {v}"))
            .collect();
        if let Some(x) = &self.var {
            parts.push(format!("x := {x}"));
        }
        if let Some(t) = &self.term {
            parts.push(format!("t := {t}"));
        }
        f.write_str(&parts.join("; "))
    }
}

enum Pat {
    Meta(&'static str),
    Not(Box<Pat>),
    And(Box<Pat>, Box<Pat>),
    Or(Box<Pat>, Box<Pat>),
    Imp(Box<Pat>, Box<Pat>),
}

fn m(name: &'static str) -> Pat {
    Pat::Meta(name)
}

fn not(p: Pat) -> Pat {
    Pat::Not(Box::new(p))
}

fn and(a: Pat, b: Pat) -> Pat {
    Pat::And(Box::new(a), Box::new(b))
}

fn or(a: Pat, b: Pat) -> Pat {
    Pat::Or(Box::new(a), Box::new(b))
}

fn imp(a: Pat, b: Pat) -> Pat {
    Pat::Imp(Box::new(a), Box::new(b))
}

fn propositional(id: SchemaId) -> Option<Pat> {
    let (a, b, c) = (|| m("A"), || m("B"), || m("C"));
    Some(match id {
        SchemaId::FO1 => imp(a(), imp(b(), a())),
        SchemaId::FO2 => imp(imp(a(), b()), imp(imp(a(), imp(b(), c())), imp(a(), c()))),
        SchemaId::FO3 => imp(a(), or(a(), b())),
        SchemaId::FO4 => imp(b(), or(a(), b())),
        SchemaId::FO5 => imp(imp(a(), c()), imp(imp(b(), c()), imp(or(a(), b()), c()))),
        SchemaId::FO6 => imp(imp(a(), b()), imp(imp(a(), not(b())), not(a()))),
        SchemaId::FO7 => imp(not(not(a())), a()),
        SchemaId::FO8 => imp(and(a(), b()), a()),
        SchemaId::FO9 => imp(and(a(), b()), b()),
        SchemaId::FO10 => imp(a(), imp(b(), and(a(), b()))),
        SchemaId::FO11 | SchemaId::FO12 => return None,
    })
}

fn bind(pat: &Pat, f: &Formula, env: &mut BTreeMap<String, Formula>) -> bool {
    match (pat, f) {
        (Pat::Meta(name), _) => match env.get(*name) {
            Some(bound) => bound == f,
            None => {
                env.insert(name.to_string(), f.clone());
                true
            }
        },
        (Pat::Not(p), Formula::Not(a)) => bind(p, a, env),
        (Pat::And(p, q), Formula::And(a, b))
        | (Pat::Or(p, q), Formula::Or(a, b))
        | (Pat::Imp(p, q), Formula::Implies(a, b)) => bind(p, a, env) && bind(q, b, env),
        _ => false,
    }
}

/// Recovers the term `t` such that `instance` is `template[x:=t]`.
///
/// Walks both trees in lockstep. Every free occurrence of `x` in the template
/// must face the same term in the instance, and that term must not be bound
/// at the position (capture). All other positions must agree exactly.
/// `Ok(None)` means `x` has no free occurrence, so any term will do.
fn anti_substitute(template: &Formula, instance: &Formula, x: &str) -> Result<Option<Term>, ()> {
    fn walk<'a>(
        tpl: &'a Formula,
        inst: &'a Formula,
        x: &str,
        bound: &mut Vec<&'a str>,
        found: &mut Option<Term>,
    ) -> Result<(), ()> {
        match (tpl, inst) {
            (Formula::Pred(p, ts), Formula::Pred(q, us)) if p == q && ts.len() == us.len() => {
                for (t, u) in ts.iter().zip(us) {
                    let free_x = t.as_var() == Some(x) && !bound.contains(&x);
                    if free_x {
                        if let Some(v) = u.as_var() {
                            if bound.contains(&v) {
                                return Err(());
                            }
                        }
                        match found {
                            Some(prev) if prev != u => return Err(()),
                            Some(_) => {}
                            None => *found = Some(u.clone()),
                        }
                    } else if t != u {
                        return Err(());
                    }
                }
                Ok(())
            }
            (Formula::Not(a), Formula::Not(b)) => walk(a, b, x, bound, found),
            (Formula::And(a1, b1), Formula::And(a2, b2))
            | (Formula::Or(a1, b1), Formula::Or(a2, b2))
            | (Formula::Implies(a1, b1), Formula::Implies(a2, b2)) => {
                walk(a1, a2, x, bound, found)?;
                walk(b1, b2, x, bound, found)
            }
            (Formula::Forall(v, a), Formula::Forall(w, b))
            | (Formula::Exists(v, a), Formula::Exists(w, b))
                if v == w =>
            {
                bound.push(v);
                let r = walk(a, b, x, bound, found);
                bound.pop();
                r
            }
            _ => Err(()),
        }
    }
    let mut found = None;
    walk(template, instance, x, &mut Vec::new(), &mut found)?;
    Ok(found)
}

fn quantifier_instance(body: &Formula, x: &str, instance: &Formula) -> Option<Instantiation> {
    let t = anti_substitute(body, instance, x)
        .ok()?
        .unwrap_or_else(|| Term::var(x));
    // Independent confirmation through the substitution routine.
    if substitute(body, x, &t).ok()? != *instance {
        return None;
    }
    let mut metas = BTreeMap::new();
    metas.insert("A".to_string(), body.clone());
    Some(Instantiation {
        metas,
        var: Some(x.to_string()),
        term: Some(t),
    })
}

/// Decides whether `f` is an instance of schema `id`, returning a witness.
pub fn match_schema(f: &Formula, id: SchemaId) -> Option<Instantiation> {
    match id {
        SchemaId::FO11 => {
            // A[x:=t] -> exists x (A): the right side fixes A and x.
            let (lhs, rhs) = f.as_implies()?;
            match rhs {
                Formula::Exists(x, body) => quantifier_instance(body, x, lhs),
                _ => None,
            }
        }
        SchemaId::FO12 => {
            // forall x (A) -> A[x:=t]: the left side fixes A and x.
            let (lhs, rhs) = f.as_implies()?;
            match lhs {
                Formula::Forall(x, body) => quantifier_instance(body, x, rhs),
                _ => None,
            }
        }
        _ => {
            let pat = propositional(id)?;
            let mut metas = BTreeMap::new();
            bind(&pat, f, &mut metas).then(|| Instantiation {
                metas,
                ..Instantiation::default()
            })
        }
    }
}

/// All schemas `f` is an instance of.
pub fn matching_schemas(f: &Formula) -> Vec<SchemaId> {
    SchemaId::ALL
        .into_iter()
        .filter(|id| match_schema(f, *id).is_some())
        .collect()
}
