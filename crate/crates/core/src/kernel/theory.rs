use std::collections::BTreeMap;

use thiserror::Error;

use crate::logic::{expand_defs, free_vars, parse_formula, Formula, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("formula `{name}` is not closed: free variable(s) {vars:?}")]
    OpenFormula { name: String, vars: Vec<String> },
    #[error("formula `{name}`: {source}")]
    Parse { name: String, source: ParseError },
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
}

/// Named closed formulas: axioms usable in proofs and goals proofs may claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    axioms: BTreeMap<String, Formula>,
    goals: BTreeMap<String, Formula>,
}

pub const AX1: &str = "exists x (occ(x) /\\ forall y (lt(x,y) -> ~img(y)))";
pub const AX2: &str = "forall x (occ(x) -> exists y (occ(y) /\\ lt(x,y)))";
pub const MURPHY: &str = "forall x (forall y ((occ(x) /\\ lt(x,y)) -> occ(y)))";
pub const OPEN_UNIVERSE: &str = "forall x (exists y (lt(x,y)))";
pub const THM: &str = "exists z (occ(z) /\\ ~img(z))";
pub const IRREFLEXIVITY: &str = "forall a (~lt(a,a))";
pub const TRANSITIVITY: &str = "forall a (forall b (forall c ((lt(a,b) /\\ lt(b,c)) -> lt(a,c))))";

impl Theory {
    pub fn new(name: impl Into<String>) -> Self {
        Theory {
            name: name.into(),
            axioms: BTreeMap::new(),
            goals: BTreeMap::new(),
        }
    }

    fn closed(name: &str, f: Formula) -> Result<Formula, TheoryError> {
        let f = expand_defs(&f);
        let fv = free_vars(&f);
        if fv.is_empty() {
            Ok(f)
        } else {
            Err(TheoryError::OpenFormula {
                name: name.into(),
                vars: fv.into_iter().collect(),
            })
        }
    }

    fn parsed(name: &str, text: &str) -> Result<Formula, TheoryError> {
        parse_formula(text).map_err(|source| TheoryError::Parse {
            name: name.into(),
            source,
        })
    }

    /// Adds an axiom. Stored formulas are closed and already expanded.
    pub fn with_axiom(mut self, name: &str, f: Formula) -> Result<Self, TheoryError> {
        let f = Self::closed(name, f)?;
        self.axioms.insert(name.into(), f);
        Ok(self)
    }

    pub fn with_goal(mut self, name: &str, f: Formula) -> Result<Self, TheoryError> {
        let f = Self::closed(name, f)?;
        self.goals.insert(name.into(), f);
        Ok(self)
    }

    fn with_axiom_text(self, name: &str, text: &str) -> Result<Self, TheoryError> {
        let f = Self::parsed(name, text)?;
        self.with_axiom(name, f)
    }

    fn with_goal_text(self, name: &str, text: &str) -> Result<Self, TheoryError> {
        let f = Self::parsed(name, text)?;
        self.with_goal(name, f)
    }

    pub fn axiom(&self, name: &str) -> Option<&Formula> {
        self.axioms.get(name)
    }

    pub fn goal(&self, name: &str) -> Option<&Formula> {
        self.goals.get(name)
    }

    pub fn axioms(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.axioms.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn goals(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.goals.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Looks a name up among axioms, then goals.
    pub fn formula(&self, name: &str) -> Option<&Formula> {
        self.axioms.get(name).or_else(|| self.goals.get(name))
    }

    /// Ax1, Ax2, Murphy, OpenUniverse; goal Thm.
    pub fn black_swan() -> Self {
        Theory::new("blackswan")
            .with_axiom_text("Ax1", AX1)
            .and_then(|t| t.with_axiom_text("Ax2", AX2))
            .and_then(|t| t.with_axiom_text("Murphy", MURPHY))
            .and_then(|t| t.with_axiom_text("OpenUniverse", OPEN_UNIVERSE))
            .and_then(|t| t.with_goal_text("Thm", THM))
            .expect("built-in theory is well formed")
    }

    /// Murphy's law and the open universe, with Ax2 as the goal.
    pub fn murphy() -> Self {
        Theory::new("murphy")
            .with_axiom_text("Murphy", MURPHY)
            .and_then(|t| t.with_axiom_text("OpenUniverse", OPEN_UNIVERSE))
            .and_then(|t| t.with_goal_text("Ax2", AX2))
            .expect("built-in theory is well formed")
    }

    /// Strict partial order axioms on `lt`.
    pub fn order() -> Self {
        Theory::new("order")
            .with_axiom_text("Irreflexivity", IRREFLEXIVITY)
            .and_then(|t| t.with_axiom_text("Transitivity", TRANSITIVITY))
            .expect("built-in theory is well formed")
    }

    pub fn builtin(name: &str) -> Result<Self, TheoryError> {
        match name {
            "blackswan" => Ok(Theory::black_swan()),
            "murphy" => Ok(Theory::murphy()),
            "order" => Ok(Theory::order()),
            _ => Err(TheoryError::UnknownTheory(name.into())),
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["blackswan", "murphy", "order"]
    }
}
