//! Inference rules MP, R1, R2, R3.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{occurs_free, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// From `A` and `A -> B` infer `B`.
    MP,
    /// From `C -> A` infer `C -> forall x (A)`, `x` not free in `C`.
    R1,
    /// From `A -> C` infer `exists x (A) -> C`, `x` not free in `C`.
    R2,
    /// From `A /\ B -> C` infer `B -> A -> C`.
    R3,
}

impl Rule {
    pub fn arity(self) -> usize {
        match self {
            Rule::MP => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::MP => "MP",
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
        })
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "MP" => Ok(Rule::MP),
            "R1" => Ok(Rule::R1),
            "R2" => Ok(Rule::R2),
            "R3" => Ok(Rule::R3),
            _ => Err(format!("unknown rule `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("{rule} takes {expected} premise(s), got {found}")]
    Arity {
        rule: Rule,
        expected: usize,
        found: usize,
    },
    #[error("premise `{0}` is not an implication")]
    PremiseNotImplication(String),
    #[error("major premise `{major}` is not `{minor} -> {conclusion}`")]
    MpMismatch {
        minor: String,
        major: String,
        conclusion: String,
    },
    #[error("conclusion does not have the form `{expected}`")]
    Shape { expected: &'static str },
    #[error("conclusion `{found}` differs from the expected `{expected}`")]
    ConclusionMismatch { expected: String, found: String },
    #[error("variable `{var}` occurs free in `{side}`")]
    FreeInSide { var: String, side: String },
}

fn mismatch(expected: &Formula, found: &Formula) -> RuleError {
    RuleError::ConclusionMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

fn implication(f: &Formula) -> Result<(&Formula, &Formula), RuleError> {
    f.as_implies()
        .ok_or_else(|| RuleError::PremiseNotImplication(f.to_string()))
}

/// Checks one rule application. Premises are given in the order they are
/// cited; for MP that is the minor premise `A` then the major `A -> B`.
pub fn check_rule(
    premises: &[&Formula],
    conclusion: &Formula,
    rule: Rule,
) -> Result<(), RuleError> {
    if premises.len() != rule.arity() {
        return Err(RuleError::Arity {
            rule,
            expected: rule.arity(),
            found: premises.len(),
        });
    }
    match rule {
        Rule::MP => {
            let (minor, major) = (premises[0], premises[1]);
            match major.as_implies() {
                Some((a, b)) if a == minor && b == conclusion => Ok(()),
                _ => Err(RuleError::MpMismatch {
                    minor: minor.to_string(),
                    major: major.to_string(),
                    conclusion: conclusion.to_string(),
                }),
            }
        }
        Rule::R1 => {
            let (c, a) = implication(premises[0])?;
            let (x, expected) = match conclusion {
                Formula::Implies(_, rhs) => match &**rhs {
                    Formula::Forall(x, _) => (
                        x,
                        Formula::implies(c.clone(), Formula::forall(x.clone(), a.clone())),
                    ),
                    _ => {
                        return Err(RuleError::Shape {
                            expected: "C -> forall x (A)",
                        })
                    }
                },
                _ => {
                    return Err(RuleError::Shape {
                        expected: "C -> forall x (A)",
                    })
                }
            };
            if *conclusion != expected {
                return Err(mismatch(&expected, conclusion));
            }
            if occurs_free(c, x) {
                return Err(RuleError::FreeInSide {
                    var: x.clone(),
                    side: c.to_string(),
                });
            }
            Ok(())
        }
        Rule::R2 => {
            let (a, c) = implication(premises[0])?;
            let (x, expected) = match conclusion {
                Formula::Implies(lhs, _) => match &**lhs {
                    Formula::Exists(x, _) => (
                        x,
                        Formula::implies(Formula::exists(x.clone(), a.clone()), c.clone()),
                    ),
                    _ => {
                        return Err(RuleError::Shape {
                            expected: "exists x (A) -> C",
                        })
                    }
                },
                _ => {
                    return Err(RuleError::Shape {
                        expected: "exists x (A) -> C",
                    })
                }
            };
            if *conclusion != expected {
                return Err(mismatch(&expected, conclusion));
            }
            if occurs_free(c, x) {
                return Err(RuleError::FreeInSide {
                    var: x.clone(),
                    side: c.to_string(),
                });
            }
            Ok(())
        }
        Rule::R3 => {
            let (ab, c) = implication(premises[0])?;
            let (a, b) = ab.as_and().ok_or(RuleError::Shape {
                expected: "premise of the form A /\\ B -> C",
            })?;
            // operands swap: B comes first in the conclusion
            let expected = Formula::implies(b.clone(), Formula::implies(a.clone(), c.clone()));
            if *conclusion != expected {
                return Err(mismatch(&expected, conclusion));
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn modus_ponens() {
        let a = p("occ(x)");
        let ab = p("occ(x) -> img(x)");
        assert!(check_rule(&[&a, &ab], &p("img(x)"), Rule::MP).is_ok());
        // cited in the wrong order
        assert!(check_rule(&[&ab, &a], &p("img(x)"), Rule::MP).is_err());
        assert!(matches!(
            check_rule(&[&a], &p("img(x)"), Rule::MP),
            Err(RuleError::Arity {
                expected: 2,
                found: 1,
                ..
            })
        ));
    }

    #[test]
    fn r1_side_condition() {
        let prem = p("occ(x) -> occ(x)");
        let err = check_rule(&[&prem], &p("occ(x) -> forall x (occ(x))"), Rule::R1).unwrap_err();
        assert!(matches!(err, RuleError::FreeInSide { ref var, .. } if var == "x"));
        let prem = p("occ(y) -> occ(x)");
        assert!(check_rule(&[&prem], &p("occ(y) -> forall x (occ(x))"), Rule::R1).is_ok());
    }

    #[test]
    fn r2_side_condition() {
        let prem = p("occ(y) /\\ lt(x,y) -> (occ(x) -> img(x))");
        assert!(check_rule(
            &[&prem],
            &p("exists y (occ(y) /\\ lt(x,y)) -> (occ(x) -> img(x))"),
            Rule::R2
        )
        .is_ok());
        let prem = p("occ(y) -> img(y)");
        assert!(matches!(
            check_rule(&[&prem], &p("exists y (occ(y)) -> img(y)"), Rule::R2),
            Err(RuleError::FreeInSide { .. })
        ));
    }

    #[test]
    fn r3_keeps_operand_swap() {
        let prem = p("occ(x) /\\ img(x) -> lt(x,x)");
        assert!(check_rule(&[&prem], &p("img(x) -> occ(x) -> lt(x,x)"), Rule::R3).is_ok());
        assert!(check_rule(&[&prem], &p("occ(x) -> img(x) -> lt(x,x)"), Rule::R3).is_err());
    }
}
