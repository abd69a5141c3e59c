//! Single-point mutations of proof scripts, for checking that the kernel
//! rejects near-miss proofs.

use std::collections::BTreeSet;
use std::fmt;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::gen::VARIABLES;
use crate::kernel::ProofScript;
use crate::logic::{Formula, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MutationKind {
    /// A cited premise points at a different earlier line.
    PremiseIndex,
    /// A cited premise points at the line itself or a later one.
    ForwardReference,
    /// One binary connective replaced by another.
    SwapConnective,
    /// One variable occurrence in an atom renamed.
    RenameVariable,
}

impl MutationKind {
    pub const ALL: [MutationKind; 4] = [
        MutationKind::PremiseIndex,
        MutationKind::ForwardReference,
        MutationKind::SwapConnective,
        MutationKind::RenameVariable,
    ];
}

impl fmt::Display for MutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MutationKind::PremiseIndex => "premise-index",
            MutationKind::ForwardReference => "forward-reference",
            MutationKind::SwapConnective => "swap-connective",
            MutationKind::RenameVariable => "rename-variable",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Mutant {
    pub kind: MutationKind,
    /// 1-based index of the mutated line.
    pub line: usize,
    pub description: String,
    pub script: ProofScript,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Binary {
    And,
    Or,
    Implies,
}

fn binary_count(f: &Formula) -> usize {
    match f {
        Formula::Pred(..) => 0,
        Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => binary_count(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            1 + binary_count(a) + binary_count(b)
        }
    }
}

/// Rebuilds `f` with its `n`-th binary node (pre-order) replaced by `op`.
fn swap_binary(f: &Formula, n: &mut usize, op: Binary) -> Formula {
    match f {
        Formula::Pred(..) => f.clone(),
        Formula::Not(a) => Formula::not(swap_binary(a, n, op)),
        Formula::Forall(v, a) => Formula::forall(v.clone(), swap_binary(a, n, op)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), swap_binary(a, n, op)),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            let here = *n == 0;
            *n = n.wrapping_sub(1);
            let (a, b) = (swap_binary(a, n, op), swap_binary(b, n, op));
            if !here {
                return match f {
                    Formula::And(..) => Formula::and(a, b),
                    Formula::Or(..) => Formula::or(a, b),
                    _ => Formula::implies(a, b),
                };
            }
            match op {
                Binary::And => Formula::and(a, b),
                Binary::Or => Formula::or(a, b),
                Binary::Implies => Formula::implies(a, b),
            }
        }
    }
}

fn binary_at(f: &Formula, n: &mut usize) -> Option<Binary> {
    match f {
        Formula::Pred(..) => None,
        Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => binary_at(a, n),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            if *n == 0 {
                return Some(match f {
                    Formula::And(..) => Binary::And,
                    Formula::Or(..) => Binary::Or,
                    _ => Binary::Implies,
                });
            }
            *n -= 1;
            binary_at(a, n).or_else(|| binary_at(b, n))
        }
    }
}

fn var_occurrences(f: &Formula) -> usize {
    match f {
        Formula::Pred(_, args) => args.iter().filter(|t| t.as_var().is_some()).count(),
        Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => var_occurrences(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            var_occurrences(a) + var_occurrences(b)
        }
    }
}

/// Renames the `n`-th variable occurrence in an atom, recording the old name in `old`.
fn rename_occurrence(f: &Formula, n: &mut usize, to: &str, old: &mut Option<String>) -> Formula {
    match f {
        Formula::Pred(p, args) => Formula::pred(
            p.clone(),
            args.iter()
                .map(|t| match t {
                    Term::Var(v) => {
                        let hit = *n == 0;
                        *n = n.wrapping_sub(1);
                        if hit {
                            *old = Some(v.clone());
                            Term::var(to)
                        } else {
                            t.clone()
                        }
                    }
                    Term::Const(_) => t.clone(),
                })
                .collect(),
        ),
        Formula::Not(a) => Formula::not(rename_occurrence(a, n, to, old)),
        Formula::Forall(v, a) => Formula::forall(v.clone(), rename_occurrence(a, n, to, old)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), rename_occurrence(a, n, to, old)),
        Formula::And(a, b) => {
            let a = rename_occurrence(a, n, to, old);
            Formula::and(a, rename_occurrence(b, n, to, old))
        }
        Formula::Or(a, b) => {
            let a = rename_occurrence(a, n, to, old);
            Formula::or(a, rename_occurrence(b, n, to, old))
        }
        Formula::Implies(a, b) => {
            let a = rename_occurrence(a, n, to, old);
            Formula::implies(a, rename_occurrence(b, n, to, old))
        }
    }
}

fn try_mutant<R: Rng>(script: &ProofScript, kind: MutationKind, rng: &mut R) -> Option<Mutant> {
    let n = script.lines.len();
    let k = rng.gen_range(1..=n);
    let line = &script.lines[k - 1];
    let mut mutated = script.clone();
    let description = match kind {
        MutationKind::PremiseIndex | MutationKind::ForwardReference => {
            let refs = line.justification.premises();
            if refs.is_empty() {
                return None;
            }
            let slot = rng.gen_range(0..refs.len());
            let old = refs[slot];
            let new = if kind == MutationKind::PremiseIndex {
                if k <= 2 {
                    return None;
                }
                rng.gen_range(1..k)
            } else {
                rng.gen_range(k..=n)
            };
            if new == old || script.lines[new - 1].formula == script.lines[old - 1].formula {
                return None;
            }
            let mut refs = refs;
            refs[slot] = new;
            let j = line.justification.with_premises(&refs);
            let d = format!("line {k}: `{}` -> `{j}`", line.justification);
            mutated.lines[k - 1].justification = j;
            d
        }
        MutationKind::SwapConnective => {
            let count = binary_count(&line.formula);
            if count == 0 {
                return None;
            }
            let pos = rng.gen_range(0..count);
            let current = binary_at(&line.formula, &mut pos.clone())?;
            let choices: Vec<Binary> = [Binary::And, Binary::Or, Binary::Implies]
                .into_iter()
                .filter(|&b| b != current)
                .collect();
            let op = *choices.choose(rng)?;
            let name = |b: Binary| match b {
                Binary::And => "/\\",
                Binary::Or => "\\/",
                Binary::Implies => "->",
            };
            mutated.lines[k - 1].formula = swap_binary(&line.formula, &mut pos.clone(), op);
            format!(
                "line {k}: connective #{pos} `{}` -> `{}`",
                name(current),
                name(op)
            )
        }
        MutationKind::RenameVariable => {
            let count = var_occurrences(&line.formula);
            if count == 0 {
                return None;
            }
            let pos = rng.gen_range(0..count);
            let to = *VARIABLES.choose(rng)?;
            let mut old = None;
            let f = rename_occurrence(&line.formula, &mut pos.clone(), to, &mut old);
            let old = old?;
            if old == to {
                return None;
            }
            mutated.lines[k - 1].formula = f;
            format!("line {k}: variable occurrence #{pos} `{old}` -> `{to}`")
        }
    };
    Some(Mutant {
        kind,
        line: k,
        description,
        script: mutated,
    })
}

/// Up to `per_kind` distinct mutants of each kind, drawn deterministically
/// from `seed`. Mutants that are trivially equivalent to the original (a
/// premise redirected to an identical formula) are never produced.
pub fn mutants(script: &ProofScript, seed: u64, per_kind: usize) -> Vec<Mutant> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for kind in MutationKind::ALL {
        let mut seen = BTreeSet::new();
        let mut attempts = 0;
        while seen.len() < per_kind && attempts < per_kind * 50 {
            attempts += 1;
            if let Some(m) = try_mutant(script, kind, &mut rng) {
                if seen.insert(m.description.clone()) {
                    out.push(m);
                }
            }
        }
    }
    out
}
