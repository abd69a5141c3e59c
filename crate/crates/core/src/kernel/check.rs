use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rules::check_rule;
use super::schema::{match_schema, Instantiation};
use super::script::{Justification, ProofScript};
use super::theory::Theory;
use crate::logic::{expand_defs, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("script is written against theory `{script}`, but theory `{theory}` was supplied")]
    TheoryMismatch { script: String, theory: String },
    #[error("theory `{theory}` has no goal named `{goal}`")]
    UnknownGoal { theory: String, goal: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineReport {
    pub index: usize,
    pub formula: Formula,
    pub justification: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instantiation: Option<Instantiation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theory: String,
    pub goal: String,
    pub verdict: Verdict,
    pub lines_total: usize,
    pub lines_ok: usize,
    pub goal_reached: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal_diagnostic: Option<String>,
    pub lines: Vec<LineReport>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    pub fn first_failure(&self) -> Option<&LineReport> {
        self.lines.iter().find(|l| !l.ok)
    }
}

/// Checks line `index` (1-based) of `formulas` against its justification.
/// Only lines before `index` are consulted.
fn check_line(
    formulas: &[Formula],
    index: usize,
    justification: &Justification,
    theory: &Theory,
) -> Result<Option<Instantiation>, String> {
    let f = &formulas[index - 1];
    match justification {
        Justification::Schema(id) => match_schema(f, *id)
            .map(Some)
            .ok_or_else(|| format!("not an instance of {id}")),
        Justification::Axiom(name) => match theory.axiom(name) {
            None => Err(format!("theory `{}` has no axiom `{name}`", theory.name)),
            Some(ax) if ax == f => Ok(None),
            Some(ax) => Err(format!("formula differs from axiom {name}: `{ax}`")),
        },
        j => {
            let refs = j.premises();
            if let Some(bad) = refs.iter().find(|&&r| r == 0 || r >= index) {
                return Err(format!(
                    "cites line {bad}, but only lines 1..{} precede line {index}",
                    index - 1
                ));
            }
            let premises: Vec<&Formula> = refs.iter().map(|&r| &formulas[r - 1]).collect();
            let rule = j.rule().expect("rule justification");
            check_rule(&premises, f, rule)
                .map(|_| None)
                .map_err(|e| format!("{rule}: {e}"))
        }
    }
}

/// Verifies a proof script line by line.
///
/// Each line's verdict depends only on the lines before it: a line citing a
/// broken earlier line is still judged on its own step. The script is
/// accepted when every line checks and the last formula is the claimed goal.
/// Formulas are compared after expanding defined symbols.
pub fn check_proof(script: &ProofScript, theory: &Theory) -> Result<CheckReport, KernelError> {
    if script.theory != theory.name {
        return Err(KernelError::TheoryMismatch {
            script: script.theory.clone(),
            theory: theory.name.clone(),
        });
    }
    let goal = theory
        .goal(&script.goal)
        .ok_or_else(|| KernelError::UnknownGoal {
            theory: theory.name.clone(),
            goal: script.goal.clone(),
        })?;
    let formulas: Vec<Formula> = script
        .lines
        .iter()
        .map(|l| expand_defs(&l.formula))
        .collect();

    let lines: Vec<LineReport> = script
        .lines
        .iter()
        .enumerate()
        .map(|(k, line)| {
            let result = check_line(&formulas, k + 1, &line.justification, theory);
            let (ok, reason, instantiation) = match result {
                Ok(inst) => (true, None, inst),
                Err(reason) => (false, Some(reason), None),
            };
            LineReport {
                index: line.index,
                formula: line.formula.clone(),
                justification: line.justification.to_string(),
                ok,
                reason,
                instantiation,
            }
        })
        .collect();

    let goal_diagnostic = match formulas.last() {
        None => Some("proof has no lines".to_string()),
        Some(last) if last == goal => None,
        Some(last) => Some(format!(
            "last line `{last}` is not goal {} `{goal}`",
            script.goal
        )),
    };
    let lines_ok = lines.iter().filter(|l| l.ok).count();
    let goal_reached = goal_diagnostic.is_none();
    let verdict = if goal_reached && lines_ok == lines.len() {
        Verdict::Accepted
    } else {
        Verdict::Rejected
    };
    Ok(CheckReport {
        theory: theory.name.clone(),
        goal: script.goal.clone(),
        verdict,
        lines_total: lines.len(),
        lines_ok,
        goal_reached,
        goal_diagnostic,
        lines,
    })
}
