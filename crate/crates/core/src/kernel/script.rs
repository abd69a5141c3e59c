//! Proof scripts and their text format.
//!
//! ```text
//! theory blackswan
//! goal Thm
//! 1. <formula> ; FO12
//! 2. <formula> ; AX Ax2
//! 3. <formula> ; MP 2 1
//! ```
//!
//! `#` starts a comment. A comment trailing a proof line is kept as that
//! line's note and printed back in canonical form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rules::Rule;
use super::schema::SchemaId;
use crate::logic::{parse_formula, print_formula, Formula, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Justification {
    Schema(SchemaId),
    Axiom(String),
    MP(usize, usize),
    R1(usize),
    R2(usize),
    R3(usize),
}

impl Justification {
    /// Cited earlier lines, in citation order.
    pub fn premises(&self) -> Vec<usize> {
        match self {
            Justification::Schema(_) | Justification::Axiom(_) => vec![],
            Justification::MP(i, j) => vec![*i, *j],
            Justification::R1(i) | Justification::R2(i) | Justification::R3(i) => vec![*i],
        }
    }

    pub fn rule(&self) -> Option<Rule> {
        match self {
            Justification::MP(..) => Some(Rule::MP),
            Justification::R1(_) => Some(Rule::R1),
            Justification::R2(_) => Some(Rule::R2),
            Justification::R3(_) => Some(Rule::R3),
            _ => None,
        }
    }

    /// Same rule, different premise references.
    pub fn with_premises(&self, refs: &[usize]) -> Justification {
        match (self, refs) {
            (Justification::MP(..), [i, j]) => Justification::MP(*i, *j),
            (Justification::R1(_), [i]) => Justification::R1(*i),
            (Justification::R2(_), [i]) => Justification::R2(*i),
            (Justification::R3(_), [i]) => Justification::R3(*i),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Schema(id) => write!(f, "{id}"),
            Justification::Axiom(name) => write!(f, "AX {name}"),
            Justification::MP(i, j) => write!(f, "MP {i} {j}"),
            Justification::R1(i) => write!(f, "R1 {i}"),
            Justification::R2(i) => write!(f, "R2 {i}"),
            Justification::R3(i) => write!(f, "R3 {i}"),
        }
    }
}

impl FromStr for Justification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |w: &str| {
            w.parse::<usize>()
                .map_err(|_| format!("`{w}` is not a line number"))
        };
        match words.as_slice() {
            [id] if id.starts_with("FO") => id.parse().map(Justification::Schema),
            ["AX", name] => Ok(Justification::Axiom(name.to_string())),
            ["MP", i, j] => Ok(Justification::MP(num(i)?, num(j)?)),
            [r, i] => match r.parse::<Rule>()? {
                Rule::R1 => Ok(Justification::R1(num(i)?)),
                Rule::R2 => Ok(Justification::R2(num(i)?)),
                Rule::R3 => Ok(Justification::R3(num(i)?)),
                Rule::MP => Err("MP cites two lines".into()),
            },
            [] => Err("missing justification".into()),
            _ => Err(format!("malformed justification `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub index: usize,
    pub formula: Formula,
    pub justification: Justification,
    /// Trailing comment, used to annotate transcription fixes.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    /// Whole-line comments that open the file, without the `#`.
    pub header: Vec<String>,
    pub theory: String,
    pub goal: String,
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Formula(ParseError),
    #[error("missing `theory` declaration")]
    MissingTheory,
    #[error("missing `goal` declaration")]
    MissingGoal,
    #[error("proof has no lines")]
    Empty,
}

impl ScriptError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ScriptError::Syntax { line, .. } => Some(*line),
            ScriptError::Formula(e) => Some(e.position().0),
            _ => None,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_script(text: &str) -> Result<ProofScript, ScriptError> {
    let mut theory = None;
    let mut goal = None;
    let mut lines: Vec<ProofLine> = Vec::new();
    let mut header = Vec::new();
    let mut in_header = true;
    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let (body, note) = match raw.find('#') {
            Some(k) => (&raw[..k], Some(raw[k + 1..].trim().to_string())),
            None => (raw, None),
        };
        let body = body.trim();
        if body.is_empty() {
            if in_header {
                header.extend(note);
            }
            continue;
        }
        in_header = false;
        if let Some(rest) = body.strip_prefix("theory ") {
            if theory.replace(rest.trim().to_string()).is_some() {
                return Err(syntax(no, "duplicate `theory` declaration"));
            }
            continue;
        }
        if let Some(rest) = body.strip_prefix("goal ") {
            if goal.replace(rest.trim().to_string()).is_some() {
                return Err(syntax(no, "duplicate `goal` declaration"));
            }
            continue;
        }
        let (num, rest) = body
            .split_once('.')
            .ok_or_else(|| syntax(no, "expected `<n>. <formula> ; <justification>`"))?;
        let index: usize = num
            .trim()
            .parse()
            .map_err(|_| syntax(no, format!("`{}` is not a line number", num.trim())))?;
        if index != lines.len() + 1 {
            return Err(syntax(
                no,
                format!(
                    "proof line {index} out of sequence, expected {}",
                    lines.len() + 1
                ),
            ));
        }
        let (formula_text, just_text) = rest
            .rsplit_once(';')
            .ok_or_else(|| syntax(no, "missing `; <justification>`"))?;
        let formula =
            parse_formula(formula_text).map_err(|e| ScriptError::Formula(e.at_line(no)))?;
        let justification: Justification = just_text
            .trim()
            .parse()
            .map_err(|m: String| syntax(no, m))?;
        lines.push(ProofLine {
            index,
            formula,
            justification,
            note: note.filter(|n| !n.is_empty()),
        });
    }
    let theory = theory.ok_or(ScriptError::MissingTheory)?;
    let goal = goal.ok_or(ScriptError::MissingGoal)?;
    if lines.is_empty() {
        return Err(ScriptError::Empty);
    }
    Ok(ProofScript {
        header,
        theory,
        goal,
        lines,
    })
}

/// Canonical text: header comments, declarations, then one line per step
/// with the minimal parenthesization of [`print_formula`]. Comments between
/// proof lines are not kept.
pub fn print_script(script: &ProofScript) -> String {
    let mut out: String = script
        .header
        .iter()
        .map(|c| {
            if c.is_empty() {
                "#\n".to_string()
            } else {
                format!("# {c}\n")
            }
        })
        .collect();
    out.push_str(&format!("theory {}\ngoal {}\n", script.theory, script.goal));
    for line in &script.lines {
        out.push_str(&format!(
            "{}. {} ; {}",
            line.index,
            print_formula(&line.formula),
            line.justification
        ));
        if let Some(note) = &line.note {
            out.push_str("  # ");
            out.push_str(note);
        }
        out.push('\n');
    }
    out
}
