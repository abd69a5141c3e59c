use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::universe::{members, EventSet, EventUniverse};
use super::DecisionError;

/// `Γ`: the outcome of each action under each event.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeTable {
    pub actions: Vec<String>,
    pub outcomes: Vec<String>,
    /// `table[action][event]` is an outcome index.
    pub table: Vec<Vec<usize>>,
}

impl OutcomeTable {
    pub fn new(
        actions: Vec<String>,
        outcomes: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, DecisionError> {
        if table.len() != actions.len() {
            return Err(DecisionError::GammaShape(format!(
                "{} rows for {} actions",
                table.len(),
                actions.len()
            )));
        }
        let width = table.first().map_or(0, Vec::len);
        if table.iter().any(|row| row.len() != width) {
            return Err(DecisionError::GammaShape("rows differ in length".into()));
        }
        if let Some(&o) = table.iter().flatten().find(|&&o| o >= outcomes.len()) {
            return Err(DecisionError::GammaShape(format!(
                "outcome index {o} out of range"
            )));
        }
        Ok(OutcomeTable {
            actions,
            outcomes,
            table,
        })
    }

    pub fn events(&self) -> usize {
        self.table.first().map_or(0, Vec::len)
    }

    pub fn get(&self, action: usize, event: usize) -> usize {
        self.table[action][event]
    }

    /// `Γⁿ` on `events`: outcomes ordered by action, then event index.
    pub fn vector(&self, events: EventSet) -> Vec<usize> {
        (0..self.actions.len())
            .flat_map(|a| members(events).map(move |e| (a, e)))
            .map(|(a, e)| self.table[a][e])
            .collect()
    }
}

/// Result of a decision map: an action, or no result because the
/// computation does not terminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decision {
    Action(usize),
    Diverge,
}

impl Decision {
    pub fn label(&self, actions: &[String]) -> String {
        match self {
            Decision::Action(a) => actions[*a].clone(),
            Decision::Diverge => "DIVERGE".into(),
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::Action(a) => write!(f, "action #{a}"),
            Decision::Diverge => f.write_str("DIVERGE"),
        }
    }
}

/// The associated information `P`. It is held fixed, so it carries no data.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedInfo;

/// `Φ`: outcome vectors to actions, with an optional fallback action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionMap {
    pub actions: Vec<String>,
    pub outcomes: Vec<String>,
    pub entries: BTreeMap<Vec<usize>, usize>,
    pub default: Option<usize>,
    pub info: AssociatedInfo,
}

impl DecisionMap {
    pub fn new(actions: Vec<String>, outcomes: Vec<String>) -> Self {
        DecisionMap {
            actions,
            outcomes,
            entries: BTreeMap::new(),
            default: None,
            info: AssociatedInfo,
        }
    }

    pub fn with_entry(mut self, vector: Vec<usize>, action: usize) -> Self {
        self.entries.insert(vector, action);
        self
    }

    pub fn with_default(mut self, action: usize) -> Self {
        self.default = Some(action);
        self
    }

    pub fn lookup(&self, vector: &[usize]) -> Result<usize, DecisionError> {
        self.entries
            .get(vector)
            .copied()
            .or(self.default)
            .ok_or_else(|| DecisionError::MissingTableEntry {
                vector: self.vector_names(vector),
            })
    }

    pub fn vector_names(&self, vector: &[usize]) -> Vec<String> {
        vector.iter().map(|&o| self.outcomes[o].clone()).collect()
    }

    /// `phi [..] = a` lines, entries first, then the fallback.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .entries
            .iter()
            .map(|(v, a)| {
                format!(
                    "phi [{}] = {}",
                    self.vector_names(v).join(", "),
                    self.actions[*a]
                )
            })
            .collect();
        if let Some(a) = self.default {
            out.push(format!("phi * = {}", self.actions[a]));
        }
        out
    }
}

/// Applies `Φ` to `Γⁿ` on `events`. Diverges exactly when every event in the
/// set is unimaginable.
pub fn apply_decision(
    phi: &DecisionMap,
    gamma: &OutcomeTable,
    universe: &EventUniverse,
    events: EventSet,
) -> Result<Decision, DecisionError> {
    if events & !universe.all() != 0 || gamma.events() < universe.len() {
        return Err(DecisionError::GammaShape(
            "outcome table does not cover the event set".into(),
        ));
    }
    if universe.all_unimaginable(events) {
        return Ok(Decision::Diverge);
    }
    phi.lookup(&gamma.vector(events)).map(Decision::Action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::universe::Event;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn setup() -> (EventUniverse, OutcomeTable) {
        let u = EventUniverse::new(vec![
            Event::new("calm", true, true),
            Event::new("swan", true, false),
        ])
        .unwrap();
        let gamma = OutcomeTable::new(
            names(&["hedge", "ignore"]),
            names(&["gain", "loss"]),
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        (u, gamma)
    }

    #[test]
    fn vectors_are_ordered_by_action_then_event() {
        let (_, gamma) = setup();
        assert_eq!(gamma.vector(0b11), vec![0, 1, 1, 0]);
        assert_eq!(gamma.vector(0b10), vec![1, 0]);
    }

    #[test]
    fn all_unimaginable_sets_diverge() {
        let (u, gamma) = setup();
        let phi = DecisionMap::new(gamma.actions.clone(), gamma.outcomes.clone()).with_default(0);
        assert_eq!(
            apply_decision(&phi, &gamma, &u, 0b10).unwrap(),
            Decision::Diverge
        );
        assert_eq!(
            apply_decision(&phi, &gamma, &u, 0).unwrap(),
            Decision::Diverge
        );
        assert_eq!(
            apply_decision(&phi, &gamma, &u, 0b11).unwrap(),
            Decision::Action(0)
        );
    }

    #[test]
    fn direct_lookup_and_missing_entries() {
        let (u, gamma) = setup();
        let phi = DecisionMap::new(gamma.actions.clone(), gamma.outcomes.clone())
            .with_entry(vec![0, 1], 1);
        assert_eq!(
            apply_decision(&phi, &gamma, &u, 0b01).unwrap(),
            Decision::Action(1)
        );
        assert_eq!(
            apply_decision(&phi, &gamma, &u, 0b11),
            Err(DecisionError::MissingTableEntry {
                vector: names(&["gain", "loss", "loss", "gain"])
            })
        );
        assert_eq!(phi.lines(), vec!["phi [gain, loss] = ignore".to_string()]);
    }

    #[test]
    fn malformed_tables() {
        assert!(OutcomeTable::new(names(&["a"]), names(&["o"]), vec![vec![1]]).is_err());
        assert!(OutcomeTable::new(names(&["a", "b"]), names(&["o"]), vec![vec![0]]).is_err());
        assert!(
            OutcomeTable::new(names(&["a", "b"]), names(&["o"]), vec![vec![0], vec![0, 0]])
                .is_err()
        );
    }
}
