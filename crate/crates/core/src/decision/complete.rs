use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::map::{apply_decision, Decision, DecisionMap, OutcomeTable};
use super::universe::{EventSet, EventUniverse};
use super::DecisionError;

/// Most outcome tables a single completeness check will enumerate.
pub const MAX_GAMMAS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    /// Every two distinct nonempty event sets can be told apart.
    Complete,
    /// Only sets of occurring events need to be told apart.
    Occurring,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Complete => "complete",
            Property::Occurring => "occurring",
        })
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complete" => Ok(Property::Complete),
            "occurring" | "complete-wrt-occurring" => Ok(Property::Occurring),
            _ => Err(format!(
                "unknown property `{s}` (expected complete or occurring)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_actions: usize,
    pub max_outcomes: usize,
    pub max_events: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_actions: 2,
            max_outcomes: 2,
            max_events: 3,
        }
    }
}

impl Bounds {
    pub(crate) fn check(
        &self,
        actions: usize,
        outcomes: usize,
        events: usize,
    ) -> Result<(), DecisionError> {
        for (what, value, cap) in [
            ("actions", actions, self.max_actions),
            ("outcomes", outcomes, self.max_outcomes),
            ("events", events, self.max_events),
        ] {
            if value > cap {
                return Err(DecisionError::BoundsTooLarge { what, value, cap });
            }
        }
        Ok(())
    }
}

/// Nonempty event sets the property quantifies over, ascending by mask.
pub fn qualifying_sets(universe: &EventUniverse, property: Property) -> Vec<EventSet> {
    let pool = match property {
        Property::Complete => universe.all(),
        Property::Occurring => universe.occurring(),
    };
    (1..=universe.all()).filter(|s| s & !pool == 0).collect()
}

/// Pairs `(Y, Z)` with `Y < Z` as masks.
pub fn qualifying_pairs(sets: &[EventSet]) -> impl Iterator<Item = (EventSet, EventSet)> + '_ {
    sets.iter()
        .enumerate()
        .flat_map(move |(i, &y)| sets[i + 1..].iter().map(move |&z| (y, z)))
}

/// Number of outcome tables over `actions × events` into `outcomes`, if it
/// fits in a `u64`.
pub fn gamma_count(actions: usize, outcomes: usize, events: usize) -> Option<u64> {
    (outcomes as u64).checked_pow(u32::try_from(actions * events).ok()?)
}

/// The `g`-th outcome table in lexicographic order; cell `(action, event)`
/// in row-major order, first cell most significant.
pub fn nth_gamma(g: u64, actions: usize, outcomes: usize, events: usize) -> Vec<Vec<usize>> {
    let cells = actions * events;
    let mut digits = vec![0usize; cells];
    let mut rest = g;
    for d in digits.iter_mut().rev() {
        *d = (rest % outcomes as u64) as usize;
        rest /= outcomes as u64;
    }
    (0..actions)
        .map(|a| digits[a * events..(a + 1) * events].to_vec())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub y: Vec<String>,
    pub z: Vec<String>,
    /// `gamma[action][event]` as outcome names.
    pub gamma: Vec<Vec<String>>,
    pub result_y: String,
    pub result_z: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub y: Vec<String>,
    pub z: Vec<String>,
    /// Results under the first outcome table searched.
    pub result_y: String,
    pub result_z: String,
    /// Both sets consist of unimaginable events, so both results diverge
    /// under every outcome table.
    pub diverge_collision: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompletenessVerdict {
    Complete,
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub property: Property,
    pub verdict: CompletenessVerdict,
    pub bounds: Bounds,
    pub qualifying_sets: usize,
    pub pairs_checked: usize,
    pub gammas_per_pair: u64,
    /// Present iff the verdict is incomplete.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// A separating outcome table for each pair checked before the verdict.
    pub separations: Vec<Separation>,
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        self.verdict == CompletenessVerdict::Complete
    }
}

/// Decides, pair by pair, whether some outcome table over `Φ`'s actions and
/// outcomes makes `Φ` tell the two event sets apart. Stops at the first
/// pair that no table separates.
pub fn check_completeness(
    phi: &DecisionMap,
    universe: &EventUniverse,
    bounds: &Bounds,
    property: Property,
) -> Result<CompletenessReport, DecisionError> {
    let (k, m, n) = (phi.actions.len(), phi.outcomes.len(), universe.len());
    bounds.check(k, m, n)?;
    if k == 0 || m == 0 {
        return Err(DecisionError::Empty(if k == 0 {
            "actions"
        } else {
            "outcomes"
        }));
    }
    let gammas =
        gamma_count(k, m, n)
            .filter(|&c| c <= MAX_GAMMAS)
            .ok_or(DecisionError::BoundsTooLarge {
                what: "outcome tables",
                value: gamma_count(k, m, n).map_or(usize::MAX, |c| c as usize),
                cap: MAX_GAMMAS as usize,
            })?;
    let table = |g: u64| {
        OutcomeTable::new(
            phi.actions.clone(),
            phi.outcomes.clone(),
            nth_gamma(g, k, m, n),
        )
        .expect("generated table is well formed")
    };
    let tables: Vec<OutcomeTable> = (0..gammas).map(table).collect();

    let sets = qualifying_sets(universe, property);
    let mut separations = Vec::new();
    let mut pairs_checked = 0;
    for (y, z) in qualifying_pairs(&sets) {
        pairs_checked += 1;
        let mut found = None;
        for gamma in &tables {
            let ry = apply_decision(phi, gamma, universe, y)?;
            let rz = apply_decision(phi, gamma, universe, z)?;
            if ry != rz {
                found = Some((gamma, ry, rz));
                break;
            }
        }
        match found {
            Some((gamma, ry, rz)) => separations.push(Separation {
                y: universe.names(y),
                z: universe.names(z),
                gamma: gamma
                    .table
                    .iter()
                    .map(|row| row.iter().map(|&o| phi.outcomes[o].clone()).collect())
                    .collect(),
                result_y: ry.label(&phi.actions),
                result_z: rz.label(&phi.actions),
            }),
            None => {
                let ry = apply_decision(phi, &tables[0], universe, y)?;
                let rz = apply_decision(phi, &tables[0], universe, z)?;
                return Ok(CompletenessReport {
                    property,
                    verdict: CompletenessVerdict::Incomplete,
                    bounds: *bounds,
                    qualifying_sets: sets.len(),
                    pairs_checked,
                    gammas_per_pair: gammas,
                    witness: Some(Witness {
                        y: universe.names(y),
                        z: universe.names(z),
                        result_y: ry.label(&phi.actions),
                        result_z: rz.label(&phi.actions),
                        diverge_collision: ry == Decision::Diverge && rz == Decision::Diverge,
                    }),
                    separations,
                });
            }
        }
    }
    Ok(CompletenessReport {
        property,
        verdict: CompletenessVerdict::Complete,
        bounds: *bounds,
        qualifying_sets: sets.len(),
        pairs_checked,
        gammas_per_pair: gammas,
        witness: None,
        separations,
    })
}
