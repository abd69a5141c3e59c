//! Exhaustive search over decision maps.
//!
//! A map only matters on outcome vectors of event sets that contain an
//! imaginable event; every other set diverges. The search therefore ranges
//! over functions from those "relevant" vectors to actions.

use serde::{Deserialize, Serialize};

use super::complete::{
    gamma_count, nth_gamma, qualifying_pairs, qualifying_sets, Bounds, Property, MAX_GAMMAS,
};
use super::map::{Decision, DecisionMap, OutcomeTable};
use super::universe::{EventSet, EventUniverse};
use super::DecisionError;

/// Most maps enumerated for a single (actions, outcomes) configuration.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 20;

/// `base^exponent` decision maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCount {
    pub base: usize,
    pub exponent: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<u128>,
}

impl TableCount {
    fn new(base: usize, exponent: u64) -> Self {
        let exact = u32::try_from(exponent)
            .ok()
            .and_then(|e| (base as u128).checked_pow(e));
        TableCount {
            base,
            exponent,
            exact,
        }
    }

    pub fn log2(&self) -> f64 {
        self.exponent as f64 * (self.base as f64).log2()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMethod {
    /// Two qualifying sets diverge under every map, so none is complete.
    Collision,
    /// Every map was checked.
    Exhaustive,
    /// Too many maps to enumerate; no count is claimed.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSearchConfig {
    pub actions: usize,
    pub outcomes: usize,
    pub relevant_vectors: u64,
    pub maps: TableCount,
    pub method: SearchMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_maps: Option<u128>,
    /// The first complete map found, as `phi` lines.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_complete: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSearchReport {
    pub property: Property,
    pub bounds: Bounds,
    /// A pair of qualifying sets that diverge under every map, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collision: Option<(Vec<String>, Vec<String>)>,
    pub configs: Vec<MapSearchConfig>,
    /// Total complete maps across configurations; absent when any
    /// configuration was skipped.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_maps: Option<u128>,
}

impl MapSearchReport {
    pub fn exhaustive(&self) -> bool {
        self.configs
            .iter()
            .all(|c| c.method != SearchMethod::Skipped)
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// First pair of qualifying sets that are both entirely unimaginable.
pub fn divergence_collision(
    universe: &EventUniverse,
    property: Property,
) -> Option<(EventSet, EventSet)> {
    let sets = qualifying_sets(universe, property);
    let found = qualifying_pairs(&sets)
        .find(|&(y, z)| universe.all_unimaginable(y) && universe.all_unimaginable(z));
    found
}

/// Relevant vectors are numbered by length class, then as base-`m` numerals.
struct VectorSpace {
    k: usize,
    m: usize,
    /// `(set size, first id)` for each size that occurs, ascending.
    offsets: Vec<(usize, u64)>,
    len: u64,
}

impl VectorSpace {
    fn new(universe: &EventUniverse, sets: &[EventSet], k: usize, m: usize) -> Option<Self> {
        let mut sizes: Vec<usize> = sets
            .iter()
            .filter(|&&s| !universe.all_unimaginable(s))
            .map(|s| s.count_ones() as usize)
            .collect();
        sizes.sort_unstable();
        sizes.dedup();
        let mut offsets = Vec::new();
        let mut len = 0u64;
        for s in sizes {
            offsets.push((s, len));
            len = len.checked_add((m as u64).checked_pow(u32::try_from(k * s).ok()?)?)?;
        }
        Some(VectorSpace { k, m, offsets, len })
    }

    fn id(&self, vector: &[usize]) -> u64 {
        let s = vector.len() / self.k.max(1);
        let base = self
            .offsets
            .iter()
            .find(|(size, _)| *size == s)
            .expect("relevant size")
            .1;
        base + vector
            .iter()
            .fold(0u64, |acc, &d| acc * self.m as u64 + d as u64)
    }

    fn vector(&self, id: u64) -> Vec<usize> {
        let &(s, base) = self
            .offsets
            .iter()
            .rev()
            .find(|(_, b)| *b <= id)
            .expect("id in range");
        let mut rest = id - base;
        let mut digits = vec![0; self.k * s];
        for d in digits.iter_mut().rev() {
            *d = (rest % self.m as u64) as usize;
            rest /= self.m as u64;
        }
        digits
    }
}

/// `Φ` results per (outcome table, qualifying set): `None` for divergence,
/// otherwise the relevant-vector id.
fn result_grid(
    universe: &EventUniverse,
    sets: &[EventSet],
    space: &VectorSpace,
) -> Vec<Vec<Option<u64>>> {
    let (k, m, n) = (space.k, space.m, universe.len());
    let gammas = gamma_count(k, m, n).expect("bounded");
    (0..gammas)
        .map(|g| {
            let gamma = OutcomeTable::new(names("a", k), names("o", m), nth_gamma(g, k, m, n))
                .expect("generated table is well formed");
            sets.iter()
                .map(|&s| (!universe.all_unimaginable(s)).then(|| space.id(&gamma.vector(s))))
                .collect()
        })
        .collect()
}

fn is_complete(table: &[usize], grid: &[Vec<Option<u64>>], pairs: &[(usize, usize)]) -> bool {
    let value =
        |r: Option<u64>| r.map_or(Decision::Diverge, |id| Decision::Action(table[id as usize]));
    pairs
        .iter()
        .all(|&(i, j)| grid.iter().any(|row| value(row[i]) != value(row[j])))
}

/// Counts complete maps with `k` actions and `m` outcomes by enumerating
/// every map. Returns `None` when there are more than `limit` maps.
pub fn count_complete_maps_brute(
    universe: &EventUniverse,
    property: Property,
    k: usize,
    m: usize,
    limit: u128,
) -> Option<(u128, Option<DecisionMap>)> {
    let sets = qualifying_sets(universe, property);
    let space = VectorSpace::new(universe, &sets, k, m)?;
    let total = TableCount::new(k, space.len).exact?;
    if total > limit || gamma_count(k, m, universe.len())? > MAX_GAMMAS {
        return None;
    }
    let grid = result_grid(universe, &sets, &space);
    let index_pairs: Vec<(usize, usize)> = (0..sets.len())
        .flat_map(|i| (i + 1..sets.len()).map(move |j| (i, j)))
        .collect();

    let mut table = vec![0usize; space.len as usize];
    let mut count = 0u128;
    let mut first = None;
    for _ in 0..total {
        if is_complete(&table, &grid, &index_pairs) {
            count += 1;
            if first.is_none() {
                let mut phi = DecisionMap::new(names("a", k), names("o", m));
                for (id, &a) in table.iter().enumerate() {
                    phi.entries.insert(space.vector(id as u64), a);
                }
                first = Some(phi);
            }
        }
        for digit in table.iter_mut().rev() {
            *digit += 1;
            if *digit < k {
                break;
            }
            *digit = 0;
        }
    }
    Some((count, first))
}

/// Searches all decision maps with up to `bounds.max_actions` actions and
/// `bounds.max_outcomes` outcomes for ones satisfying `property`.
pub fn search_maps(
    universe: &EventUniverse,
    bounds: &Bounds,
    property: Property,
) -> Result<MapSearchReport, DecisionError> {
    bounds.check(0, 0, universe.len())?;
    let sets = qualifying_sets(universe, property);
    let collision = divergence_collision(universe, property);
    let mut configs = Vec::new();
    for k in 1..=bounds.max_actions {
        for m in 1..=bounds.max_outcomes {
            let space = VectorSpace::new(universe, &sets, k, m)
                .ok_or(DecisionError::Overflow("relevant outcome vectors"))?;
            let maps = TableCount::new(k, space.len);
            let mut config = MapSearchConfig {
                actions: k,
                outcomes: m,
                relevant_vectors: space.len,
                maps,
                method: SearchMethod::Skipped,
                complete_maps: None,
                first_complete: None,
            };
            if collision.is_some() {
                config.method = SearchMethod::Collision;
                config.complete_maps = Some(0);
            } else if let Some((count, first)) =
                count_complete_maps_brute(universe, property, k, m, BRUTE_FORCE_LIMIT)
            {
                config.method = SearchMethod::Exhaustive;
                config.complete_maps = Some(count);
                config.first_complete = first.map(|phi| phi.lines());
            }
            configs.push(config);
        }
    }
    let complete_maps = configs
        .iter()
        .map(|c| c.complete_maps)
        .sum::<Option<u128>>();
    Ok(MapSearchReport {
        property,
        bounds: *bounds,
        collision: collision.map(|(y, z)| (universe.names(y), universe.names(z))),
        configs,
        complete_maps,
    })
}
