//! Finite decision models: events, outcome tables `Γ`, decision maps `Φ`
//! with a divergence result, and exhaustive completeness checks.

mod complete;
mod file;
mod map;
mod search;
mod universe;

use thiserror::Error;

pub use complete::{
    check_completeness, gamma_count, nth_gamma, qualifying_pairs, qualifying_sets, Bounds,
    CompletenessReport, CompletenessVerdict, Property, Separation, Witness, MAX_GAMMAS,
};
pub use file::{parse_problem, DecisionProblem};
pub use map::{apply_decision, AssociatedInfo, Decision, DecisionMap, OutcomeTable};
pub use search::{
    count_complete_maps_brute, divergence_collision, search_maps, MapSearchConfig, MapSearchReport,
    SearchMethod, TableCount, BRUTE_FORCE_LIMIT,
};
pub use universe::{members, Event, EventSet, EventUniverse, MAX_EVENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("decision map has no entry for outcome vector [{}]", vector.join(", "))]
    MissingTableEntry { vector: Vec<String> },
    #[error("{what}: {value} exceeds the bound of {cap}")]
    BoundsTooLarge {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("number of {0} overflows")]
    Overflow(&'static str),
    #[error("no {0} declared")]
    Empty(&'static str),
    #[error("malformed outcome table: {0}")]
    GammaShape(String),
    #[error("gamma has no entry for action `{action}` and event `{event}`")]
    MissingGamma { action: String, event: String },
    #[error("unknown event {0}")]
    UnknownEvent(String),
    #[error("duplicate {0}")]
    Duplicate(String),
    #[error("event order is not a strict order")]
    NotStrictOrder,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Bundled universe files.
pub mod bundled {
    /// Calm weather plus two occurring, unimaginable events.
    pub const BLACK_SWAN: &str = include_str!("../../universes/blackswan.universe");
    /// Two imaginable events and a map that tells every pair apart.
    pub const ALL_IMAGINABLE: &str = include_str!("../../universes/all-imaginable.universe");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{AX1, AX2};
    use crate::logic::parse_formula;
    use crate::models::{enumerate_models, CompiledFormula, Mode, ScanLimits};

    #[test]
    fn bundled_universes_parse() {
        let swans = parse_problem(bundled::BLACK_SWAN).unwrap();
        assert_eq!(
            swans.universe.names(swans.universe.black_swan_set()),
            vec!["swan1", "swan2"]
        );
        let r = check_completeness(
            &swans.phi,
            &swans.universe,
            &Bounds::default(),
            Property::Occurring,
        )
        .unwrap();
        assert!(!r.is_complete());
        assert!(r.witness.unwrap().diverge_collision);

        let calm = parse_problem(bundled::ALL_IMAGINABLE).unwrap();
        let r = check_completeness(
            &calm.phi,
            &calm.universe,
            &Bounds::default(),
            Property::Complete,
        )
        .unwrap();
        assert!(r.is_complete());
    }

    #[test]
    fn separations_replay() {
        let p = parse_problem(bundled::ALL_IMAGINABLE).unwrap();
        let (u, phi) = (&p.universe, &p.phi);
        let r = check_completeness(phi, u, &Bounds::default(), Property::Complete).unwrap();
        assert!(r.is_complete());
        let set = |names: &[String]| names.iter().fold(0, |s, n| s | 1 << u.index_of(n).unwrap());
        let index = |names: &[String], n: &String| names.iter().position(|x| x == n).unwrap();
        for sep in &r.separations {
            let table = sep
                .gamma
                .iter()
                .map(|row| row.iter().map(|o| index(&phi.outcomes, o)).collect())
                .collect();
            let gamma =
                OutcomeTable::new(phi.actions.clone(), phi.outcomes.clone(), table).unwrap();
            let ry = apply_decision(phi, &gamma, u, set(&sep.y)).unwrap();
            let rz = apply_decision(phi, &gamma, u, set(&sep.z)).unwrap();
            assert_ne!(ry, rz);
            assert_eq!(
                (ry.label(&phi.actions), rz.label(&phi.actions)),
                (sep.result_y.clone(), sep.result_z.clone())
            );
        }
    }

    #[test]
    fn divergence_is_forced_for_every_map_and_table() {
        let p = parse_problem(bundled::BLACK_SWAN).unwrap();
        let u = &p.universe;
        let phi = p.phi.clone();
        for g in 0..gamma_count(2, 2, 3).unwrap() {
            let gamma = OutcomeTable::new(
                phi.actions.clone(),
                phi.outcomes.clone(),
                nth_gamma(g, 2, 2, 3),
            )
            .unwrap();
            for set in 1..=u.all() {
                let r = apply_decision(&phi, &gamma, u, set).unwrap();
                assert_eq!(r == Decision::Diverge, u.all_unimaginable(set));
            }
        }
    }

    #[test]
    fn models_of_the_axioms_have_black_swans() {
        let limits = ScanLimits::default();
        let ax1 = CompiledFormula::compile(&parse_formula(AX1).unwrap()).unwrap();
        let ax2 = CompiledFormula::compile(&parse_formula(AX2).unwrap()).unwrap();
        let mut seen = 0;
        for n in 1..=3 {
            for m in enumerate_models(n, Mode::Arbitrary, &limits).unwrap() {
                if ax1.holds(&m) && ax2.holds(&m) {
                    seen += 1;
                    assert_ne!(EventUniverse::from_model(&m).black_swan_set(), 0, "{m}");
                }
            }
        }
        assert!(seen > 0);
    }
}
