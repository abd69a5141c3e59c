use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::enumerate::{Mode, ModelSpace, ScanLimits};
use super::eval::{CompiledFormula, EvalError};
use super::model::{FiniteModel, ModelError};
use crate::logic::{free_vars, Formula};

/// Counterexamples kept in a report; the total is always counted.
pub const COUNTEREXAMPLE_LIMIT: usize = 16;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EntailmentError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("formula `{formula}` is not closed")]
    OpenFormula { formula: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub size: usize,
    /// Enumeration index within its size.
    pub index: u64,
    pub model: FiniteModel,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub size: usize,
    pub scanned: u64,
    pub premises_satisfied: u64,
    pub conclusion_satisfied: u64,
    pub counterexamples: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntailmentReport {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
    pub mode: Mode,
    pub max_n: usize,
    pub models_scanned: u64,
    /// Models where every premise holds.
    pub premises_satisfied: u64,
    /// Models where every premise and the conclusion hold.
    pub conclusion_satisfied: u64,
    pub counterexample_count: u64,
    /// The first [`COUNTEREXAMPLE_LIMIT`] counterexamples, by size then index.
    pub counterexamples: Vec<Counterexample>,
    pub per_size: Vec<SizeSummary>,
}

impl EntailmentReport {
    pub fn holds(&self) -> bool {
        self.counterexample_count == 0
    }
}

#[derive(Default)]
struct Partial {
    summary: SizeSummary,
    found: Vec<Counterexample>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.summary.scanned += other.summary.scanned;
        self.summary.premises_satisfied += other.summary.premises_satisfied;
        self.summary.conclusion_satisfied += other.summary.conclusion_satisfied;
        self.summary.counterexamples += other.summary.counterexamples;
        let room = COUNTEREXAMPLE_LIMIT.saturating_sub(self.found.len());
        self.found.extend(other.found.into_iter().take(room));
        self
    }
}

fn scan_chunk(
    space: &ModelSpace,
    range: std::ops::Range<u64>,
    premises: &[CompiledFormula],
    conclusion: &CompiledFormula,
) -> Partial {
    let mut part = Partial::default();
    for pos in range {
        let m = space.get(pos);
        part.summary.scanned += 1;
        if !premises.iter().all(|p| p.holds(&m)) {
            continue;
        }
        part.summary.premises_satisfied += 1;
        if conclusion.holds(&m) {
            part.summary.conclusion_satisfied += 1;
        } else {
            part.summary.counterexamples += 1;
            if part.found.len() < COUNTEREXAMPLE_LIMIT {
                part.found.push(Counterexample {
                    size: space.size(),
                    index: m.index() as u64,
                    model: m,
                });
            }
        }
    }
    part
}

fn closed(f: &Formula) -> Result<CompiledFormula, EntailmentError> {
    if !free_vars(f).is_empty() {
        return Err(EntailmentError::OpenFormula {
            formula: f.to_string(),
        });
    }
    Ok(CompiledFormula::compile(f)?)
}

/// Scans every model of sizes `1..=max_n` in `mode` for ones where all
/// premises hold and the conclusion fails. Chunks are scanned in parallel
/// and merged in enumeration order, so results do not depend on scheduling.
pub fn check_entailment(
    premises: &[Formula],
    conclusion: &Formula,
    max_n: usize,
    mode: Mode,
    limits: &ScanLimits,
) -> Result<EntailmentReport, EntailmentError> {
    limits.check(max_n, mode)?;
    let compiled_premises = premises.iter().map(closed).collect::<Result<Vec<_>, _>>()?;
    let compiled_conclusion = closed(conclusion)?;

    let mut per_size = Vec::new();
    let mut counterexamples = Vec::new();
    for n in 1..=max_n {
        let space = ModelSpace::new(n, mode, limits)?;
        let chunks: Vec<u64> = (0..space.len().div_ceil(CHUNK)).collect();
        let part = chunks
            .par_iter()
            .map(|&c| {
                let range = c * CHUNK..((c + 1) * CHUNK).min(space.len());
                scan_chunk(&space, range, &compiled_premises, &compiled_conclusion)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Partial::default(), Partial::merge);
        let room = COUNTEREXAMPLE_LIMIT.saturating_sub(counterexamples.len());
        counterexamples.extend(part.found.into_iter().take(room));
        per_size.push(SizeSummary {
            size: n,
            ..part.summary
        });
    }

    let total = |f: fn(&SizeSummary) -> u64| per_size.iter().map(f).sum::<u64>();
    Ok(EntailmentReport {
        premises: premises.to_vec(),
        conclusion: conclusion.clone(),
        mode,
        max_n,
        models_scanned: total(|s| s.scanned),
        premises_satisfied: total(|s| s.premises_satisfied),
        conclusion_satisfied: total(|s| s.conclusion_satisfied),
        counterexample_count: total(|s| s.counterexamples),
        counterexamples,
        per_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Theory, AX1, AX2, MURPHY, OPEN_UNIVERSE, THM};
    use crate::logic::parse_formula;
    use crate::models::eval::{eval, Environment};

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn scan(premises: &[&str], conclusion: &str, n: usize, mode: Mode) -> EntailmentReport {
        let premises: Vec<Formula> = premises.iter().map(|s| p(s)).collect();
        check_entailment(&premises, &p(conclusion), n, mode, &ScanLimits::default()).unwrap()
    }

    #[test]
    fn axioms_entail_the_theorem_up_to_three() {
        let r = scan(&[AX1, AX2], THM, 3, Mode::Arbitrary);
        assert_eq!(r.models_scanned, 8 + 256 + 32768);
        assert!(r.premises_satisfied >= 1);
        assert!(r.holds());
        assert_eq!(r.conclusion_satisfied, r.premises_satisfied);
    }

    #[test]
    fn order_axioms_leave_no_finite_model() {
        let r = scan(&[AX1, AX2], THM, 4, Mode::Strict);
        assert_eq!(r.premises_satisfied, 0);
        assert!(r.holds());
    }

    #[test]
    fn theorem_alone_is_not_valid() {
        let r = scan(&[], THM, 2, Mode::Arbitrary);
        assert!(!r.holds());
        let first = &r.counterexamples[0];
        assert_eq!(first.model.occ_bits(), 0);
        assert_eq!(first.model.to_string(), "n=1; lt={}; occ={}; img={}");
        assert!(r.counterexamples.len() <= COUNTEREXAMPLE_LIMIT);
        assert!(r.counterexample_count > COUNTEREXAMPLE_LIMIT as u64);
    }

    #[test]
    fn murphy_and_open_universe_entail_ax2() {
        assert!(scan(&[MURPHY, OPEN_UNIVERSE], AX2, 3, Mode::Arbitrary).holds());
    }

    #[test]
    fn counterexample_lists_are_monotone_in_max_n() {
        for k in 1..3 {
            let small = scan(
                &["forall x (occ(x))"],
                "exists x (img(x))",
                k,
                Mode::Arbitrary,
            );
            let large = scan(
                &["forall x (occ(x))"],
                "exists x (img(x))",
                k + 1,
                Mode::Arbitrary,
            );
            assert!(large.counterexamples.starts_with(&small.counterexamples));
            assert!(large.counterexample_count >= small.counterexample_count);
        }
    }

    #[test]
    fn counterexamples_really_are_counterexamples() {
        let r = scan(
            &["forall x (occ(x) -> img(x))"],
            "forall x (img(x))",
            3,
            Mode::Arbitrary,
        );
        for c in &r.counterexamples {
            let env = Environment::new();
            assert!(eval(&c.model, &p("forall x (occ(x) -> img(x))"), &env).unwrap());
            assert!(!eval(&c.model, &p("forall x (img(x))"), &env).unwrap());
        }
        assert!(r
            .counterexamples
            .windows(2)
            .all(|w| (w[0].size, w[0].index) < (w[1].size, w[1].index)));
    }

    #[test]
    fn errors() {
        let limits = ScanLimits::default();
        assert!(matches!(
            check_entailment(&[], &p("occ(x)"), 2, Mode::Arbitrary, &limits),
            Err(EntailmentError::OpenFormula { .. })
        ));
        assert!(matches!(
            check_entailment(&[], &p(THM), 5, Mode::Arbitrary, &limits),
            Err(EntailmentError::Model(ModelError::SizeCapExceeded { .. }))
        ));
    }

    #[test]
    fn kernel_soundness_spot_check() {
        for theory in [Theory::black_swan(), Theory::murphy()] {
            let axioms: Vec<Formula> = theory.axioms().map(|(_, f)| f.clone()).collect();
            for (_, goal) in theory.goals() {
                let r = check_entailment(&axioms, goal, 3, Mode::Arbitrary, &ScanLimits::default())
                    .unwrap();
                assert!(r.holds(), "{}", theory.name);
            }
        }
    }
}
