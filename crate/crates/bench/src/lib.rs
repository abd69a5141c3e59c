//! Fixtures shared by the benchmarks.

use blackswan_core::decision::{bundled, parse_problem, DecisionProblem};
use blackswan_core::kernel::{Theory, AX1, AX2, THM};
use blackswan_core::logic::{parse_formula, Formula};

pub fn black_swan_theory() -> Theory {
    Theory::builtin("blackswan").expect("built-in theory")
}

/// `([Ax1, Ax2], Thm)`.
pub fn theorem_entailment() -> (Vec<Formula>, Formula) {
    let f = |s| parse_formula(s).expect("built-in formula");
    (vec![f(AX1), f(AX2)], f(THM))
}

pub fn problem(text: &str) -> DecisionProblem {
    parse_problem(text).expect("bundled universe")
}

pub fn black_swan_problem() -> DecisionProblem {
    problem(bundled::BLACK_SWAN)
}

pub fn all_imaginable_problem() -> DecisionProblem {
    problem(bundled::ALL_IMAGINABLE)
}
