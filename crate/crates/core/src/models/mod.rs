//! Finite structures for the Black Swan signature: evaluation, exhaustive
//! enumeration and brute-force entailment.

mod entail;
mod enumerate;
mod eval;
mod model;

pub use entail::{
    check_entailment, Counterexample, EntailmentError, EntailmentReport, SizeSummary,
    COUNTEREXAMPLE_LIMIT,
};
pub use enumerate::{enumerate_models, strict_orders, Mode, ModelSpace, ScanLimits};
pub use eval::{eval, eval_term, CompiledFormula, Environment, EvalError};
pub use model::{FiniteModel, ModelError, MAX_DOMAIN};
