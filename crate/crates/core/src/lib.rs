//! Black swan logic: a formula language, a Hilbert-style proof kernel,
//! exhaustive finite-model entailment checks and a finite decision model.

pub mod decision;
pub mod gen;
pub mod kernel;
pub mod logic;
pub mod models;
pub mod mutate;
pub mod report;

pub use decision::{DecisionError, DecisionMap, EventUniverse, OutcomeTable};
pub use kernel::{check_proof, CheckReport, KernelError, ProofScript, Theory};
pub use logic::{parse_formula, print_formula, Formula, ParseError, Term};
pub use models::{check_entailment, EntailmentReport, FiniteModel, Mode, ScanLimits};
pub use report::{Envelope, SCHEMA_VERSION};
