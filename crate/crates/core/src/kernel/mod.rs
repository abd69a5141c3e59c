//! Hilbert-style proof kernel: axiom schemas, rules, theories and the
//! line-by-line checker.

mod check;
pub mod corpus;
mod rules;
mod schema;
mod script;
mod theory;

pub use check::{check_proof, CheckReport, KernelError, LineReport, Verdict};
pub use corpus::{corpus_entry, list_corpus, CorpusEntry};
pub use rules::{check_rule, Rule, RuleError};
pub use schema::{match_schema, matching_schemas, Instantiation, SchemaId};
pub use script::{parse_script, print_script, Justification, ProofLine, ProofScript, ScriptError};
pub use theory::{Theory, TheoryError};
pub use theory::{AX1, AX2, IRREFLEXIVITY, MURPHY, OPEN_UNIVERSE, THM, TRANSITIVITY};
