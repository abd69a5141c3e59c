//! First-order syntax: terms, formulas, signatures, substitution and the
//! concrete text syntax.

mod parse;
mod print;
mod subst;
mod syntax;

pub use parse::{parse_formula, parse_formula_with, ParseError};
pub use print::print_formula;
pub use subst::{expand_defs, free_vars, is_substitutable, occurs_free, substitute, CaptureError};
pub use syntax::{Formula, Signature, SignatureError, Term, BLACK_SWAN, IMAGINABLE, LESS, OCCURS};
