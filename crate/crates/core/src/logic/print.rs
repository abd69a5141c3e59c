use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parse::parse_formula;
use super::syntax::{Formula, Term};

// Binding strength, loosest first. Quantifiers, negation and atoms share the
// tightest level; quantifier bodies are always parenthesized.
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

/// Prints `f` with the fewest parentheses that still parse back to `f`.
///
/// Binary predicates are printed in prefix form (`lt(x,y)`), never with the
/// `<` sugar, so there is exactly one canonical text per formula.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, IMPLIES);
    out
}

fn write_terms(out: &mut String, args: &[Term]) {
    for (i, t) in args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(t.name());
    }
}

fn write_formula(out: &mut String, f: &Formula, ctx: u8) {
    let open = match f {
        Formula::Implies(..) => ctx > IMPLIES,
        Formula::Or(..) => ctx > OR,
        Formula::And(..) => ctx > AND,
        _ => false,
    };
    if open {
        out.push('(');
    }
    match f {
        Formula::Pred(p, args) => {
            out.push_str(p);
            out.push('(');
            write_terms(out, args);
            out.push(')');
        }
        Formula::Not(a) => {
            out.push('~');
            write_formula(out, a, UNARY);
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            out.push_str(if matches!(f, Formula::Forall(..)) {
                "forall "
            } else {
                "exists "
            });
            out.push_str(v);
            out.push_str(" (");
            write_formula(out, body, IMPLIES);
            out.push(')');
        }
        Formula::Implies(a, b) => {
            write_formula(out, a, OR);
            out.push_str(" -> ");
            write_formula(out, b, IMPLIES);
        }
        Formula::Or(a, b) => {
            write_formula(out, a, OR);
            out.push_str(" \\/ ");
            write_formula(out, b, AND);
        }
        Formula::And(a, b) => {
            write_formula(out, a, AND);
            out.push_str(" /\\ ");
            write_formula(out, b, UNARY);
        }
    }
    if open {
        out.push(')');
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

// Reports carry formulas in their printed form.
impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print_formula(self))
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_formula(&text).map_err(serde::de::Error::custom)
    }
}
