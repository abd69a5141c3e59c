use std::collections::BTreeSet;

use thiserror::Error;

use super::syntax::{Formula, Term, BLACK_SWAN, IMAGINABLE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("substituting `{term}` for `{var}` would capture `{captured}` under its binder")]
pub struct CaptureError {
    pub var: String,
    pub term: Term,
    pub captured: String,
}

pub fn free_vars(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_free(f, &mut Vec::new(), &mut out);
    out
}

fn collect_free<'a>(f: &'a Formula, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
    match f {
        Formula::Pred(_, args) => {
            for v in args.iter().filter_map(Term::as_var) {
                if !bound.contains(&v) {
                    out.insert(v.to_string());
                }
            }
        }
        Formula::Not(a) => collect_free(a, bound, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            bound.push(v);
            collect_free(body, bound, out);
            bound.pop();
        }
    }
}

pub fn occurs_free(f: &Formula, x: &str) -> bool {
    match f {
        Formula::Pred(_, args) => args.iter().any(|t| t.as_var() == Some(x)),
        Formula::Not(a) => occurs_free(a, x),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            occurs_free(a, x) || occurs_free(b, x)
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => v != x && occurs_free(body, x),
    }
}

/// Finds the first binder that would capture a variable of `t` at a free
/// occurrence of `x`.
fn capture_witness(f: &Formula, x: &str, t: &Term) -> Option<String> {
    match f {
        Formula::Pred(..) => None,
        Formula::Not(a) => capture_witness(a, x, t),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            capture_witness(a, x, t).or_else(|| capture_witness(b, x, t))
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            if v == x {
                None
            } else if t.as_var() == Some(v.as_str()) && occurs_free(body, x) {
                Some(v.clone())
            } else {
                capture_witness(body, x, t)
            }
        }
    }
}

pub fn is_substitutable(f: &Formula, x: &str, t: &Term) -> bool {
    capture_witness(f, x, t).is_none()
}

/// Replaces every free occurrence of `x` in `f` by `t`. Bound occurrences are
/// left alone and no binder is ever renamed, so a capturing substitution is
/// an error rather than silently repaired.
pub fn substitute(f: &Formula, x: &str, t: &Term) -> Result<Formula, CaptureError> {
    if let Some(captured) = capture_witness(f, x, t) {
        return Err(CaptureError {
            var: x.to_string(),
            term: t.clone(),
            captured,
        });
    }
    Ok(replace_free(f, x, t))
}

fn replace_free(f: &Formula, x: &str, t: &Term) -> Formula {
    match f {
        Formula::Pred(p, args) => Formula::Pred(
            p.clone(),
            args.iter()
                .map(|a| {
                    if a.as_var() == Some(x) {
                        t.clone()
                    } else {
                        a.clone()
                    }
                })
                .collect(),
        ),
        Formula::Not(a) => Formula::not(replace_free(a, x, t)),
        Formula::And(a, b) => Formula::and(replace_free(a, x, t), replace_free(b, x, t)),
        Formula::Or(a, b) => Formula::or(replace_free(a, x, t), replace_free(b, x, t)),
        Formula::Implies(a, b) => Formula::implies(replace_free(a, x, t), replace_free(b, x, t)),
        Formula::Forall(v, _) | Formula::Exists(v, _) if v == x => f.clone(),
        Formula::Forall(v, body) => Formula::forall(v.clone(), replace_free(body, x, t)),
        Formula::Exists(v, body) => Formula::exists(v.clone(), replace_free(body, x, t)),
    }
}

/// Expands the Black Swan abbreviation `B(t)` to `~img(t)`.
pub fn expand_defs(f: &Formula) -> Formula {
    match f {
        Formula::Pred(p, args) if p == BLACK_SWAN && args.len() == 1 => {
            Formula::not(Formula::Pred(IMAGINABLE.into(), args.clone()))
        }
        Formula::Pred(..) => f.clone(),
        Formula::Not(a) => Formula::not(expand_defs(a)),
        Formula::And(a, b) => Formula::and(expand_defs(a), expand_defs(b)),
        Formula::Or(a, b) => Formula::or(expand_defs(a), expand_defs(b)),
        Formula::Implies(a, b) => Formula::implies(expand_defs(a), expand_defs(b)),
        Formula::Forall(v, body) => Formula::forall(v.clone(), expand_defs(body)),
        Formula::Exists(v, body) => Formula::exists(v.clone(), expand_defs(body)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use proptest::prelude::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn set(vs: &[&str]) -> BTreeSet<String> {
        vs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn free_vars_examples() {
        assert_eq!(free_vars(&p("forall y (lt(x,y) -> ~img(y))")), set(&["x"]));
        assert_eq!(
            free_vars(&p("exists x (occ(x) /\\ forall y (lt(x,y) -> ~img(y)))")),
            set(&[])
        );
        assert_eq!(free_vars(&p("occ(x) /\\ lt(x,y)")), set(&["x", "y"]));
    }

    #[test]
    fn substitutability_examples() {
        let f = p("forall y (lt(x,y))");
        assert!(!is_substitutable(&f, "x", &Term::var("y")));
        assert!(is_substitutable(&f, "x", &Term::var("z")));
        assert!(is_substitutable(&p("occ(x)"), "x", &Term::var("y")));
        // x is not free under the binder, so nothing can be captured there
        assert!(is_substitutable(
            &p("forall y (lt(y,y)) /\\ occ(x)"),
            "x",
            &Term::var("y")
        ));
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(
            substitute(&p("occ(x) /\\ exists y (lt(x,y))"), "x", &Term::var("z")).unwrap(),
            p("occ(z) /\\ exists y (lt(z,y))")
        );
        let f = p("forall y (lt(x,y))");
        assert_eq!(substitute(&f, "x", &Term::var("x")).unwrap(), f);
        let err = substitute(&f, "x", &Term::var("y")).unwrap_err();
        assert_eq!(err.captured, "y");
    }

    #[test]
    fn bound_occurrences_are_untouched() {
        let f = p("occ(x) /\\ forall x (img(x))");
        assert_eq!(
            substitute(&f, "x", &Term::var("y")).unwrap(),
            p("occ(y) /\\ forall x (img(x))")
        );
    }

    #[test]
    fn expand_defs_examples() {
        assert_eq!(
            expand_defs(&p("exists x (B(x) /\\ occ(x))")),
            p("exists x (~img(x) /\\ occ(x))")
        );
        assert_eq!(expand_defs(&p("occ(x)")), p("occ(x)"));
        assert_eq!(expand_defs(&p("B(y)")), p("~img(y)"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn substitution_free_var_law(
            f in crate::gen::arb_formula(true),
            x in crate::gen::arb_var(),
            t in crate::gen::arb_var(),
        ) {
            let t = Term::Var(t);
            prop_assume!(is_substitutable(&f, &x, &t));
            let g = substitute(&f, &x, &t).unwrap();
            let fv = free_vars(&f);
            if fv.contains(&x) {
                let mut expected = fv.clone();
                expected.remove(&x);
                expected.extend(t.vars());
                prop_assert_eq!(free_vars(&g), expected);
            } else {
                prop_assert_eq!(g, f);
            }
        }

        #[test]
        fn expand_defs_idempotent_and_preserves_free_vars(f in crate::gen::arb_formula(true)) {
            let once = expand_defs(&f);
            prop_assert_eq!(expand_defs(&once), once.clone());
            prop_assert_eq!(free_vars(&once), free_vars(&f));
            prop_assert!(!once.predicates().iter().any(|(n, _)| n == BLACK_SWAN));
        }
    }
}
