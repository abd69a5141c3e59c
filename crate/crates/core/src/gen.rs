//! Random formulas over the Black Swan signature, for property checks and
//! benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::logic::{Formula, Term};

pub const VARIABLES: [&str; 4] = ["x", "y", "z", "w"];

fn random_var<R: Rng + ?Sized>(rng: &mut R) -> Term {
    Term::var(*VARIABLES.choose(rng).unwrap())
}

fn random_atom<R: Rng + ?Sized>(rng: &mut R, with_defs: bool) -> Formula {
    let choices = if with_defs { 4 } else { 3 };
    match rng.gen_range(0..choices) {
        0 => Formula::pred("occ", vec![random_var(rng)]),
        1 => Formula::pred("img", vec![random_var(rng)]),
        2 => Formula::pred("lt", vec![random_var(rng), random_var(rng)]),
        _ => Formula::pred("B", vec![random_var(rng)]),
    }
}

/// A random formula with at most `depth` nested connectives or quantifiers.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, depth: u32, with_defs: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return random_atom(rng, with_defs);
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, with_defs);
    match rng.gen_range(0..6) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 => Formula::forall(*VARIABLES.choose(rng).unwrap(), sub(rng)),
        _ => Formula::exists(*VARIABLES.choose(rng).unwrap(), sub(rng)),
    }
}

#[cfg(test)]
pub(crate) use strategies::*;

#[cfg(test)]
mod strategies {
    use super::VARIABLES;
    use crate::logic::{Formula, Term};
    use proptest::prelude::*;

    pub fn arb_var() -> impl Strategy<Value = String> {
        proptest::sample::select(VARIABLES.to_vec()).prop_map(str::to_string)
    }

    fn arb_atom(with_defs: bool) -> BoxedStrategy<Formula> {
        let t = || arb_var().prop_map(Term::Var);
        let mut options = vec![
            t().prop_map(|a| Formula::pred("occ", vec![a])).boxed(),
            t().prop_map(|a| Formula::pred("img", vec![a])).boxed(),
            (t(), t())
                .prop_map(|(a, b)| Formula::pred("lt", vec![a, b]))
                .boxed(),
        ];
        if with_defs {
            options.push(t().prop_map(|a| Formula::pred("B", vec![a])).boxed());
        }
        proptest::strategy::Union::new(options).boxed()
    }

    pub fn arb_formula(with_defs: bool) -> impl Strategy<Value = Formula> {
        arb_atom(with_defs).prop_recursive(5, 48, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (arb_var(), inner.clone()).prop_map(|(v, b)| Formula::forall(v, b)),
                (arb_var(), inner).prop_map(|(v, b)| Formula::exists(v, b)),
            ]
        })
    }
}
