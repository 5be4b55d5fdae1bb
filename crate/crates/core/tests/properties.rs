//! Randomized algebraic laws in the enveloping algebra and the free model.

use std::sync::Arc;

use proptest::prelude::*;
use yangian_core::exactnum::{rank, rank_mod_p};
use yangian_core::{Envelope, FmElement, FreeModel, HPoly, Rational, SparseMatrix, UElement};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Up to three terms, each `c * x_1 ... x_k` with `k <= 3` basis letters.
fn words(dim: usize) -> impl Strategy<Value = Vec<(i64, Vec<usize>)>> {
    proptest::collection::vec((-3i64..=3, proptest::collection::vec(0..dim, 0..=3)), 1..=3)
}

fn element(env: &Envelope, terms: &[(i64, Vec<usize>)]) -> UElement {
    let basis: Vec<_> = env.g().basis().collect();
    let mut out = UElement::zero();
    for (c, w) in terms {
        let letters: Vec<_> = w.iter().map(|&i| basis[i]).collect();
        out += &env.normal_order(&letters).scale(&HPoly::constant(q(*c)));
    }
    out
}

fn fm_element(fm: &FreeModel, terms: &[(i64, Vec<usize>)]) -> FmElement {
    let basis: Vec<_> = fm.env().g().basis().collect();
    let dim = basis.len();
    let mut out = FmElement::zero();
    for (c, w) in terms {
        // letters >= dim stand for J
        let factors: Vec<FmElement> =
            w.iter().map(|&i| if i < dim { fm.iota(basis[i]) } else { fm.j(basis[i - dim]) }).collect();
        let refs: Vec<&FmElement> = factors.iter().collect();
        out += &fm.product(&refs).scale(&HPoly::constant(q(*c)));
    }
    out
}

fn sl(n: usize) -> Arc<Envelope> {
    Envelope::sl(n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(n in 2usize..=3, a in words(8), b in words(8), c in words(8)) {
        let env = sl(n);
        let d = env.g().dim();
        let clip = |s: Vec<(i64, Vec<usize>)>| s.into_iter().map(|(k, w)| (k, w.into_iter().map(|i| i % d).collect())).collect::<Vec<_>>();
        let (a, b, c) = (element(&env, &clip(a)), element(&env, &clip(b)), element(&env, &clip(c)));
        prop_assert_eq!(env.mul(&env.mul(&a, &b), &c), env.mul(&a, &env.mul(&b, &c)));
    }

    #[test]
    fn bracket_satisfies_jacobi(a in words(3), b in words(3), c in words(3)) {
        let env = sl(2);
        let (a, b, c) = (element(&env, &a), element(&env, &b), element(&env, &c));
        let br = |x: &UElement, y: &UElement| env.bracket(x, y);
        let total = &(&br(&a, &br(&b, &c)) + &br(&b, &br(&c, &a))) + &br(&c, &br(&a, &b));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn coproduct_and_counit_are_multiplicative(a in words(3), b in words(3)) {
        let env = sl(2);
        let (a, b) = (element(&env, &a), element(&env, &b));
        let ab = env.mul(&a, &b);
        prop_assert_eq!(env.coproduct(&ab), env.t_mul(&env.coproduct(&a), &env.coproduct(&b)).unwrap());
        prop_assert_eq!(env.counit(&ab), &env.counit(&a) * &env.counit(&b));
    }

    #[test]
    fn antipode_reverses_products(a in words(3), b in words(3)) {
        let env = sl(2);
        let (a, b) = (element(&env, &a), element(&env, &b));
        prop_assert_eq!(env.antipode(&env.mul(&a, &b)), env.mul(&env.antipode(&b), &env.antipode(&a)));
        prop_assert_eq!(env.antipode(&env.antipode(&a)), a);
    }

    #[test]
    fn free_model_product_is_associative(a in words(6), b in words(6), c in words(6)) {
        let fm = FreeModel::new(sl(2)).unwrap();
        let (a, b, c) = (fm_element(&fm, &a), fm_element(&fm, &b), fm_element(&fm, &c));
        prop_assert_eq!(fm.mul(&fm.mul(&a, &b), &c), fm.mul(&a, &fm.mul(&b, &c)));
    }

    #[test]
    fn modular_rank_matches_rational_rank(
        rows in 1usize..7,
        cols in 1usize..7,
        entries in proptest::collection::vec((0usize..7, 0usize..7, -4i64..=4, 1i64..=3), 0..30),
    ) {
        let mut m = SparseMatrix::new(rows, cols);
        for (i, j, p, d) in entries {
            m.set(i % rows, j % cols, Rational::new(p.into(), d.into()));
        }
        prop_assert_eq!(rank_mod_p(&m), Some(rank(&m)));
    }
}
