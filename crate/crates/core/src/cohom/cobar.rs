//! The cobar complex `T^n(C) = C^{(x) n}` of a symmetric coalgebra.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::envelope::pbw::split_monomial;
use crate::envelope::{Monomial, Tensor};
use crate::error::{Error, Result};
use crate::exactnum::{rank, solve, Lin, Rational, SparseMatrix};
use crate::report::{Check, Report};

/// A commutative monomial in the coordinates `v_0, v_1, ...` of `V`.
pub type SymMonomial = Monomial<u16>;
pub type CobarChain = Tensor<SymMonomial, Rational>;

/// `delta_n(y) = 1 (x) y + sum_i (-1)^i Delta_i(y) + (-1)^{n+1} y (x) 1`
/// for the coproduct that makes letters primitive. The same formula serves
/// `U(g)` in PBW coordinates.
pub fn cobar_differential<L: Ord + Clone>(y: &Tensor<Monomial<L>, Rational>) -> Tensor<Monomial<L>, Rational> {
    let n = y.arity();
    let mut out = Lin::zero();
    let sign = |k: usize| if k.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    for (slots, c) in y.iter() {
        let mut front = Vec::with_capacity(n + 1);
        front.push(Monomial::unit());
        front.extend(slots.iter().cloned());
        out.add_term(front, c.clone());
        for i in 0..n {
            let s = &sign(i + 1) * c;
            for (a, b, r) in split_monomial(&slots[i]) {
                let mut t = Vec::with_capacity(n + 1);
                t.extend(slots[..i].iter().cloned());
                t.push(a);
                t.push(b);
                t.extend(slots[i + 1..].iter().cloned());
                out.add_term(t, &s * &r);
            }
        }
        let mut back = slots.clone();
        back.push(Monomial::unit());
        out.add_term(back, &sign(n + 1) * c);
    }
    Tensor::from_terms(n + 1, out)
}

/// `sigma(x_1 (x) ... (x) x_n) = (-1)^{n(n+1)/2} x_n (x) ... (x) x_1`.
pub fn sigma<K: Ord + Clone>(y: &Tensor<K, Rational>) -> Tensor<K, Rational> {
    let n = y.arity();
    let r = y.reversed();
    if (n * (n + 1) / 2).is_multiple_of(2) {
        r
    } else {
        r.neg()
    }
}

/// The eigenprojections `(1 + sigma)/2` and `(1 - sigma)/2`.
pub fn sigma_split<K: Ord + Clone>(y: &Tensor<K, Rational>) -> (Tensor<K, Rational>, Tensor<K, Rational>) {
    let s = sigma(y);
    let half = Rational::new(1.into(), 2.into());
    let plus = y.add(&s).expect("same arity").scale_rational(&half);
    let minus = y.sub(&s).expect("same arity").scale_rational(&half);
    (plus, minus)
}

/// Monomials of degree `d` in `v_dim` variables.
pub fn sym_basis(v_dim: usize, d: usize) -> Vec<SymMonomial> {
    (0..v_dim as u16).combinations_with_replacement(d).map(Monomial::from_sorted).collect()
}

/// Pure tensors of `n` monomials with total degree `d`.
pub fn cobar_basis(v_dim: usize, n: usize, d: usize) -> Vec<Vec<SymMonomial>> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for first in sym_basis(v_dim, k) {
            for rest in cobar_basis(v_dim, n - 1, d - k) {
                let mut t = vec![first.clone()];
                t.extend(rest);
                out.push(t);
            }
        }
    }
    out
}

/// A basis of `T^n_-` in degree `d`: one vector `t - sigma(t)` per
/// reversal orbit on which it is nonzero.
pub fn minus_basis(v_dim: usize, n: usize, d: usize) -> Vec<CobarChain> {
    let mut out = Vec::new();
    for t in cobar_basis(v_dim, n, d) {
        let mut r = t.clone();
        r.reverse();
        if r < t {
            continue;
        }
        let pure = CobarChain::pure(t, Rational::one());
        let v = pure.sub(&sigma(&pure)).expect("same arity");
        if !v.is_zero() {
            out.push(v);
        }
    }
    out
}

fn matrix_of(images: &[CobarChain]) -> SparseMatrix {
    let mut index: BTreeMap<&Vec<SymMonomial>, usize> = BTreeMap::new();
    for img in images {
        for (k, _) in img.iter() {
            let next = index.len();
            index.entry(k).or_insert(next);
        }
    }
    let mut m = SparseMatrix::new(index.len(), images.len());
    for (j, img) in images.iter().enumerate() {
        for (k, c) in img.iter() {
            m.set(index[k], j, c.clone());
        }
    }
    m
}

/// `dim H^n(T_-(Sym V))` in symmetric degree `d`.
pub fn minus_cohomology_dim(v_dim: usize, n: usize, d: usize) -> usize {
    let here = minus_basis(v_dim, n, d);
    let out: Vec<CobarChain> = here.iter().map(cobar_differential).collect();
    let kernel = here.len() - rank(&matrix_of(&out));
    let image = if n == 0 {
        0
    } else {
        let below: Vec<CobarChain> = minus_basis(v_dim, n - 1, d).iter().map(cobar_differential).collect();
        rank(&matrix_of(&below))
    };
    kernel - image
}

/// `H^2` of the minus subcomplex, one check per symmetric degree.
pub fn cartier_check(v_dim: usize, d_max: usize) -> Report {
    let checks = (0..=d_max)
        .into_par_iter()
        .map(|d| {
            let h2 = minus_cohomology_dim(v_dim, 2, d);
            Check::boolean(
                format!("H2/V{v_dim}/deg{d}"),
                "H^2(T_-(Sym V), delta) = 0",
                h2 == 0,
                || format!("dim H^2 = {h2}"),
            )
        })
        .collect();
    Report::new("cartier", format!("Sym(V), dim V = {v_dim}"), checks)
}

/// Solves `delta_1(x) = y` for a cocycle `y` in `T^2_-`; the inputs that
/// are not minus-symmetric cocycles are rejected first.
pub fn cobar_primitive(y: &CobarChain, v_dim: usize) -> Result<CobarChain> {
    if y.arity() != 2 {
        return Err(Error::ArityMismatch(y.arity(), 2));
    }
    let (plus, _) = sigma_split(y);
    if !plus.is_zero() {
        return Err(Error::Precondition { equation: "sigma(y) = -y", detail: format!("{} symmetric terms", plus.len()) });
    }
    let dy = cobar_differential(y);
    if !dy.is_zero() {
        return Err(Error::Precondition { equation: "delta_2(y) = 0", detail: format!("{} nonzero terms", dy.len()) });
    }
    let mut degrees: Vec<usize> = y.iter().map(|(s, _)| s.iter().map(Monomial::degree).sum()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut x = CobarChain::zero(1);
    for d in degrees {
        let part = Tensor::from_terms(
            2,
            y.terms().filter(|s, _| s.iter().map(Monomial::degree).sum::<usize>() == d),
        );
        let unknowns: Vec<SymMonomial> = sym_basis(v_dim, d);
        let images: Vec<CobarChain> =
            unknowns.iter().map(|m| cobar_differential(&CobarChain::pure(vec![m.clone()], Rational::one()))).collect();
        let mut rows: HashMap<&Vec<SymMonomial>, usize> = HashMap::new();
        for (k, _) in images.iter().flat_map(|i| i.iter()).chain(part.iter()) {
            let next = rows.len();
            rows.entry(k).or_insert(next);
        }
        let mut a = SparseMatrix::new(rows.len(), unknowns.len());
        for (j, img) in images.iter().enumerate() {
            for (k, c) in img.iter() {
                a.set(rows[k], j, c.clone());
            }
        }
        let mut b = vec![Rational::zero(); rows.len()];
        for (k, c) in part.iter() {
            b[rows[k]] = c.clone();
        }
        let sol = solve(&a, &b)?.ok_or(Error::NoSolution(d))?;
        for (m, c) in unknowns.into_iter().zip(sol) {
            if !c.is_zero() {
                x.add_term(vec![m], c);
            }
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom::random_cobar_chain;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(i: u16) -> SymMonomial {
        Monomial::letter(i)
    }

    #[test]
    fn primitives_are_cocycles() {
        let y = CobarChain::pure(vec![v(0)], Rational::one());
        assert!(cobar_differential(&y).is_zero());
    }

    #[test]
    fn delta_squared_and_sigma_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            for n in 1..=3 {
                let y = random_cobar_chain(2, n, 3, &mut rng);
                let dy = cobar_differential(&y);
                assert!(cobar_differential(&dy).is_zero());
                assert_eq!(sigma(&dy), cobar_differential(&sigma(&y)));
            }
        }
    }

    #[test]
    fn sigma_split_at_arity_two() {
        let x = CobarChain::pure(vec![v(0), v(1)], Rational::one());
        let (plus, minus) = sigma_split(&x);
        let half = Rational::new(1.into(), 2.into());
        let sym = x.add(&CobarChain::pure(vec![v(1), v(0)], Rational::one())).unwrap().scale_rational(&half);
        assert_eq!(minus, sym);
        assert_eq!(plus.add(&minus).unwrap(), x);
        assert_eq!(sigma(&sigma(&x)), x);
    }

    #[test]
    fn lower_cohomology_of_minus_complex() {
        // T^1_- is all of Sym(V); its cocycles in degree 1 are V itself
        assert_eq!(minus_cohomology_dim(2, 1, 1), 2);
        assert_eq!(minus_cohomology_dim(2, 1, 2), 0);
        for d in 0..=3 {
            assert_eq!(minus_cohomology_dim(2, 2, d), 0);
        }
    }

    #[test]
    fn cocycle_has_primitive() {
        let x = CobarChain::pure(vec![Monomial::from_sorted(vec![0, 1, 1])], Rational::one());
        let y = cobar_differential(&x);
        let p = cobar_primitive(&y, 2).unwrap();
        assert_eq!(cobar_differential(&p), y);
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let y = CobarChain::pure(vec![v(0), Monomial::unit()], Rational::one())
            .add(&CobarChain::pure(vec![Monomial::unit(), v(0)], Rational::one()))
            .unwrap();
        assert!(matches!(cobar_primitive(&y, 1), Err(Error::Precondition { equation: "delta_2(y) = 0", .. })));
        let antisym = CobarChain::pure(vec![v(0), v(1)], Rational::one())
            .sub(&CobarChain::pure(vec![v(1), v(0)], Rational::one()))
            .unwrap();
        assert!(matches!(cobar_primitive(&antisym, 2), Err(Error::Precondition { equation: "sigma(y) = -y", .. })));
    }
}
