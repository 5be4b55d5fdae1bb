//! Cohomology behind the existence of the degree-one lift: the
//! Chevalley–Eilenberg complex of a `g`-module, the cobar complex of a
//! symmetric coalgebra, the bicomplex `K^{m,n}` and the two-step solver.

pub mod bicomplex;
pub mod ce;
pub mod cobar;
pub mod module;
pub mod solver;
pub mod suites;

use rand::Rng;

pub use bicomplex::{Bicomplex, Cochain};
pub use ce::{ce_cohomology_dims, ce_differential, CeChain};
pub use cobar::{cartier_check, cobar_differential, cobar_primitive, sigma, sigma_split, CobarChain, SymMonomial};
pub use module::GModule;
pub use solver::{solve_correction, solve_correction_steps, Solution};
pub use suites::{verify_bicomplex, verify_cartier, verify_solver, verify_whitehead};

use crate::envelope::Monomial;
use crate::exactnum::{Lin, Rational};
use crate::liealg::LieBasisIndex;

/// Sorts an exterior word, returning the permutation sign, or `None` when a
/// letter repeats.
pub(crate) fn sort_alternating(mut args: Vec<LieBasisIndex>) -> Option<(Vec<LieBasisIndex>, i64)> {
    let mut sign = 1;
    for i in 1..args.len() {
        let mut j = i;
        while j > 0 && args[j - 1] > args[j] {
            args.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && args[j - 1] == args[j] {
            return None;
        }
    }
    Some((args, sign))
}

pub(crate) fn small_nonzero(rng: &mut impl Rng) -> Rational {
    let v: i64 = rng.gen_range(1..=3);
    Rational::from_integer(if rng.gen_bool(0.5) { v } else { -v }.into())
}

/// A sparse random chain: a few tuples, each with a few module coordinates.
pub fn random_ce_chain(m: &GModule, degree: usize, rng: &mut impl Rng) -> CeChain {
    use itertools::Itertools;
    let tuples: Vec<Vec<LieBasisIndex>> = m.g().basis().combinations(degree).collect();
    let mut w = CeChain::zero(degree);
    if tuples.is_empty() {
        return w;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let t = tuples[rng.gen_range(0..tuples.len())].clone();
        let v: Lin<usize, Rational> = (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(0..m.dim()), small_nonzero(rng))).collect();
        w.add(t, &v);
    }
    w
}

/// A random element of `Sym(V)^{(x) n}` of total degree at most `d`.
pub fn random_cobar_chain(v_dim: usize, n: usize, d: usize, rng: &mut impl Rng) -> CobarChain {
    let mut y = CobarChain::zero(n);
    for _ in 0..rng.gen_range(1..=4) {
        let mut slots: Vec<Vec<u16>> = vec![Vec::new(); n];
        for _ in 0..rng.gen_range(0..=d) {
            slots[rng.gen_range(0..n)].push(rng.gen_range(0..v_dim as u16));
        }
        y.add_term(slots.into_iter().map(Monomial::from_commuting).collect(), small_nonzero(rng));
    }
    y
}
