//! The Chevalley–Eilenberg complex `C^m(g, M) = Hom(wedge^m g, M)`.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::module::{GModule, Weight};
use super::sort_alternating;
use crate::exactnum::{rank, rank_mod_p, Lin, Rational, SparseMatrix};
use crate::liealg::{LieAlgebraData, LieBasisIndex};

pub type ModuleVector = Lin<usize, Rational>;

/// An alternating `m`-cochain, stored on strictly increasing tuples.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CeChain {
    pub degree: usize,
    pub values: BTreeMap<Vec<LieBasisIndex>, ModuleVector>,
}

impl CeChain {
    pub fn zero(degree: usize) -> Self {
        Self { degree, values: BTreeMap::new() }
    }

    /// Adds `v` to the value on `args`, reordering with the alternating sign.
    pub fn add(&mut self, args: Vec<LieBasisIndex>, v: &ModuleVector) {
        debug_assert_eq!(args.len(), self.degree);
        let Some((sorted, sign)) = sort_alternating(args) else { return };
        let slot = self.values.entry(sorted.clone()).or_default();
        slot.add_scaled(v, &Rational::from_integer(sign.into()));
        if slot.is_zero() {
            self.values.remove(&sorted);
        }
    }

    /// The value on an arbitrary tuple.
    pub fn eval(&self, args: Vec<LieBasisIndex>) -> ModuleVector {
        match sort_alternating(args) {
            Some((sorted, sign)) => self
                .values
                .get(&sorted)
                .map_or_else(Lin::zero, |v| v.scale_rational(&Rational::from_integer(sign.into()))),
            None => Lin::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

fn act(rows: &[Vec<(usize, Rational)>], v: &ModuleVector) -> ModuleVector {
    // rows here are the columns of rho(x): rho(x) e_j = sum_i c_i e_i
    let mut out = Lin::zero();
    for (j, c) in v {
        for (i, a) in &rows[*j] {
            out.add_term(*i, a * c);
        }
    }
    out
}

fn parity(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// The alternating-sum differential, evaluated pointwise.
pub fn ce_differential(w: &CeChain, m: &GModule) -> CeChain {
    let g = m.g();
    let cols = m.columns();
    let mut out = CeChain::zero(w.degree + 1);
    for t in g.basis().combinations(w.degree + 1) {
        let mut value = ModuleVector::zero();
        for (a, b) in (0..t.len()).tuple_combinations() {
            let rest: Vec<LieBasisIndex> =
                t.iter().enumerate().filter(|(k, _)| *k != a && *k != b).map(|(_, x)| *x).collect();
            for (k, c) in g.bracket_basis(t[a], t[b]) {
                let mut args = vec![*k];
                args.extend(&rest);
                value.add_scaled(&w.eval(args), &(&parity(a + b) * c));
            }
        }
        for a in 0..t.len() {
            let rest: Vec<LieBasisIndex> = t.iter().enumerate().filter(|(k, _)| *k != a).map(|(_, x)| *x).collect();
            value.add_scaled(&act(&cols[t[a].index()], &w.eval(rest)), &parity(a));
        }
        if !value.is_zero() {
            out.values.insert(t, value);
        }
    }
    out
}

/// Coordinates of `C^m`: tuple index times `dim M` plus module index.
struct Coordinates {
    tuples: Vec<Vec<LieBasisIndex>>,
    index: HashMap<Vec<LieBasisIndex>, usize>,
}

impl Coordinates {
    fn new(g: &LieAlgebraData, m: usize) -> Self {
        let tuples: Vec<Vec<LieBasisIndex>> = g.basis().combinations(m).collect();
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self { tuples, index }
    }
}

type Row = Vec<(usize, Rational)>;

/// The differential `C^m -> C^{m+1}` split by Cartan weight.
///
/// Each block holds the rows of one weight, with columns renumbered
/// locally. Without recorded weights everything lands in one block.
pub struct BlockedDifferential {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub blocks: Vec<(Option<Weight>, SparseMatrix)>,
}

impl BlockedDifferential {
    pub fn rank(&self) -> usize {
        self.blocks.par_iter().map(|(_, b)| rank(b)).sum()
    }
}

fn rows_of(m: &GModule, degree: usize) -> (Coordinates, Coordinates, Vec<Row>) {
    let g = m.g();
    let rho_rows = m.rows();
    let src = Coordinates::new(g, degree);
    let dst = Coordinates::new(g, degree + 1);
    let dim = m.dim();
    let rows: Vec<Row> = dst
        .tuples
        .par_iter()
        .flat_map_iter(|t| {
            let mut per_i: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); dim];
            for (a, b) in (0..t.len()).tuple_combinations() {
                let rest: Vec<LieBasisIndex> =
                    t.iter().enumerate().filter(|(k, _)| *k != a && *k != b).map(|(_, x)| *x).collect();
                for (k, c) in g.bracket_basis(t[a], t[b]) {
                    let mut args = vec![*k];
                    args.extend(&rest);
                    let Some((sorted, sign)) = sort_alternating(args) else { continue };
                    let base = src.index[&sorted] * dim;
                    let v = &parity(a + b) * c * Rational::from_integer(sign.into());
                    for (i, row) in per_i.iter_mut().enumerate() {
                        *row.entry(base + i).or_insert_with(Rational::zero) += &v;
                    }
                }
            }
            for a in 0..t.len() {
                let rest: Vec<LieBasisIndex> =
                    t.iter().enumerate().filter(|(k, _)| *k != a).map(|(_, x)| *x).collect();
                let base = src.index[&rest] * dim;
                let s = parity(a);
                for (i, row) in per_i.iter_mut().enumerate() {
                    for (j, v) in &rho_rows[t[a].index()][i] {
                        *row.entry(base + j).or_insert_with(Rational::zero) += &s * v;
                    }
                }
            }
            per_i.into_iter().map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect::<Row>())
        })
        .collect();
    (src, dst, rows)
}

/// The full matrix of `d: C^m -> C^{m+1}`.
pub fn ce_matrix(m: &GModule, degree: usize) -> SparseMatrix {
    let (src, _, rows) = rows_of(m, degree);
    let mut out = SparseMatrix::new(rows.len(), src.tuples.len() * m.dim());
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row {
            out.set(i, j, v);
        }
    }
    out
}

pub fn ce_blocked(m: &GModule, degree: usize) -> BlockedDifferential {
    let g = m.g();
    let (src, dst, rows) = rows_of(m, degree);
    let dim = m.dim();
    let cols = src.tuples.len() * dim;
    let n_rows = rows.len();
    let weight_of = |coords: &Coordinates, id: usize| -> Option<Weight> {
        let w = m.weights()?;
        let mut out = w[id % dim].clone();
        for b in &coords.tuples[id / dim] {
            for (acc, v) in out.iter_mut().zip(g.weight(*b)) {
                *acc -= v;
            }
        }
        Some(out)
    };
    let mut grouped: BTreeMap<Option<Weight>, Vec<Row>> = BTreeMap::new();
    for (i, row) in rows.into_iter().enumerate() {
        let w = weight_of(&dst, i);
        debug_assert!(row.iter().all(|(j, _)| weight_of(&src, *j) == w), "differential mixes weights");
        if !row.is_empty() {
            grouped.entry(w).or_default().push(row);
        }
    }
    let blocks = grouped
        .into_par_iter()
        .map(|(w, rows)| {
            let mut local: HashMap<usize, usize> = HashMap::new();
            for (j, _) in rows.iter().flatten() {
                let next = local.len();
                local.entry(*j).or_insert(next);
            }
            let mut b = SparseMatrix::new(rows.len(), local.len());
            for (i, row) in rows.into_iter().enumerate() {
                for (j, v) in row {
                    b.set(i, local[&j], v);
                }
            }
            (w, b)
        })
        .collect();
    BlockedDifferential { degree, rows: n_rows, cols, blocks }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn ce_chain_dim(m: &GModule, degree: usize) -> usize {
    binomial(m.g().dim(), degree) * m.dim()
}

/// How many coordinates of `C^m` carry each weight.
fn weight_counts(m: &GModule, degree: usize) -> BTreeMap<Option<Weight>, usize> {
    let g = m.g();
    let Some(weights) = m.weights() else {
        return BTreeMap::from([(None, ce_chain_dim(m, degree))]);
    };
    let mut out = BTreeMap::new();
    for t in g.basis().combinations(degree) {
        for w in weights {
            let mut w = w.clone();
            for b in &t {
                for (acc, v) in w.iter_mut().zip(g.weight(*b)) {
                    *acc -= v;
                }
            }
            *out.entry(Some(w)).or_insert(0) += 1;
        }
    }
    out
}

/// `dim H^k(g, M)` for `k = 0..=up_to`, by rank-nullity on each weight block.
///
/// Block ranks are first taken modulo a large prime. That never exceeds the
/// rational rank, and `rank d_{k-1} + rank d_k <= dim C^k` holds in every
/// weight, so a block whose modular ranks meet that bound is exact. Only the
/// remaining blocks are eliminated over the rationals.
pub fn ce_cohomology_dims(m: &GModule, up_to: usize) -> Vec<usize> {
    let diffs: Vec<BlockedDifferential> = (0..=up_to).into_par_iter().map(|k| ce_blocked(m, k)).collect();
    let modular: Vec<BTreeMap<Option<Weight>, Option<usize>>> = diffs
        .par_iter()
        .map(|d| d.blocks.par_iter().map(|(w, b)| (w.clone(), rank_mod_p(b))).collect())
        .collect();
    let counts: Vec<_> = (0..=up_to).map(|k| weight_counts(m, k)).collect();
    let known = |k: usize, w: &Option<Weight>| modular[k].get(w).copied().unwrap_or(Some(0));
    let mut exact: BTreeMap<(usize, Option<Weight>), bool> = BTreeMap::new();
    for k in 0..=up_to {
        for (w, dim) in &counts[k] {
            let below = if k == 0 { Some(0) } else { known(k - 1, w) };
            if let (Some(a), Some(b)) = (below, known(k, w)) {
                if a + b == *dim {
                    if k > 0 {
                        exact.insert((k - 1, w.clone()), true);
                    }
                    exact.insert((k, w.clone()), true);
                }
            }
        }
    }
    let ranks: Vec<usize> = diffs
        .par_iter()
        .enumerate()
        .map(|(k, d)| {
            d.blocks
                .par_iter()
                .map(|(w, b)| match modular[k][w] {
                    Some(r) if exact.contains_key(&(k, w.clone())) => r,
                    _ => rank(b),
                })
                .sum()
        })
        .collect();
    (0..=up_to)
        .map(|k| {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            ce_chain_dim(m, k) - ranks[k] - below
        })
        .collect()
}
