//! The simple Lie algebras `sl_n` in their matrix realization.
//!
//! Basis: `E_ji` (`i < j`) for the negative root vectors, `E_ii - E_{i+1,i+1}`
//! for the Cartan elements and `E_ij` (`i < j`) for the positive ones. The
//! invariant form is the trace form of the defining representation, so
//! `(E_ij, E_ji) = 1` and `t_i = [x_i^+, x_i^-]` is the `i`-th Cartan basis
//! vector. The index order of the basis is the PBW order used everywhere
//! downstream: negatives, then Cartan, then positives.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{int, rank, solve, Lin, Rational, SparseMatrix};

/// Index of a basis vector of `g`. The numeric order is the PBW order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct LieBasisIndex(pub u16);

impl LieBasisIndex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Which block of the triangular decomposition a basis vector lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisKind {
    /// Root vector `x_alpha^-` for the positive root with this index.
    Negative(usize),
    /// Cartan basis element `t_i`.
    Cartan(usize),
    /// Root vector `x_alpha^+`.
    Positive(usize),
}

pub type LieElement = Lin<LieBasisIndex, Rational>;

/// Root system bookkeeping for `sl_n`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub rank: usize,
    /// Positive roots as coefficient vectors in the simple roots, sorted by
    /// height, then by their leading simple root.
    pub positive_roots: Vec<Vec<i64>>,
    pub cartan_matrix: Vec<Vec<i64>>,
    /// `(x_alpha^+, x_alpha^-)` for every positive root.
    pub root_vectors: Vec<(LieBasisIndex, LieBasisIndex)>,
    /// `t_1, ..., t_r`.
    pub cartan: Vec<LieBasisIndex>,
    /// Position of `alpha_i` inside `positive_roots`.
    pub simple: Vec<usize>,
}

impl RootDatum {
    pub fn height(&self, root: usize) -> i64 {
        self.positive_roots[root].iter().sum()
    }
}

/// A fully tabulated `sl_n`: structure constants, Gram matrix of the trace
/// form and the Casimir tensor.
pub struct LieAlgebraData {
    n: usize,
    roots: RootDatum,
    kinds: Vec<BasisKind>,
    names: Vec<String>,
    brackets: Vec<Vec<LieElement>>,
    gram: Vec<Vec<Rational>>,
    casimir: Vec<(LieBasisIndex, LieBasisIndex, Rational)>,
    /// Eigenvalue of `ad(t_j)` on every basis vector.
    weights: Vec<Vec<i64>>,
}

impl fmt::Debug for LieAlgebraData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebraData(sl_{})", self.n)
    }
}

type Matrix = Vec<Vec<Rational>>;

fn mat_zero(n: usize) -> Matrix {
    vec![vec![Rational::zero(); n]; n]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = mat_zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    c
}

fn trace(a: &Matrix) -> Rational {
    (0..a.len()).fold(Rational::zero(), |acc, i| acc + &a[i][i])
}

impl LieAlgebraData {
    /// Builds `sl_n` with every table precomputed.
    pub fn sl(n: usize) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let r = n - 1;
        // positive roots alpha_i + ... + alpha_{j-1} <-> E_ij, i < j (0-based)
        let mut pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        pairs.sort_by_key(|&(i, j)| (j - i, i));
        let positive_roots: Vec<Vec<i64>> = pairs
            .iter()
            .map(|&(i, j)| (0..r).map(|k| i64::from(k >= i && k < j)).collect())
            .collect();
        let nroots = pairs.len();
        let dim = 2 * nroots + r;

        let mut mats: Vec<Matrix> = Vec::with_capacity(dim);
        let mut kinds = Vec::with_capacity(dim);
        let mut names = Vec::with_capacity(dim);
        let sl2 = n == 2;
        let label = |i: usize, j: usize| {
            if n < 10 {
                format!("{}{}", i + 1, j + 1)
            } else {
                format!("{}_{}", i + 1, j + 1)
            }
        };
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let mut m = mat_zero(n);
            m[j][i] = Rational::one();
            mats.push(m);
            kinds.push(BasisKind::Negative(k));
            names.push(if sl2 { "f".to_string() } else { format!("f{}", label(i, j)) });
        }
        for i in 0..r {
            let mut m = mat_zero(n);
            m[i][i] = Rational::one();
            m[i + 1][i + 1] = -Rational::one();
            mats.push(m);
            kinds.push(BasisKind::Cartan(i));
            names.push(if sl2 { "h".to_string() } else { format!("h{}", i + 1) });
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let mut m = mat_zero(n);
            m[i][j] = Rational::one();
            mats.push(m);
            kinds.push(BasisKind::Positive(k));
            names.push(if sl2 { "e".to_string() } else { format!("e{}", label(i, j)) });
        }

        // decomposition of a traceless matrix in the basis
        let decompose = |m: &Matrix| -> LieElement {
            let mut out = LieElement::zero();
            for (k, &(i, j)) in pairs.iter().enumerate() {
                out.add_term(LieBasisIndex(k as u16), m[j][i].clone());
                out.add_term(LieBasisIndex((nroots + r + k) as u16), m[i][j].clone());
            }
            let mut partial = Rational::zero();
            for i in 0..r {
                partial += &m[i][i];
                out.add_term(LieBasisIndex((nroots + i) as u16), partial.clone());
            }
            out
        };

        let brackets: Vec<Vec<LieElement>> = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| {
                        let ab = mat_mul(&mats[a], &mats[b]);
                        let ba = mat_mul(&mats[b], &mats[a]);
                        let comm: Matrix = ab
                            .iter()
                            .zip(&ba)
                            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
                            .collect();
                        decompose(&comm)
                    })
                    .collect()
            })
            .collect();
        let gram: Vec<Vec<Rational>> = (0..dim)
            .map(|a| (0..dim).map(|b| trace(&mat_mul(&mats[a], &mats[b]))).collect())
            .collect();

        // Omega = sum_{lambda,mu} (G^{-1})_{lambda mu} x_lambda (x) x_mu
        let gmat = SparseMatrix::from_dense(&gram);
        let mut casimir = Vec::new();
        for mu in 0..dim {
            let mut e = vec![Rational::zero(); dim];
            e[mu] = Rational::one();
            let col = solve(&gmat, &e)?.expect("trace form is nondegenerate on sl_n");
            for (lambda, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    casimir.push((LieBasisIndex(lambda as u16), LieBasisIndex(mu as u16), c));
                }
            }
        }
        casimir.sort();

        let cartan: Vec<LieBasisIndex> = (0..r).map(|i| LieBasisIndex((nroots + i) as u16)).collect();
        let weights: Vec<Vec<i64>> = (0..dim)
            .map(|b| {
                cartan
                    .iter()
                    .map(|t| {
                        let br = &brackets[t.index()][b];
                        let c = br.get(&LieBasisIndex(b as u16)).cloned().unwrap_or_else(Rational::zero);
                        debug_assert!(br.len() <= 1);
                        c.to_integer().try_into().expect("small weight")
                    })
                    .collect()
            })
            .collect();
        let cartan_matrix: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let v = &gram[cartan[i].index()][cartan[j].index()];
                        v.to_integer().try_into().unwrap()
                    })
                    .collect()
            })
            .collect();
        let root_vectors = (0..nroots)
            .map(|k| (LieBasisIndex((nroots + r + k) as u16), LieBasisIndex(k as u16)))
            .collect();
        let simple = (0..r)
            .map(|i| pairs.iter().position(|&p| p == (i, i + 1)).unwrap())
            .collect();

        Ok(Arc::new(Self {
            n,
            roots: RootDatum { rank: r, positive_roots, cartan_matrix, root_vectors, cartan, simple },
            kinds,
            names,
            brackets,
            gram,
            casimir,
            weights,
        }))
    }

    /// `n` of `sl_n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.roots.rank
    }

    pub fn dim(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_sl2(&self) -> bool {
        self.n == 2
    }

    /// `A1`, `A2`, ...
    pub fn type_name(&self) -> String {
        format!("A{}", self.rank())
    }

    pub fn roots(&self) -> &RootDatum {
        &self.roots
    }

    pub fn basis(&self) -> impl Iterator<Item = LieBasisIndex> + '_ {
        (0..self.dim()).map(|i| LieBasisIndex(i as u16))
    }

    pub fn kind(&self, b: LieBasisIndex) -> BasisKind {
        self.kinds[b.index()]
    }

    pub fn name(&self, b: LieBasisIndex) -> &str {
        &self.names[b.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<LieBasisIndex> {
        self.names.iter().position(|n| n == name).map(|i| LieBasisIndex(i as u16))
    }

    pub fn weight(&self, b: LieBasisIndex) -> &[i64] {
        &self.weights[b.index()]
    }

    /// `t_i` as an element.
    pub fn t(&self, i: usize) -> LieElement {
        LieElement::basis(self.roots.cartan[i])
    }

    /// `x_i^+` and `x_i^-` for the simple root `alpha_i`.
    pub fn simple_root_vectors(&self, i: usize) -> (LieBasisIndex, LieBasisIndex) {
        self.roots.root_vectors[self.roots.simple[i]]
    }

    pub fn is_cartan(&self, x: &LieElement) -> bool {
        x.keys().all(|b| matches!(self.kind(*b), BasisKind::Cartan(_)))
    }

    pub fn bracket_basis(&self, a: LieBasisIndex, b: LieBasisIndex) -> &LieElement {
        &self.brackets[a.index()][b.index()]
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                out.add_scaled(self.bracket_basis(*a, *b), &(ca * cb));
            }
        }
        out
    }

    pub fn form_basis(&self, a: LieBasisIndex, b: LieBasisIndex) -> &Rational {
        &self.gram[a.index()][b.index()]
    }

    /// Trace form `(x, y) = tr(xy)`.
    pub fn form(&self, x: &LieElement, y: &LieElement) -> Rational {
        let mut out = Rational::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                let g = self.form_basis(*a, *b);
                if !g.is_zero() {
                    out += ca * cb * g;
                }
            }
        }
        out
    }

    pub fn gram_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_dense(&self.gram)
    }

    /// The Casimir tensor as weighted pairs `(x_lambda, x_mu, c)`, with
    /// `Omega = sum c x_lambda (x) x_mu`.
    pub fn casimir_terms(&self) -> &[(LieBasisIndex, LieBasisIndex, Rational)] {
        &self.casimir
    }

    /// `alpha(h)` for the positive root with index `root` and `h` in the
    /// Cartan subalgebra.
    pub fn root_value(&self, root: usize, h: &LieElement) -> Result<Rational> {
        if !self.is_cartan(h) {
            return Err(Error::NotCartan(self.render(h)));
        }
        let (xp, _) = self.roots.root_vectors[root];
        let w = self.weight(xp);
        let mut out = Rational::zero();
        for (b, c) in h {
            let BasisKind::Cartan(i) = self.kind(*b) else { unreachable!() };
            out += c * int(w[i]);
        }
        Ok(out)
    }

    /// `(alpha_i, alpha_j)` for simple roots, i.e. `(t_i, t_j)`.
    pub fn simple_root_pairing(&self, i: usize, j: usize) -> Rational {
        int(self.roots.cartan_matrix[i][j])
    }

    /// `rho_ad(x)` as a `dim x dim` matrix acting on coordinate columns.
    pub fn ad_matrix(&self, x: LieBasisIndex) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.dim(), self.dim());
        for b in self.basis() {
            for (c, v) in self.bracket_basis(x, b) {
                m.set(c.index(), b.index(), v.clone());
            }
        }
        m
    }

    /// Eigenvalue of the quadratic Casimir on the adjoint module; errors out
    /// unless it acts by a scalar.
    pub fn casimir_adjoint_eigenvalue(&self) -> Result<Rational> {
        let mut value: Option<Rational> = None;
        for x in self.basis() {
            let xe = LieElement::basis(x);
            let mut cx = LieElement::zero();
            for (l, m, c) in &self.casimir {
                let inner = self.bracket(&LieElement::basis(*m), &xe);
                cx.add_scaled(&self.bracket(&LieElement::basis(*l), &inner), c);
            }
            let ev = cx.get(&x).cloned().unwrap_or_else(Rational::zero);
            if cx != xe.scale(&ev) {
                return Err(Error::NonScalarCasimir(format!(
                    "C . {} = {}",
                    self.name(x),
                    self.render(&cx)
                )));
            }
            match &value {
                None => value = Some(ev),
                Some(v) if *v != ev => {
                    return Err(Error::NonScalarCasimir(format!(
                        "eigenvalue {ev} on {} differs from {v}",
                        self.name(x)
                    )))
                }
                _ => {}
            }
        }
        Ok(value.expect("nonzero dimension"))
    }

    /// Matrix of `x -> [x (x) 1, Omega]` from `g` to `g (x) g`; injective for
    /// simple `g`.
    pub fn omega_commutator_matrix(&self) -> SparseMatrix {
        let d = self.dim();
        let mut m = SparseMatrix::new(d * d, d);
        for x in self.basis() {
            for (l, mu, c) in &self.casimir {
                for (b, v) in self.bracket_basis(x, *l) {
                    m.add_to(b.index() * d + mu.index(), x.index(), &(v * c));
                }
            }
        }
        m
    }

    /// Dimension of the kernel of [`Self::omega_commutator_matrix`].
    pub fn omega_commutator_kernel_dim(&self) -> usize {
        self.dim() - rank(&self.omega_commutator_matrix())
    }

    pub fn render(&self, x: &LieElement) -> String {
        crate::envelope::render::render_terms(
            x.iter().map(|(b, c)| (self.name(*b).to_string(), crate::exactnum::HPoly::constant(c.clone()))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn el(g: &LieAlgebraData, name: &str) -> LieElement {
        LieElement::basis(g.lookup(name).unwrap())
    }

    #[test]
    fn sl2_data() {
        let g = LieAlgebraData::sl(2).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.roots().positive_roots.len(), 1);
        let names: Vec<_> = g.basis().map(|b| g.name(b).to_string()).collect();
        assert_eq!(names, ["f", "h", "e"]);
        let (e, f, h) = (el(&g, "e"), el(&g, "f"), el(&g, "h"));
        assert_eq!(g.bracket(&e, &f), h);
        assert_eq!(g.bracket(&h, &e), e.scale(&int(2)));
        assert!(g.bracket(&e, &e).is_zero());
        assert_eq!(g.form(&e, &f), int(1));
        assert_eq!(g.form(&h, &h), int(2));
        assert_eq!(g.form(&e, &e), int(0));
    }

    #[test]
    fn sl3_sizes() {
        let g = LieAlgebraData::sl(3).unwrap();
        assert_eq!(g.dim(), 8);
        assert_eq!(g.roots().positive_roots.len(), 3);
        assert_eq!(g.roots().cartan_matrix, vec![vec![2, -1], vec![-1, 2]]);
        assert!(matches!(LieAlgebraData::sl(1), Err(Error::InvalidRank(1))));
    }

    #[test]
    fn casimir_sl2() {
        let g = LieAlgebraData::sl(2).unwrap();
        let (f, h, e) = (g.lookup("f").unwrap(), g.lookup("h").unwrap(), g.lookup("e").unwrap());
        let mut expected = vec![(f, e, int(1)), (h, h, rat(1, 2)), (e, f, int(1))];
        expected.sort();
        assert_eq!(g.casimir_terms(), expected.as_slice());
    }

    #[test]
    fn casimir_eigenvalues() {
        // oracle: c_g = 2n for the trace form, checked by hand for n = 2, 3
        assert_eq!(LieAlgebraData::sl(2).unwrap().casimir_adjoint_eigenvalue().unwrap(), int(4));
        assert_eq!(LieAlgebraData::sl(3).unwrap().casimir_adjoint_eigenvalue().unwrap(), int(6));
        assert_eq!(LieAlgebraData::sl(4).unwrap().casimir_adjoint_eigenvalue().unwrap(), int(8));
    }

    #[test]
    fn root_data_consistency() {
        for n in 2..=4 {
            let g = LieAlgebraData::sl(n).unwrap();
            let r = g.roots();
            assert_eq!(r.positive_roots.len(), n * (n - 1) / 2);
            for (xp, xm) in &r.root_vectors {
                assert_eq!(g.form_basis(*xp, *xm), &int(1));
            }
            for i in 0..g.rank() {
                let (xp, xm) = g.simple_root_vectors(i);
                assert_eq!(g.bracket_basis(xp, xm), &g.t(i));
            }
            // (h, t_i) = alpha_i(h)
            for i in 0..g.rank() {
                for j in 0..g.rank() {
                    let alpha_i = g.roots().simple[i];
                    assert_eq!(g.form(&g.t(j), &g.t(i)), g.root_value(alpha_i, &g.t(j)).unwrap());
                }
            }
        }
    }

    #[test]
    fn jacobi_invariance_nondegeneracy() {
        for n in 2..=3 {
            let g = LieAlgebraData::sl(n).unwrap();
            let basis: Vec<_> = g.basis().map(LieElement::basis).collect();
            for x in &basis {
                for y in &basis {
                    assert_eq!(g.bracket(x, y), -g.bracket(y, x));
                    assert_eq!(g.form(x, y), g.form(y, x));
                    for z in &basis {
                        let j = &(&g.bracket(&g.bracket(x, y), z) + &g.bracket(&g.bracket(y, z), x))
                            + &g.bracket(&g.bracket(z, x), y);
                        assert!(j.is_zero());
                        assert_eq!(g.form(&g.bracket(x, y), z), g.form(x, &g.bracket(y, z)));
                    }
                }
            }
            assert_eq!(rank(&g.gram_matrix()), g.dim());
        }
    }

    #[test]
    fn omega_commutator_is_injective() {
        for n in 2..=4 {
            assert_eq!(LieAlgebraData::sl(n).unwrap().omega_commutator_kernel_dim(), 0);
        }
    }

    #[test]
    fn root_value_rejects_non_cartan() {
        let g = LieAlgebraData::sl(2).unwrap();
        assert!(matches!(g.root_value(0, &el(&g, "e")), Err(Error::NotCartan(_))));
        assert_eq!(g.root_value(0, &el(&g, "h")).unwrap(), int(2));
    }
}
