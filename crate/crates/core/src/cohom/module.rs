//! Finite-dimensional `g`-modules given by action matrices.

use std::sync::Arc;

use itertools::Itertools;

use crate::envelope::{Envelope, Monomial, PbwMonomial};
use crate::error::{Error, Result};
use crate::exactnum::{Rational, SparseMatrix};
use crate::liealg::{BasisKind, LieAlgebraData, LieBasisIndex, LieElement};

pub type Weight = Vec<i64>;

/// A representation `rho` of `g`; `action[x]` is `rho(x)` acting on
/// coordinate columns.
#[derive(Clone, Debug)]
pub struct GModule {
    g: Arc<LieAlgebraData>,
    dim: usize,
    action: Vec<SparseMatrix>,
    weights: Option<Vec<Weight>>,
    name: String,
}

impl GModule {
    /// Wraps explicit action matrices after checking the representation
    /// property on all basis pairs. Weights are read off when every Cartan
    /// matrix is diagonal with integer entries.
    pub fn from_matrices(g: Arc<LieAlgebraData>, action: Vec<SparseMatrix>, name: impl Into<String>) -> Result<Self> {
        if action.len() != g.dim() {
            return Err(Error::DimensionMismatch(format!("{} action matrices for dim g = {}", action.len(), g.dim())));
        }
        let dim = action.first().map_or(0, SparseMatrix::rows);
        if let Some(bad) = action.iter().find(|a| a.rows() != dim || a.cols() != dim) {
            return Err(Error::DimensionMismatch(format!("{}x{} action matrix in a module of dim {dim}", bad.rows(), bad.cols())));
        }
        let weights = infer_weights(&g, &action, dim);
        let m = Self { g, dim, action, weights, name: name.into() };
        m.check_representation()?;
        Ok(m)
    }

    pub fn trivial(g: Arc<LieAlgebraData>) -> Self {
        let action = vec![SparseMatrix::new(1, 1); g.dim()];
        let weights = Some(vec![vec![0; g.rank()]]);
        Self { g, dim: 1, action, weights, name: "trivial".into() }
    }

    pub fn adjoint(g: Arc<LieAlgebraData>) -> Self {
        let action = g.basis().map(|x| g.ad_matrix(x)).collect();
        let weights = Some(g.basis().map(|b| g.weight(b).to_vec()).collect());
        Self { dim: g.dim(), action, weights, name: "adjoint".into(), g }
    }

    /// The contragredient module, `rho*(x) = -rho(x)^T`.
    pub fn dual(m: &GModule) -> Self {
        let action = m
            .action
            .iter()
            .map(|a| {
                let mut t = SparseMatrix::new(m.dim, m.dim);
                for ((i, j), v) in a.entries() {
                    t.set(j, i, -v);
                }
                t
            })
            .collect();
        let weights = m.weights.as_ref().map(|w| w.iter().map(|x| x.iter().map(|c| -c).collect()).collect());
        Self { g: m.g.clone(), dim: m.dim, action, weights, name: format!("dual({})", m.name) }
    }

    /// `M (x) N` with basis `e_a (x) f_b` at index `a * dim N + b`.
    pub fn tensor(m: &GModule, n: &GModule) -> Self {
        let dim = m.dim * n.dim;
        let action = m
            .action
            .iter()
            .zip(&n.action)
            .map(|(a, b)| {
                let mut t = SparseMatrix::new(dim, dim);
                for ((i, j), v) in a.entries() {
                    for k in 0..n.dim {
                        t.add_to(i * n.dim + k, j * n.dim + k, v);
                    }
                }
                for ((i, j), v) in b.entries() {
                    for k in 0..m.dim {
                        t.add_to(k * n.dim + i, k * n.dim + j, v);
                    }
                }
                t
            })
            .collect();
        let weights = match (&m.weights, &n.weights) {
            (Some(wm), Some(wn)) => Some(
                wm.iter()
                    .cartesian_product(wn)
                    .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                    .collect(),
            ),
            _ => None,
        };
        Self { g: m.g.clone(), dim, action, weights, name: format!("{} (x) {}", m.name, n.name) }
    }

    /// `U(g)_{<= d}` under the adjoint action, on the PBW monomials of
    /// degree at most `d` in [`pbw_basis`] order.
    pub fn pbw_slice(env: &Envelope, d: usize) -> Self {
        let g = env.g().clone();
        let basis = pbw_basis(&g, d);
        let index: std::collections::HashMap<&PbwMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let action = g
            .basis()
            .map(|x| {
                let x = LieElement::basis(x);
                let mut t = SparseMatrix::new(basis.len(), basis.len());
                for (j, m) in basis.iter().enumerate() {
                    let image = env.adjoint_action::<Rational>(&x, &Lin1::basis(m.clone()));
                    for (k, c) in &image {
                        t.set(index[k], j, c.clone());
                    }
                }
                t
            })
            .collect();
        let weights = Some(basis.iter().map(|m| monomial_weight(&g, m)).collect());
        Self { dim: basis.len(), action, weights, name: format!("U<={d}"), g }
    }

    pub fn g(&self) -> &Arc<LieAlgebraData> {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn action(&self, x: LieBasisIndex) -> &SparseMatrix {
        &self.action[x.index()]
    }

    pub fn weights(&self) -> Option<&[Weight]> {
        self.weights.as_deref()
    }

    /// `rho(x) e_j` as sparse column entries.
    pub(crate) fn columns(&self) -> Vec<Vec<Vec<(usize, Rational)>>> {
        self.action
            .iter()
            .map(|a| {
                let mut cols = vec![Vec::new(); self.dim];
                for ((i, j), v) in a.entries() {
                    cols[j].push((i, v.clone()));
                }
                cols
            })
            .collect()
    }

    /// Row `i` of `rho(x)`: `(rho(x) v)_i = sum_j rows[x][i][j] v_j`.
    pub(crate) fn rows(&self) -> Vec<Vec<Vec<(usize, Rational)>>> {
        self.action
            .iter()
            .map(|a| {
                let mut rows = vec![Vec::new(); self.dim];
                for ((i, j), v) in a.entries() {
                    rows[i].push((j, v.clone()));
                }
                rows
            })
            .collect()
    }

    /// `rho([x,y]) = [rho(x), rho(y)]` on every basis pair.
    pub fn check_representation(&self) -> Result<()> {
        for (x, y) in self.g.basis().collect::<Vec<_>>().into_iter().tuple_combinations() {
            let lhs = self.rho(self.g.bracket_basis(x, y));
            let (a, b) = (&self.action[x.index()], &self.action[y.index()]);
            let ab = a.mul(b)?;
            let ba = b.mul(a)?;
            let mut rhs = ab;
            for ((i, j), v) in ba.entries() {
                rhs.add_to(i, j, &-v);
            }
            if lhs != rhs {
                return Err(Error::Precondition {
                    equation: "rho([x,y]) = [rho(x), rho(y)]",
                    detail: format!("fails for ({}, {}) in {}", self.g.name(x), self.g.name(y), self.name),
                });
            }
        }
        Ok(())
    }

    /// `rho(x)` for a general element.
    pub fn rho(&self, x: &LieElement) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.dim, self.dim);
        for (b, c) in x {
            for ((i, j), v) in self.action[b.index()].entries() {
                out.add_to(i, j, &(c * v));
            }
        }
        out
    }
}

type Lin1 = crate::exactnum::Lin<PbwMonomial, Rational>;

/// PBW monomials of degree at most `d`, by degree and then lexicographically.
pub fn pbw_basis(g: &LieAlgebraData, d: usize) -> Vec<PbwMonomial> {
    (0..=d)
        .flat_map(|k| {
            g.basis().combinations_with_replacement(k).map(Monomial::from_sorted).collect::<Vec<_>>()
        })
        .collect()
}

pub fn monomial_weight(g: &LieAlgebraData, m: &PbwMonomial) -> Weight {
    let mut w = vec![0; g.rank()];
    for b in m.letters() {
        for (acc, v) in w.iter_mut().zip(g.weight(*b)) {
            *acc += v;
        }
    }
    w
}

fn infer_weights(g: &LieAlgebraData, action: &[SparseMatrix], dim: usize) -> Option<Vec<Weight>> {
    let mut w = vec![vec![0; g.rank()]; dim];
    for b in g.basis() {
        let BasisKind::Cartan(k) = g.kind(b) else { continue };
        for ((i, j), v) in action[b.index()].entries() {
            if i != j || !v.is_integer() {
                return None;
            }
            w[i][k] = v.to_integer().try_into().ok()?;
        }
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_are_representations() {
        for n in [2, 3] {
            let env = Envelope::sl(n).unwrap();
            let g = env.g().clone();
            let ad = GModule::adjoint(g.clone());
            ad.check_representation().unwrap();
            GModule::dual(&ad).check_representation().unwrap();
            GModule::tensor(&ad, &GModule::dual(&ad)).check_representation().unwrap();
            let u = GModule::pbw_slice(&env, 2);
            u.check_representation().unwrap();
            assert_eq!(u.dim(), 1 + g.dim() + g.dim() * (g.dim() + 1) / 2);
        }
    }

    #[test]
    fn recorded_weights_match_cartan_action() {
        let env = Envelope::sl(3).unwrap();
        let ad = GModule::adjoint(env.g().clone());
        let m = GModule::tensor(&GModule::dual(&ad), &GModule::pbw_slice(&env, 2));
        let inferred = infer_weights(m.g(), &m.action, m.dim()).unwrap();
        assert_eq!(m.weights().unwrap(), inferred.as_slice());
    }

    #[test]
    fn broken_action_is_rejected() {
        let g = LieAlgebraData::sl(2).unwrap();
        let mut action: Vec<SparseMatrix> = g.basis().map(|x| g.ad_matrix(x)).collect();
        action[0] = SparseMatrix::identity(3);
        assert!(matches!(GModule::from_matrices(g, action, "broken"), Err(Error::Precondition { .. })));
    }
}
