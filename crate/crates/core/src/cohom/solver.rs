//! Constructive solution of `dh(phi) = gamma`, `dv(phi) = eta`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::bicomplex::{Bicomplex, Cochain, Coord};
use super::module::Weight;
use crate::envelope::{Monomial, QTensor};
use crate::error::{Error, Result};
use crate::exactnum::{solve, Lin, Rational, SparseMatrix};
use crate::fault::Fault;
use crate::liealg::LieBasisIndex;

/// The three stages of the construction: `phi = psi + theta`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub psi: Cochain,
    pub theta: Cochain,
    pub phi: Cochain,
}

/// Equation rows are tagged so that stacked systems keep their blocks apart.
type RowKey = (u8, Coord);

/// Solves `sum_j x_j columns[j] = rhs` one Cartan weight at a time, with
/// free variables set to zero.
fn blocked_solve(
    columns: &[(Weight, Lin<RowKey, Rational>)],
    rhs: &Lin<RowKey, Rational>,
    row_weight: impl Fn(&RowKey) -> Weight,
) -> Result<Option<Vec<Rational>>> {
    let mut by_weight: BTreeMap<&Weight, Vec<usize>> = BTreeMap::new();
    for (j, (w, _)) in columns.iter().enumerate() {
        by_weight.entry(w).or_default().push(j);
    }
    let mut rhs_by_weight: BTreeMap<Weight, Vec<(&RowKey, &Rational)>> = BTreeMap::new();
    for (k, c) in rhs {
        rhs_by_weight.entry(row_weight(k)).or_default().push((k, c));
    }
    if rhs_by_weight.keys().any(|w| !by_weight.contains_key(w)) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); columns.len()];
    for (w, cols) in by_weight {
        let mut rows: HashMap<&RowKey, usize> = HashMap::new();
        let mut order: Vec<&RowKey> = Vec::new();
        let part = rhs_by_weight.get(w).map(Vec::as_slice).unwrap_or(&[]);
        for k in cols.iter().flat_map(|j| columns[*j].1.keys()).chain(part.iter().map(|(k, _)| *k)) {
            if !rows.contains_key(k) {
                rows.insert(k, order.len());
                order.push(k);
            }
        }
        let mut a = SparseMatrix::new(order.len(), cols.len());
        for (local, j) in cols.iter().enumerate() {
            for (k, c) in &columns[*j].1 {
                a.set(rows[k], local, c.clone());
            }
        }
        let mut b = vec![Rational::zero(); order.len()];
        for (k, c) in part {
            b[rows[k]] = (*c).clone();
        }
        let Some(sol) = solve(&a, &b)? else { return Ok(None) };
        for (local, j) in cols.iter().enumerate() {
            x[*j] = sol[local].clone();
        }
    }
    Ok(Some(x))
}

fn tagged(tag: u8, w: &Cochain) -> Lin<RowKey, Rational> {
    w.coords().into_iter().map(|(k, c)| ((tag, k), c)).collect()
}

fn require(ok: bool, equation: &'static str, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition { equation, detail: detail() })
    }
}

/// Checks the compatibility conditions on `(gamma, eta)`.
pub fn check_preconditions(bc: &Bicomplex, gamma: &Cochain, eta: &Cochain) -> Result<()> {
    let g = bc.g();
    if (gamma.m, gamma.n) != (1, 1) || (eta.m, eta.n) != (0, 2) {
        return Err(Error::DimensionMismatch(format!(
            "gamma must lie in K^(1,1) and eta in K^(0,2), got ({}, {}) and ({}, {})",
            gamma.m, gamma.n, eta.m, eta.n
        )));
    }
    for w in [gamma, eta] {
        if w.filtration_degree() > bc.degree() {
            return Err(Error::OutsideTruncation(bc.degree()));
        }
    }
    let dh_gamma = bc.dh(gamma);
    require(dh_gamma.is_zero(), "dh(gamma) = 0", || dh_gamma.render(g))?;
    let dv_eta = bc.dv(eta);
    require(dv_eta.is_zero(), "dv(eta) = 0", || dv_eta.render(g))?;
    let mixed = bc.dv(gamma).sub(&bc.dh(eta))?;
    require(mixed.is_zero(), "dv(gamma) = dh(eta)", || mixed.render(g))?;
    let asym = eta.sub(&eta.flip())?;
    require(asym.is_zero(), "eta = eta^21", || asym.render(g))
}

struct Unknowns {
    keys: Vec<(LieBasisIndex, Monomial<LieBasisIndex>)>,
    weights: Vec<Weight>,
}

impl Unknowns {
    fn new(bc: &Bicomplex) -> Self {
        let mut keys = Vec::new();
        for v in bc.g().basis() {
            for m in bc.slice_basis() {
                keys.push((v, m));
            }
        }
        let weights = keys.iter().map(|(v, m)| bc.coord_weight(&(Vec::new(), *v, vec![m.clone()]))).collect();
        Self { keys, weights }
    }

    fn assemble(&self, bc: &Bicomplex, x: &[Rational]) -> Cochain {
        let mut out = Cochain::zero(0, 1, bc.degree());
        for ((v, m), c) in self.keys.iter().zip(x) {
            if !c.is_zero() {
                out.add(Vec::new(), *v, &QTensor::pure(vec![m.clone()], c.clone()));
            }
        }
        out
    }
}

/// Runs the three stages without re-substituting the answer.
///
/// `Fault::EquivariantShift` adds `v -> coefficient of the first basis
/// vector` to `theta`; that map is primitive but not `g`-equivariant.
pub fn solve_correction_steps(bc: &Bicomplex, gamma: &Cochain, eta: &Cochain, fault: Option<Fault>) -> Result<Solution> {
    check_preconditions(bc, gamma, eta)?;
    let g = bc.g();
    let unknowns = Unknowns::new(bc);
    let weight = |k: &RowKey| bc.coord_weight(&k.1);
    let basis: Vec<Cochain> = unknowns.keys.iter().map(|(v, m)| bc.elementary(*v, m.clone())).collect();
    let dh_cols: Vec<Lin<RowKey, Rational>> = basis.iter().map(|b| tagged(0, &bc.dh(b))).collect();
    let dv_cols: Vec<Lin<RowKey, Rational>> = basis.iter().map(|b| tagged(1, &bc.dv(b))).collect();

    // dh(psi) = gamma
    let cols: Vec<(Weight, Lin<RowKey, Rational>)> =
        unknowns.weights.iter().cloned().zip(dh_cols.iter().cloned()).collect();
    let x = blocked_solve(&cols, &tagged(0, gamma), weight)?.ok_or(Error::NoSolution(bc.degree()))?;
    let psi = unknowns.assemble(bc, &x);

    // eta_1 = eta - dv(psi) is an equivariant cocycle
    let eta1 = eta.sub(&bc.dv(&psi))?;
    let dh_eta1 = bc.dh(&eta1);
    require(dh_eta1.is_zero(), "dh(eta - dv(psi)) = 0", || dh_eta1.render(g))?;
    let dv_eta1 = bc.dv(&eta1);
    require(dv_eta1.is_zero(), "dv(eta - dv(psi)) = 0", || dv_eta1.render(g))?;

    // dv(theta) = eta_1 with dh(theta) = 0
    let cols: Vec<(Weight, Lin<RowKey, Rational>)> = unknowns
        .weights
        .iter()
        .cloned()
        .zip(dv_cols.iter().zip(&dh_cols).map(|(v, h)| v + h))
        .collect();
    let x = blocked_solve(&cols, &tagged(1, &eta1), weight)?.ok_or(Error::NoSolution(bc.degree()))?;
    let mut theta = unknowns.assemble(bc, &x);
    if fault == Some(Fault::EquivariantShift) {
        if let Some(v) = g.basis().next() {
            theta.add(Vec::new(), v, &QTensor::pure(vec![Monomial::letter(v)], Rational::from_integer(1.into())));
        }
    }
    let phi = psi.add_cochain(&theta)?;
    Ok(Solution { psi, theta, phi })
}

/// `None` when `phi` solves both equations, otherwise the failing equation
/// with its residual.
pub fn residual(bc: &Bicomplex, gamma: &Cochain, eta: &Cochain, phi: &Cochain) -> Result<Option<(&'static str, String)>> {
    let rh = bc.dh(phi).sub(gamma)?;
    if !rh.is_zero() {
        return Ok(Some(("dh(phi) = gamma", rh.render(bc.g()))));
    }
    let rv = bc.dv(phi).sub(eta)?;
    if !rv.is_zero() {
        return Ok(Some(("dv(phi) = eta", rv.render(bc.g()))));
    }
    Ok(None)
}

/// The correction `phi` with `dh(phi) = gamma` and `dv(phi) = eta`; the
/// answer is re-substituted before it is returned.
pub fn solve_correction(bc: &Bicomplex, gamma: &Cochain, eta: &Cochain) -> Result<Cochain> {
    let sol = solve_correction_steps(bc, gamma, eta, None)?;
    if let Some((equation, detail)) = residual(bc, gamma, eta, &sol.phi)? {
        return Err(Error::Postcondition { equation, detail });
    }
    Ok(sol.phi)
}

/// `Some(lambda)` when `a = lambda * id_g`.
pub fn identity_multiple(bc: &Bicomplex, a: &Cochain) -> Option<Rational> {
    let first = bc.g().basis().next()?;
    let lambda = a
        .eval(Vec::new(), first)
        .terms()
        .get(&vec![Monomial::letter(first)])
        .cloned()
        .unwrap_or_else(Rational::zero);
    a.sub(&bc.identity().scale(&lambda)).ok()?.is_zero().then_some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::Envelope;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sl2() -> Bicomplex {
        Bicomplex::new(Envelope::sl(2).unwrap(), 2)
    }

    #[test]
    fn zero_data_gives_zero() {
        let bc = sl2();
        let phi = solve_correction(&bc, &Cochain::zero(1, 1, 2), &Cochain::zero(0, 2, 2)).unwrap();
        assert!(phi.is_zero());
    }

    #[test]
    fn recovers_random_map_up_to_identity() {
        let bc = sl2();
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let phi0 = bc.random_map(&mut rng);
            let phi = solve_correction(&bc, &bc.dh(&phi0), &bc.dv(&phi0)).unwrap();
            assert!(identity_multiple(&bc, &phi.sub(&phi0).unwrap()).is_some());
        }
    }

    #[test]
    fn violated_preconditions_are_named() {
        let bc = sl2();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let phi0 = bc.random_map(&mut rng);
        let gamma = bc.dh(&phi0);
        let eta = bc.dv(&phi0);
        // an arbitrary (1,1) cochain is not a horizontal cocycle
        let bad_gamma = gamma.add_cochain(&bc.random_cochain(1, 1, &mut rng)).unwrap();
        assert!(matches!(
            solve_correction(&bc, &bad_gamma, &eta),
            Err(Error::Precondition { equation: "dh(gamma) = 0", .. })
        ));
        // breaking the symmetry of eta
        let g = bc.g();
        let (e, f) = (g.lookup("e").unwrap(), g.lookup("f").unwrap());
        let mut skew = Cochain::zero(0, 2, 2);
        let t = QTensor::pure(vec![Monomial::letter(e), Monomial::letter(f)], Rational::from_integer(1.into()))
            .sub(&QTensor::pure(vec![Monomial::letter(f), Monomial::letter(e)], Rational::from_integer(1.into())))
            .unwrap();
        skew.add(Vec::new(), e, &t);
        let r = solve_correction(&bc, &gamma, &eta.add_cochain(&skew).unwrap());
        assert!(matches!(r, Err(Error::Precondition { .. })), "{r:?}");
        let mut outside = Cochain::zero(1, 1, 2);
        outside.add(vec![e], e, &QTensor::pure(vec![Monomial::from_sorted(vec![e, e, e])], Rational::from_integer(1.into())));
        assert!(matches!(solve_correction(&bc, &outside, &eta), Err(Error::OutsideTruncation(2))));
    }

    #[test]
    fn equivariant_shift_breaks_the_horizontal_equation() {
        let bc = sl2();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let phi0 = bc.random_map(&mut rng);
        let (gamma, eta) = (bc.dh(&phi0), bc.dv(&phi0));
        let sol = solve_correction_steps(&bc, &gamma, &eta, Some(Fault::EquivariantShift)).unwrap();
        let r = residual(&bc, &gamma, &eta, &sol.phi).unwrap();
        assert_eq!(r.map(|x| x.0), Some("dh(phi) = gamma"));
    }
}
