//! Verification suites for the cohomological input.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::bicomplex::{Bicomplex, Cochain};
use super::ce::{ce_cohomology_dims, ce_differential};
use super::cobar::cartier_check;
use super::module::GModule;
use super::random_ce_chain;
use super::solver::{identity_multiple, residual, solve_correction_steps};
use crate::envelope::{Envelope, PbwMonomial, QTensor};
use crate::error::{Error, Result};
use crate::exactnum::{HPoly, Lin, Rational};
use crate::fault::Fault;
use crate::freequant::{FmElement, FmTensor, FreeModel};
use crate::liealg::LieElement;
use crate::report::{Check, CheckSet, Report};

/// The modules whose low cohomology is checked for a given slice bound.
pub fn whitehead_modules(env: &Envelope, max_degree: usize) -> Vec<GModule> {
    let g = env.g().clone();
    let ad = GModule::adjoint(g.clone());
    let ad_dual = GModule::dual(&ad);
    let mut out = vec![GModule::trivial(g), ad.clone(), GModule::tensor(&ad, &ad)];
    for d in 1..=max_degree {
        out.push(GModule::tensor(&ad_dual, &GModule::pbw_slice(env, d)));
    }
    out
}

/// `H^1 = H^2 = 0` for each module, `H^0 = 1` for the trivial one, and
/// `d^2 = 0` on seeded random chains.
pub fn verify_whitehead(env: &Arc<Envelope>, max_degree: usize, seed: u64) -> Report {
    let modules = whitehead_modules(env, max_degree);
    let checks: Vec<Check> = modules
        .par_iter()
        .flat_map_iter(|m| {
            let dims = ce_cohomology_dims(m, 2);
            let name = m.name().to_string();
            let mut out = Vec::new();
            if name == "trivial" {
                out.push(Check::boolean("H0/trivial", "invariants of the trivial module", dims[0] == 1, || {
                    format!("dim H^0 = {}", dims[0])
                }));
            }
            for k in [1, 2] {
                out.push(Check::boolean(
                    format!("H{k}/{name}"),
                    format!("H^{k}(g, M) = 0 for finite-dimensional M"),
                    dims[k] == 0,
                    || format!("dim H^{k} = {}", dims[k]),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bad: Vec<usize> = (0..=2)
                .filter(|deg| {
                    let w = random_ce_chain(m, *deg, &mut rng);
                    !ce_differential(&ce_differential(&w, m), m).is_zero()
                })
                .collect();
            out.push(Check::boolean(format!("d-squared/{name}"), "d_CE o d_CE = 0", bad.is_empty(), || {
                format!("nonzero in degrees {bad:?}")
            }));
            out
        })
        .collect();
    let mut r = Report::new("whitehead", env.g().type_name(), checks);
    r.seed = seed;
    r
}

/// Cartier vanishing for `Sym(V)` with `dim V` in `v_dims`.
pub fn verify_cartier(v_dims: &[usize], d_max: usize) -> Report {
    let checks = v_dims.par_iter().flat_map_iter(|v| cartier_check(*v, d_max).checks).collect();
    Report::new("cartier", format!("Sym(V), dim V in {v_dims:?}"), checks)
}

pub const BIDEGREES: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2)];

/// Both differentials square to zero and commute on `samples` seeded
/// random cochains spread over [`BIDEGREES`].
pub fn verify_bicomplex(bc: &Bicomplex, samples: usize, seed: u64) -> Report {
    let g = bc.g();
    let per: Vec<Vec<Cochain>> = {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut per = vec![Vec::new(); BIDEGREES.len()];
        for k in 0..samples {
            let (m, n) = BIDEGREES[k % BIDEGREES.len()];
            per[k % BIDEGREES.len()].push(bc.random_cochain(m, n, &mut rng));
        }
        per
    };
    let per = &per;
    let mut set = CheckSet::new();
    for (k, (m, n)) in BIDEGREES.into_iter().enumerate() {
        let first = move |f: &(dyn Fn(&Cochain) -> Option<Cochain> + Sync)| {
            per[k].iter().enumerate().find_map(|(i, w)| f(w).map(|r| format!("sample {i}: {}", r.render(g))))
        };
        set.residual(format!("dh-dh/({m},{n})"), "dh o dh = 0", move || {
            first(&|w| Some(bc.dh(&bc.dh(w))).filter(|r| !r.is_zero()))
        });
        set.residual(format!("dv-dv/({m},{n})"), "dv o dv = 0", move || {
            first(&|w| Some(bc.dv(&bc.dv(w))).filter(|r| !r.is_zero()))
        });
        set.residual(format!("commute/({m},{n})"), "dh o dv = dv o dh", move || {
            first(&|w| Some(bc.dh(&bc.dv(w)).sub(&bc.dv(&bc.dh(w))).expect("same bidegree")).filter(|r| !r.is_zero()))
        });
    }
    set.residual("dv-box/(0,1)", "dv(psi)(x) = (box - Delta)(psi(x))", move || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = bc.random_map(&mut rng);
        let d = bc.dv(&psi);
        let env = bc.env();
        g.basis().find_map(|v| {
            let u: Lin<PbwMonomial, Rational> =
                psi.eval(Vec::new(), v).iter().map(|(s, c)| (s[0].clone(), c.clone())).collect();
            let expected = env.box_n(&u, 2).sub(&env.coproduct(&u)).expect("arity two");
            (d.eval(Vec::new(), v) != expected).then(|| format!("at {}", g.name(v)))
        })
    });
    set.residual("intertwiner/(0,n)", "dh(w) = 0 iff w is a g-intertwiner", move || {
        let env = bc.env();
        let mut casimir = Cochain::zero(0, 2, bc.degree());
        for v in g.basis() {
            casimir.add(Vec::new(), v, &env.omega_commutator::<Rational>(&LieElement::basis(v)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = Vec::new();
        for (name, w, equivariant) in [
            ("identity", bc.identity(), true),
            ("omega-commutator", casimir.clone(), true),
            ("random (0,1)", bc.random_map(&mut rng), false),
            ("perturbed", casimir.add_cochain(&bc.random_cochain(0, 2, &mut rng)).expect("bidegree"), false),
        ] {
            if bc.dh(&w).is_zero() != is_intertwiner(bc, &w) || is_intertwiner(bc, &w) != equivariant {
                bad.push(name);
            }
        }
        (!bad.is_empty()).then(|| format!("mismatch for {bad:?}"))
    });
    let mut r = Report::new("bicomplex", format!("{}, D = {}", g.type_name(), bc.degree()), set.run());
    r.seed = seed;
    r
}

/// `x . w(v) = w([x, v])` on every basis pair.
fn is_intertwiner(bc: &Bicomplex, w: &Cochain) -> bool {
    let g = bc.g();
    g.basis().all(|x| {
        g.basis().all(|v| {
            let lhs = bc.act(x, &w.eval(Vec::new(), v));
            let mut rhs = QTensor::zero(w.n);
            for (k, c) in g.bracket_basis(x, v) {
                rhs.add_scaled(&w.eval(Vec::new(), *k), c).expect("arity");
            }
            lhs == rhs
        })
    })
}

fn to_q(fm: &FreeModel, a: &FmElement) -> Result<Lin<PbwMonomial, Rational>> {
    let mut out = Lin::zero();
    for (w, c) in a {
        let c = c.as_constant().filter(|_| w.j.is_empty()).ok_or_else(|| Error::Precondition {
            equation: "lift data lies in hbar U(g)",
            detail: fm.render(a),
        })?;
        out.add_term(w.i.clone(), c);
    }
    Ok(out)
}

fn to_q_tensor(fm: &FreeModel, t: &FmTensor) -> Result<QTensor> {
    let mut out = QTensor::zero(t.arity());
    for (slots, c) in t.iter() {
        let c = c.as_constant().filter(|_| slots.iter().all(|w| w.j.is_empty())).ok_or_else(|| {
            Error::Precondition { equation: "lift data lies in hbar U(g)^(x)2", detail: fm.render_tensor(t) }
        })?;
        out.add_term(slots.iter().map(|w| w.i.clone()).collect(), c);
    }
    Ok(out)
}

/// `gamma` and `eta` of the lift `f = J + hbar * I(b(x))`, read off from
/// `f([x,y]) = [x, f(y)] + hbar gamma(x, y)` and
/// `Delta(f(x)) = box(f(x)) + hbar/2 [x (x) 1, Omega] + hbar eta(x)`.
pub fn lift_data(fm: &FreeModel, bc: &Bicomplex, b: &Cochain) -> Result<(Cochain, Cochain)> {
    let g = fm.g();
    let f = |x: &LieElement| -> FmElement {
        let mut out = fm.j_lie(x);
        for (k, c) in x {
            let bx: Lin<PbwMonomial, HPoly> =
                b.eval(Vec::new(), *k).iter().map(|(s, r)| (s[0].clone(), HPoly::monomial(1, r * c))).collect();
            out += &fm.from_u(&bx);
        }
        out
    };
    let div = |a: &FmElement| -> FmElement { a.map_coeffs(|c| c.div_hbar(1).expect("divisible by hbar")) };
    let mut gamma = Cochain::zero(1, 1, bc.degree());
    let mut eta = Cochain::zero(0, 2, bc.degree());
    for x in g.basis() {
        let xl = LieElement::basis(x);
        for y in g.basis() {
            let lhs = f(g.bracket_basis(x, y));
            let rhs = fm.bracket(&fm.iota(x), &f(&LieElement::basis(y)));
            let q = to_q(fm, &div(&(&lhs - &rhs)))?;
            gamma.add(vec![x], y, &QTensor::from_terms(1, q.into_iter().map(|(m, c)| (vec![m], c)).collect()));
        }
        let fx = f(&xl);
        let mut d = fm.coproduct_defect(&fx);
        d.add_scaled(&fm.omega_commutator(&xl), &HPoly::monomial(1, Rational::new((-1).into(), 2.into())))?;
        let d = d.map_coeffs(|c| c.div_hbar(1).expect("divisible by hbar"));
        eta.add(Vec::new(), x, &to_q_tensor(fm, &d)?);
    }
    Ok((gamma, eta))
}

/// For each seed, a random `phi_0` gives `gamma = dh(phi_0)`,
/// `eta = dv(phi_0)`; the returned `phi` must satisfy both equations and
/// differ from `phi_0` by a multiple of the identity. Also covers zero
/// data and the data read off from a shifted lift in the free model.
pub fn verify_solver(bc: &Bicomplex, seeds: std::ops::Range<u64>, fault: Option<Fault>) -> Report {
    let g = bc.g();
    let seed0 = seeds.start;
    let mut set = CheckSet::new();
    for seed in seeds {
        let tag = format!("seed{seed:02}");
        set.push(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let phi0 = bc.random_map(&mut rng);
            let (gamma, eta) = (bc.dh(&phi0), bc.dv(&phi0));
            let outcome = solve_correction_steps(bc, &gamma, &eta, fault).and_then(|sol| {
                if let Some((eq, r)) = residual(bc, &gamma, &eta, &sol.phi)? {
                    return Ok(Some(format!("{eq}: {r}")));
                }
                let diff = sol.phi.sub(&phi0)?;
                Ok(identity_multiple(bc, &diff).is_none().then(|| format!("phi - phi_0 = {}", diff.render(g))))
            });
            let residual = match outcome {
                Ok(r) => r,
                Err(e) => Some(e.to_string()),
            };
            Check::from_residual(tag, "dh(phi) = gamma, dv(phi) = eta, phi - phi_0 = lambda id", residual)
        });
    }
    set.residual("zero-data", "gamma = 0, eta = 0 gives phi = 0", move || {
        let z = (Cochain::zero(1, 1, bc.degree()), Cochain::zero(0, 2, bc.degree()));
        match solve_correction_steps(bc, &z.0, &z.1, fault) {
            Ok(sol) if sol.phi.is_zero() => None,
            Ok(sol) => Some(sol.phi.render(g)),
            Err(e) => Some(e.to_string()),
        }
    });
    set.residual("free-model-lift", "f = J + hbar b: the solver returns -b + lambda id", move || {
        let run = || -> Result<Option<String>> {
            let fm = FreeModel::new(bc.env().clone())?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed0);
            let b = bc.random_map(&mut rng);
            let (gamma, eta) = lift_data(&fm, bc, &b)?;
            let sol = solve_correction_steps(bc, &gamma, &eta, fault)?;
            if let Some((eq, r)) = residual(bc, &gamma, &eta, &sol.phi)? {
                return Ok(Some(format!("{eq}: {r}")));
            }
            let diff = sol.phi.add_cochain(&b)?;
            Ok(identity_multiple(bc, &diff).is_none().then(|| format!("phi + b = {}", diff.render(g))))
        };
        run().unwrap_or_else(|e| Some(e.to_string()))
    });
    let mut r = Report::new("solver", format!("{}, D = {}", g.type_name(), bc.degree()), set.run());
    r.seed = seed0;
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_model_lift_data_match_the_bicomplex() {
        let env = Envelope::sl(2).unwrap();
        let bc = Bicomplex::new(env.clone(), 2);
        let fm = FreeModel::new(env).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let b = bc.random_map(&mut rng);
        let (gamma, eta) = lift_data(&fm, &bc, &b).unwrap();
        assert_eq!(gamma, bc.dh(&b).scale(&Rational::from_integer((-1).into())));
        assert_eq!(eta, bc.dv(&b).scale(&Rational::from_integer((-1).into())));
    }
}
