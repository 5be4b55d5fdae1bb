use super::{FmElement, FmTensor, FreeModel};
use crate::current::CurrentAlgebra;
use crate::envelope::{Sign, Tensor};
use crate::error::{Error, Result};
use crate::exactnum::{rat, HPoly, Rational};
use crate::liealg::{LieBasisIndex, LieElement};
use crate::report::{CheckSet, Report};

fn residual(fm: &FreeModel, d: &FmElement) -> Option<String> {
    (!d.is_zero()).then(|| fm.render(d))
}

fn residual_t(fm: &FreeModel, d: &FmTensor) -> Option<String> {
    (!d.is_zero()).then(|| fm.render_tensor(d))
}

/// `D_ij = [J(t_i), J(t_j)] - hbar^2 I([nu(t_j), nu(t_i)])`.
pub fn relation_defect_cartan(fm: &FreeModel, i: usize, j: usize) -> Result<FmElement> {
    let g = fm.g();
    if g.rank() < 2 {
        return Err(Error::WrongAlgebra { op: "Cartan defect (use the sl2 defect)", expected: "rank >= 2", got: g.type_name() });
    }
    let env = fm.env();
    let (ti, tj) = (g.t(i), g.t(j));
    let nn = env.bracket(&env.nu(&tj)?, &env.nu(&ti)?);
    Ok(&fm.bracket(&fm.j_lie(&ti), &fm.j_lie(&tj)) - &fm.from_u(&nn).scale(&HPoly::hbar(2)))
}

/// `[[J(e), J(f)], J(h)] - hbar^2 (I(f) J(e) - J(f) I(e)) I(h)`.
pub fn relation_defect_sl2(fm: &FreeModel) -> Result<FmElement> {
    let s = super::Sl2Elements::new(fm)?;
    Ok(&s.a - &s.b.scale(&HPoly::hbar(2)))
}

/// `T(h) = J(h) - hbar I(nu(h))`.
fn t_of(fm: &FreeModel, h: &LieElement) -> FmElement {
    let nu = fm.env().nu(h).expect("Cartan element");
    &fm.j_lie(h) - &fm.from_u(&nu).scale(&HPoly::hbar(1))
}

/// Primitivity of the relation defects, plus the identities feeding it.
pub fn verify_primitive_defects(fm: &FreeModel) -> Result<Report> {
    let g = fm.g();
    let cur = CurrentAlgebra::new(g.clone());
    let cur = &cur;
    if g.is_sl2() {
        let d = relation_defect_sl2(fm)?;
        let h = LieElement::basis(g.lookup("h").expect("h"));
        let d = &d;
        let mut set = CheckSet::new();
        set.residual("sl2/primitive", "Delta(D) = box(D) for D = [[J(e),J(f)],J(h)] - hbar^2 (f J(e) - J(f) e) h", move || {
            residual_t(fm, &fm.coproduct_defect(d))
        });
        set.residual("sl2/weight-zero", "[h, D] = 0", move || residual(fm, &fm.ad_iota(&h, d)));
        set.residual("sl2/classical", "D maps to [[e u, f u], h u] = 0 in U(g[u])", move || {
            let c = fm.classical_limit(cur, d);
            (!c.is_zero()).then(|| cur.render_u(&c))
        });
        return Ok(Report::new("defects", g.type_name(), set.run()));
    }
    let r = g.rank();
    let defects: Vec<Vec<FmElement>> =
        (0..r).map(|i| (0..r).map(|j| relation_defect_cartan(fm, i, j)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let defects = &defects;
    let mut set = CheckSet::new();
    for i in 0..r {
        for j in 0..r {
            let tag = format!("{}{}", i + 1, j + 1);
            let d = &defects[i][j];
            if i == j {
                set.residual(format!("diagonal/D{tag}"), "D_ii = 0", move || residual(fm, d));
                continue;
            }
            set.residual(
                format!("primitive/D{tag}"),
                "Delta(D_ij) = box(D_ij) for D_ij = [J(t_i),J(t_j)] - hbar^2 [nu(t_j),nu(t_i)]",
                move || residual_t(fm, &fm.coproduct_defect(d)),
            );
            set.residual(format!("T-form/D{tag}"), "D_ij = [T(t_i), T(t_j)], T(h) = J(h) - hbar nu(h)", move || {
                let tt = fm.bracket(&t_of(fm, &g.t(i)), &t_of(fm, &g.t(j)));
                residual(fm, &(d - &tt))
            });
            set.residual(format!("classical/D{tag}"), "D_ij maps to [t_i u, t_j u] = 0 in U(g[u])", move || {
                let c = fm.classical_limit(cur, d);
                (!c.is_zero()).then(|| cur.render_u(&c))
            });
            set.residual(
                format!("symmetric-term/{tag}"),
                "[box J(t_i), [t_j (x) 1, Omega]] = sum alpha(t_i) alpha(t_j) (J (x) Id - Id (x) J)(x_a^+ (x) x_a^- + x_a^- (x) x_a^+)",
                move || {
                    let (ti, tj) = (g.t(i), g.t(j));
                    let lhs = fm.t_bracket(&fm.box_n(&fm.j_lie(&ti), 2), &fm.omega_commutator(&tj)).expect("arity two");
                    let mut rhs = Tensor::zero(2);
                    for (k, (xp, xm)) in g.roots().root_vectors.iter().enumerate() {
                        let c = g.root_value(k, &ti).expect("Cartan") * g.root_value(k, &tj).expect("Cartan");
                        let c = HPoly::constant(c);
                        for (a, b) in [(*xp, *xm), (*xm, *xp)] {
                            rhs.add_scaled(&fm.pure(&[&fm.j(a), &fm.iota(b)]), &c).expect("arity two");
                            rhs.add_scaled(&fm.pure(&[&fm.iota(a), &fm.j(b)]), &-&c).expect("arity two");
                        }
                    }
                    residual_t(fm, &lhs.sub(&rhs).expect("arity two"))
                },
            );
        }
    }
    Ok(Report::new("defects", g.type_name(), set.run()))
}

/// `sum_a alpha(t_i) alpha(t_j) (x_a^- J(x_a^+) - J(x_a^-) x_a^+)`.
pub(crate) fn symmetry_sum(fm: &FreeModel, i: usize, j: usize) -> FmElement {
    let g = fm.g();
    let (ti, tj) = (g.t(i), g.t(j));
    let mut out = FmElement::zero();
    for (k, (xp, xm)) in g.roots().root_vectors.iter().enumerate() {
        let c = g.root_value(k, &ti).expect("Cartan") * g.root_value(k, &tj).expect("Cartan");
        let term = &fm.mul(&fm.iota(*xm), &fm.j(*xp)) - &fm.mul(&fm.j(*xm), &fm.iota(*xp));
        out.add_scaled(&term, &HPoly::constant(c));
    }
    out
}

/// `[J(t_i), nu(t_j)]`.
pub(crate) fn j_nu(fm: &FreeModel, i: usize, j: usize) -> FmElement {
    let g = fm.g();
    fm.bracket(&fm.j_lie(&g.t(i)), &fm.from_u(&fm.env().nu(&g.t(j)).expect("Cartan")))
}

/// The relations satisfied by `T(h)`, `x_{i,1}^{+-}` and `xi_{i,1}`, and the
/// symmetry of `[J(t_i), nu(t_j)]`.
pub fn verify_t_identities(fm: &FreeModel) -> Report {
    let g = fm.g();
    let r = g.rank();
    let ts: Vec<FmElement> = (0..r).map(|i| t_of(fm, &g.t(i))).collect();
    let x1 = |i: usize, sign: Sign| -> FmElement {
        let (xp, xm) = g.simple_root_vectors(i);
        let x = fm.iota(if sign == Sign::Plus { xp } else { xm });
        let scale = Rational::from_integer(sign.value().into()) / g.simple_root_pairing(i, i);
        fm.bracket(&ts[i], &x).scale_rational(&scale)
    };
    let plus: Vec<FmElement> = (0..r).map(|i| x1(i, Sign::Plus)).collect();
    let minus: Vec<FmElement> = (0..r).map(|i| x1(i, Sign::Minus)).collect();
    let xi: Vec<FmElement> = (0..r)
        .map(|i| {
            let t = fm.env().lie::<HPoly>(&g.t(i));
            &ts[i] + &fm.from_u(&fm.env().mul(&t, &t)).scale(&HPoly::monomial(1, rat(1, 2)))
        })
        .collect();
    let (ts, plus, minus, xi) = (&ts, &plus, &minus, &xi);
    let mut set = CheckSet::new();
    for k in 0..r {
        for i in 0..r {
            for sign in [Sign::Plus, Sign::Minus] {
                set.residual(
                    format!("T-action/t{}/x{}{}", k + 1, i + 1, sign.symbol()),
                    "[T(h), x_i^+-] = +-alpha_i(h) x_{i,1}^+-",
                    move || {
                        let (xp, xm) = g.simple_root_vectors(i);
                        let x = fm.iota(if sign == Sign::Plus { xp } else { xm });
                        let lhs = fm.bracket(&ts[k], &x);
                        let target = if sign == Sign::Plus { &plus[i] } else { &minus[i] };
                        let c = g.simple_root_pairing(i, k) * Rational::from_integer(sign.value().into());
                        residual(fm, &(&lhs - &target.scale_rational(&c)))
                    },
                );
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            let tag = format!("{}{}", i + 1, j + 1);
            set.residual(format!("x1+x-/{tag}"), "[x_{i,1}^+, x_j^-] = delta_ij xi_{i,1}", move || {
                let (_, xm) = g.simple_root_vectors(j);
                let lhs = fm.bracket(&plus[i], &fm.iota(xm));
                let rhs = if i == j { xi[i].clone() } else { FmElement::zero() };
                residual(fm, &(&lhs - &rhs))
            });
            set.residual(format!("x+x1-/{tag}"), "[x_i^+, x_{j,1}^-] = delta_ij xi_{i,1}", move || {
                let (xp, _) = g.simple_root_vectors(i);
                let lhs = fm.bracket(&fm.iota(xp), &minus[j]);
                let rhs = if i == j { xi[i].clone() } else { FmElement::zero() };
                residual(fm, &(&lhs - &rhs))
            });
            set.residual(format!("symmetry/{tag}"), "[J(t_i), nu(t_j)] = [J(t_j), nu(t_i)]", move || {
                residual(fm, &(&j_nu(fm, i, j) - &j_nu(fm, j, i)))
            });
            set.residual(
                format!("symmetry-expansion/{tag}"),
                "[J(t_i), nu(t_j)] = 1/2 sum alpha(t_i) alpha(t_j) (x_a^- J(x_a^+) - J(x_a^-) x_a^+)",
                move || {
                    let rhs = symmetry_sum(fm, i, j).scale_rational(&rat(1, 2));
                    residual(fm, &(&j_nu(fm, i, j) - &rhs))
                },
            );
        }
    }
    Report::new("t-identities", g.type_name(), set.run())
}

/// `Delta` respects `I([x,y]) = [I(x), I(y)]` and `J([x,y]) = [I(x), J(y)]`.
pub fn verify_coproduct_well_defined(fm: &FreeModel) -> Report {
    let g = fm.g();
    let mut set = CheckSet::new();
    for x in g.basis() {
        for y in g.basis() {
            let tag = format!("{}/{}", g.name(x), g.name(y));
            let bxy = g.bracket_basis(x, y);
            set.residual(format!("J/{tag}"), "[Delta(I(x)), Delta(J(y))] = Delta(J([x,y]))", move || {
                let lhs = fm.t_bracket(&fm.coproduct(&fm.iota(x)), &fm.coproduct(&fm.j(y))).expect("arity two");
                residual_t(fm, &lhs.sub(&fm.coproduct(&fm.j_lie(bxy))).expect("arity two"))
            });
            set.residual(format!("I/{tag}"), "[Delta(I(x)), Delta(I(y))] = Delta(I([x,y]))", move || {
                let lhs = fm.t_bracket(&fm.coproduct(&fm.iota(x)), &fm.coproduct(&fm.iota(y))).expect("arity two");
                residual_t(fm, &lhs.sub(&fm.coproduct(&fm.iota_lie(bxy))).expect("arity two"))
            });
        }
    }
    Report::new("coproduct-wd", g.type_name(), set.run())
}

/// Counit, antipode and coassociativity laws on the generators.
pub fn verify_hopf(fm: &FreeModel) -> Report {
    let g = fm.g();
    let mut set = CheckSet::new();
    let gens: Vec<(String, LieBasisIndex, bool)> = g
        .basis()
        .flat_map(|b| [(format!("I({})", g.name(b)), b, false), (format!("J({})", g.name(b)), b, true)])
        .collect();
    for (name, b, is_j) in gens {
        let make = move || if is_j { fm.j(b) } else { fm.iota(b) };
        set.residual(format!("counit-value/{name}"), "eps(I(x)) = eps(J(x)) = 0", move || {
            let c = fm.counit(&make());
            (!c.is_zero()).then(|| c.to_string())
        });
        for (side, slot) in [("left", 0usize), ("right", 1usize)] {
            set.residual(format!("counit-{side}/{name}"), "(eps (x) Id) Delta = Id = (Id (x) eps) Delta", move || {
                let a = make();
                let d = fm.counit_slot(&fm.coproduct(&a), slot);
                residual_t(fm, &d.sub(&fm.embed(&a, 0, 1)).expect("arity one"))
            });
            set.residual(
                format!("antipode-{side}/{name}"),
                "m (S (x) Id) Delta = eps 1 = m (Id (x) S) Delta, S(J(x)) = -J(x) + hbar/4 c_g x",
                move || {
                    let a = make();
                    let s = fm.map_slot(&fm.coproduct(&a), slot, |w| fm.antipode(w));
                    let lhs = fm.slot_multiply(&s);
                    residual(fm, &(&lhs - &fm.scalar(fm.counit(&a))))
                },
            );
        }
        set.residual(format!("coassociativity/{name}"), "(Delta (x) Id) Delta = (Id (x) Delta) Delta", move || {
            let d = fm.coproduct(&make());
            residual_t(fm, &fm.coproduct_slot(&d, 0).sub(&fm.coproduct_slot(&d, 1)).expect("arity three"))
        });
    }
    Report::new("hopf", g.type_name(), set.run())
}
