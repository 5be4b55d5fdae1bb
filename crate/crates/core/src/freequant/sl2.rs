//! The degree-three relation for `sl_2`, replayed identity by identity in
//! the free model.

use super::{FmElement, FmTensor, FreeModel};
use crate::error::{Error, Result};
use crate::exactnum::{int, rat, HPoly, Rational};
use crate::fault::Fault;
use crate::report::{CheckSet, Report};

/// The generators and composite elements that the computation refers to.
pub struct Sl2Elements {
    pub e: FmElement,
    pub f: FmElement,
    pub h: FmElement,
    pub je: FmElement,
    pub jf: FmElement,
    pub jh: FmElement,
    /// `fe`, `feh` and `kappa = h^2/4 + h/2 + fe` under `I`.
    pub fe: FmElement,
    pub feh: FmElement,
    pub kappa: FmElement,
    /// `A = [[J(e), J(f)], J(h)]`.
    pub a: FmElement,
    /// `B = (f J(e) - J(f) e) h`.
    pub b: FmElement,
}

impl Sl2Elements {
    pub fn new(fm: &FreeModel) -> Result<Self> {
        let g = fm.g();
        if !g.is_sl2() {
            return Err(Error::WrongAlgebra { op: "sl2 steps", expected: "A1", got: g.type_name() });
        }
        let l = |s: &str| g.lookup(s).ok_or_else(|| Error::UnknownBasis(s.into()));
        let (le, lf, lh) = (l("e")?, l("f")?, l("h")?);
        let (e, f, h) = (fm.iota(le), fm.iota(lf), fm.iota(lh));
        let (je, jf, jh) = (fm.j(le), fm.j(lf), fm.j(lh));
        let fe = fm.mul(&f, &e);
        let feh = fm.mul(&fe, &h);
        let kappa = fm.from_u(&fm.env().kappa()?);
        let a = fm.bracket(&fm.bracket(&je, &jf), &jh);
        let b = fm.mul(&(&fm.mul(&f, &je) - &fm.mul(&jf, &e)), &h);
        Ok(Self { e, f, h, je, jf, jh, fe, feh, kappa, a, b })
    }
}

fn hb(k: u32, r: Rational) -> HPoly {
    HPoly::monomial(k, r)
}

/// Shorthands for tensor arithmetic whose arities are known to agree.
struct T<'a>(&'a FreeModel);

impl T<'_> {
    fn p(&self, a: &FmElement, b: &FmElement) -> FmTensor {
        self.0.pure(&[a, b])
    }
    fn bx(&self, a: &FmElement) -> FmTensor {
        self.0.box_n(a, 2)
    }
    fn br(&self, a: &FmTensor, b: &FmTensor) -> FmTensor {
        self.0.t_bracket(a, b).expect("arity two")
    }
    fn mul(&self, a: &FmTensor, b: &FmTensor) -> FmTensor {
        self.0.t_mul(a, b).expect("arity two")
    }
    fn lin(&self, parts: &[(&FmTensor, HPoly)]) -> FmTensor {
        let mut out = crate::envelope::Tensor::zero(2);
        for (t, c) in parts {
            out.add_scaled(t, c).expect("arity two");
        }
        out
    }
}

fn residual(fm: &FreeModel, lhs: &FmTensor, rhs: &FmTensor) -> Option<String> {
    let d = lhs.sub(rhs).expect("arity two");
    (!d.is_zero()).then(|| fm.render_tensor(&d))
}

fn residual_el(fm: &FreeModel, lhs: &FmElement, rhs: &FmElement) -> Option<String> {
    let d = lhs - rhs;
    (!d.is_zero()).then(|| fm.render(&d))
}

/// `hbar (J (x) Id + Id (x) J)(e (x) f - f (x) e) - hbar^2/2 box(h) omega`.
pub(crate) fn step1_rhs(fm: &FreeModel, s: &Sl2Elements, omega: &FmTensor) -> FmTensor {
    let t = T(fm);
    let p = jp(fm, s);
    let bh_om = t.mul(&t.bx(&s.h), omega);
    t.lin(&[(&p, hb(1, int(1))), (&bh_om, hb(2, rat(-1, 2)))])
}

/// `(J (x) Id + Id (x) J)(e (x) f - f (x) e)`.
fn jp(fm: &FreeModel, s: &Sl2Elements) -> FmTensor {
    let t = T(fm);
    let one = HPoly::one;
    t.lin(&[
        (&t.p(&s.je, &s.f), one()),
        (&t.p(&s.e, &s.jf), one()),
        (&t.p(&s.jf, &s.e), -&one()),
        (&t.p(&s.f, &s.je), -&one()),
    ])
}

/// Checks every identity of the computation. [`Fault::Step2Drop`] removes
/// the `hbar^3/4` term from the expected `(Delta - box)(A)`.
pub fn verify_sl2_steps(fm: &FreeModel, fault: Option<Fault>) -> Result<Report> {
    let s = Sl2Elements::new(fm)?;
    let s = &s;
    let t = T(fm);
    let t = &t;
    let one = HPoly::one;
    let omega = fm.omega();
    let h1 = fm.embed(&s.h, 0, 2);
    let h1_om = t.br(&h1, &omega);
    // box(h) [[h (x) 1, Omega], Omega]
    let cubic = t.mul(&t.bx(&s.h), &t.br(&h1_om, &omega));
    let w = t.lin(&[(&t.p(&s.e, &s.f), one()), (&t.p(&s.f, &s.e), -&one())]);
    let p = jp(fm, s);
    let (omega, h1_om, cubic, w, p) = (&omega, &h1_om, &cubic, &w, &p);
    let c_big = {
        let a = t.mul(&t.bx(&s.h), &t.br(&t.bx(&s.jh), omega)).scale_rational(&rat(1, 2));
        a.add(&t.br(p, w)).expect("arity two")
    };
    let c_big = &c_big;
    let jej = fm.bracket(&s.je, &s.jf);
    let jeh = fm.bracket(&s.je, &s.jh);
    let jfh = fm.bracket(&s.jf, &s.jh);
    let (jej, jeh, jfh) = (&jej, &jeh, &jfh);
    let l_big = fm.coproduct_defect(&s.feh);
    let l_big = &l_big;
    let jhk = fm.mul(&fm.bracket(&s.jh, &s.kappa), &s.h);
    let jhk = &jhk;
    let mix = &fm.mul(&s.je, &s.f) + &fm.mul(&s.jf, &s.e);
    let mix = &mix;
    let mut set = CheckSet::new();

    // (a)
    set.residual("a/J(h)", "(Delta - box)(J(h)) = hbar (e (x) f - f (x) e)", move || {
        residual(fm, &fm.coproduct_defect(&s.jh), &w.scale(&HPoly::hbar(1)))
    });
    set.residual("a/J(e)", "(Delta - box)(J(e)) = hbar/2 (h (x) e - e (x) h)", move || {
        let rhs = t.lin(&[(&t.p(&s.h, &s.e), hb(1, rat(1, 2))), (&t.p(&s.e, &s.h), hb(1, rat(-1, 2)))]);
        residual(fm, &fm.coproduct_defect(&s.je), &rhs)
    });
    set.residual("a/J(f)", "(Delta - box)(J(f)) = hbar/2 (f (x) h - h (x) f)", move || {
        let rhs = t.lin(&[(&t.p(&s.f, &s.h), hb(1, rat(1, 2))), (&t.p(&s.h, &s.f), hb(1, rat(-1, 2)))]);
        residual(fm, &fm.coproduct_defect(&s.jf), &rhs)
    });
    set.residual("a/omega-form", "e (x) f - f (x) e = 1/2 [h (x) 1, Omega]", move || {
        residual(fm, w, &h1_om.scale_rational(&rat(1, 2)))
    });

    // (b)
    set.residual(
        "b/step1",
        "(Delta - box)[J(e), J(f)] = hbar (J (x) Id + Id (x) J)(e (x) f - f (x) e) - hbar^2/2 box(h) Omega",
        move || residual(fm, &fm.coproduct_defect(&fm.bracket(&s.je, &s.jf)), &step1_rhs(fm, s, omega)),
    );
    set.residual(
        "b/sub-e",
        "[h (x) f - f (x) h, box(J(e))] = 2 J(e) (x) f - 2 f (x) J(e) - h (x) J(h) + J(h) (x) h",
        move || {
            let lhs = t.br(&t.lin(&[(&t.p(&s.h, &s.f), one()), (&t.p(&s.f, &s.h), -&one())]), &t.bx(&s.je));
            let rhs = t.lin(&[
                (&t.p(&s.je, &s.f), HPoly::constant(int(2))),
                (&t.p(&s.f, &s.je), HPoly::constant(int(-2))),
                (&t.p(&s.h, &s.jh), -&one()),
                (&t.p(&s.jh, &s.h), one()),
            ]);
            residual(fm, &lhs, &rhs)
        },
    );
    set.residual(
        "b/sub-f",
        "[h (x) e - e (x) h, box(J(f))] = 2 e (x) J(f) - 2 J(f) (x) e + h (x) J(h) - J(h) (x) h",
        move || {
            let lhs = t.br(&t.lin(&[(&t.p(&s.h, &s.e), one()), (&t.p(&s.e, &s.h), -&one())]), &t.bx(&s.jf));
            let rhs = t.lin(&[
                (&t.p(&s.e, &s.jf), HPoly::constant(int(2))),
                (&t.p(&s.jf, &s.e), HPoly::constant(int(-2))),
                (&t.p(&s.h, &s.jh), one()),
                (&t.p(&s.jh, &s.h), -&one()),
            ]);
            residual(fm, &lhs, &rhs)
        },
    );
    set.residual("b/quadratic", "[h (x) e - e (x) h, h (x) f - f (x) h] = 2 box(h) Omega", move || {
        let x = t.lin(&[(&t.p(&s.h, &s.e), one()), (&t.p(&s.e, &s.h), -&one())]);
        let y = t.lin(&[(&t.p(&s.h, &s.f), one()), (&t.p(&s.f, &s.h), -&one())]);
        residual(fm, &t.br(&x, &y), &t.mul(&t.bx(&s.h), omega).scale_rational(&int(2)))
    });

    // (c)
    let drop = fault == Some(Fault::Step2Drop);
    set.residual(
        "c/step2",
        "(Delta - box)(A) = hbar^2 C + hbar^3/4 box(h) [[h (x) 1, Omega], Omega]",
        move || {
            let mut rhs = c_big.scale(&HPoly::hbar(2));
            if !drop {
                rhs.add_scaled(cubic, &hb(3, rat(1, 4))).expect("arity two");
            }
            residual(fm, &fm.coproduct_defect(&s.a), &rhs)
        },
    );
    set.residual(
        "c/C0-1",
        "[J(e) (x) f + e (x) J(f), box(J(h))] = [J(e), J(h)] (x) f + e (x) [J(f), J(h)]",
        move || {
            let lhs = t.br(&t.p(&s.je, &s.f).add(&t.p(&s.e, &s.jf)).expect("arity"), &t.bx(&s.jh));
            residual(fm, &lhs, &t.p(jeh, &s.f).add(&t.p(&s.e, jfh)).expect("arity"))
        },
    );
    set.residual(
        "c/C0-2",
        "[J(f) (x) e + f (x) J(e), box(J(h))] = [J(f), J(h)] (x) e + f (x) [J(e), J(h)]",
        move || {
            let lhs = t.br(&t.p(&s.jf, &s.e).add(&t.p(&s.f, &s.je)).expect("arity"), &t.bx(&s.jh));
            residual(fm, &lhs, &t.p(jfh, &s.e).add(&t.p(&s.f, jeh)).expect("arity"))
        },
    );
    set.residual(
        "c/C0-3",
        "[[J(e), J(f)] (x) 1, e (x) f - f (x) e] = [J(h), J(e)] (x) f + [J(f), J(h)] (x) e",
        move || {
            let lhs = t.br(&fm.embed(jej, 0, 2), w);
            residual(fm, &lhs, &t.p(&-jeh, &s.f).add(&t.p(jfh, &s.e)).expect("arity"))
        },
    );
    set.residual(
        "c/C0-4",
        "[1 (x) [J(e), J(f)], e (x) f - f (x) e] = f (x) [J(e), J(h)] + e (x) [J(h), J(f)]",
        move || {
            let lhs = t.br(&fm.embed(jej, 1, 2), w);
            residual(fm, &lhs, &t.p(&s.f, jeh).add(&t.p(&s.e, &-jfh)).expect("arity"))
        },
    );
    set.residual(
        "c/C0",
        "C_0 = [(J (x) Id + Id (x) J)(e (x) f - f (x) e), box(J(h))] + [box([J(e), J(f)]), e (x) f - f (x) e] = 0",
        move || {
            let c0 = t.br(p, &t.bx(&s.jh)).add(&t.br(&t.bx(jej), w)).expect("arity");
            residual(fm, &c0, &crate::envelope::Tensor::zero(2))
        },
    );
    set.residual("c/box-h-central", "box(h) commutes with box(J(h)) and Omega", move || {
        let a = t.br(&t.bx(&s.h), &t.bx(&s.jh));
        let b = t.br(&t.bx(&s.h), omega);
        residual(fm, &a.add(&b).expect("arity"), &crate::envelope::Tensor::zero(2))
    });

    // (d)
    set.residual(
        "d/step3",
        "(Delta - box)(B) = 1/2 [box(J(h)), L] + hbar/4 box(h) [[h (x) 1, Omega], Omega]",
        move || {
            let rhs = t.lin(&[(&t.br(&t.bx(&s.jh), l_big), HPoly::constant(rat(1, 2))), (cubic, hb(1, rat(1, 4)))]);
            residual(fm, &fm.coproduct_defect(&s.b), &rhs)
        },
    );
    set.residual("d/L", "L = (e (x) f + f (x) e) box(h) + fe (x) h + h (x) fe", move || {
        let ef = t.p(&s.e, &s.f).add(&t.p(&s.f, &s.e)).expect("arity");
        let rhs = t.lin(&[(&t.mul(&ef, &t.bx(&s.h)), one()), (&t.p(&s.fe, &s.h), one()), (&t.p(&s.h, &s.fe), one())]);
        residual(fm, l_big, &rhs)
    });
    set.residual("d/h-delta-fe", "[h (x) 1, Delta(fe)] = [h (x) 1, Omega]", move || {
        residual(fm, &t.br(&h1, &fm.coproduct(&s.fe)), h1_om)
    });
    set.residual(
        "d/reorder",
        "[[h (x) 1, Omega], Delta(feh)] = [[h (x) 1, Delta(fe)], Omega] box(h)",
        move || {
            let lhs = t.br(h1_om, &fm.coproduct(&s.feh));
            let rhs = t.mul(&t.br(&t.br(&fm.embed(&s.h, 0, 2), &fm.coproduct(&s.fe)), omega), &t.bx(&s.h));
            residual(fm, &lhs, &rhs)
        },
    );

    // (e)
    set.residual("e/step4", "(Delta - box)(A - hbar^2 B) = 0", move || {
        let d = &s.a - &s.b.scale(&HPoly::hbar(2));
        residual(fm, &fm.coproduct_defect(&d), &crate::envelope::Tensor::zero(2))
    });
    set.residual(
        "e/reduced",
        "[(J (x) Id + Id (x) J)(e (x) f - f (x) e), e (x) f - f (x) e] - 1/2 [box(J(h)), h (x) fe + fe (x) h] = 0",
        move || {
            let q = t.p(&s.h, &s.fe).add(&t.p(&s.fe, &s.h)).expect("arity");
            let rhs = t.br(&t.bx(&s.jh), &q).scale_rational(&rat(1, 2));
            residual(fm, &t.br(p, w), &rhs)
        },
    );
    set.residual(
        "e/L-rewrite",
        "[box(J(h)), L] = [box(J(h)), Omega box(h) + fe (x) h + h (x) fe]",
        move || {
            let q = t.lin(&[(&t.mul(omega, &t.bx(&s.h)), one()), (&t.p(&s.fe, &s.h), one()), (&t.p(&s.h, &s.fe), one())]);
            residual(fm, &t.br(&t.bx(&s.jh), l_big), &t.br(&t.bx(&s.jh), &q))
        },
    );
    set.residual("e/C-minus-L", "C - 1/2 [box(J(h)), L] = [(J (x) Id + Id (x) J)(e (x) f - f (x) e), e (x) f - f (x) e] - 1/2 [box(J(h)), h (x) fe + fe (x) h]", move || {
        let lhs = c_big.sub(&t.br(&t.bx(&s.jh), l_big).scale_rational(&rat(1, 2))).expect("arity");
        let q = t.p(&s.h, &s.fe).add(&t.p(&s.fe, &s.h)).expect("arity");
        let rhs = t.br(p, w).sub(&t.br(&t.bx(&s.jh), &q).scale_rational(&rat(1, 2))).expect("arity");
        residual(fm, &lhs, &rhs)
    });

    // (f)
    let g = fm.g().clone();
    let (le, lf, lh) = (g.lookup("e").expect("e"), g.lookup("f").expect("f"), g.lookup("h").expect("h"));
    let tt = move |x: &FmElement| fm.bracket(&s.f, &fm.bracket(&s.e, x));
    set.residual("f/ad-e(A)", "[e, A] = [[J(e), J(h)], J(h)] - 2 [[J(e), J(f)], J(e)]", move || {
        let rhs = &fm.bracket(jeh, &s.jh) - &fm.bracket(jej, &s.je).scale_rational(&int(2));
        residual_el(fm, &fm.bracket(&s.e, &s.a), &rhs)
    });
    set.residual("f/T(A)", "T(A) = 6 A, T = ad(f) ad(e)", move || residual_el(fm, &tt(&s.a), &s.a.scale_rational(&int(6))));
    set.residual("f/kappa-swap", "[J(h), feh] = [J(h), kappa] h", move || {
        residual_el(fm, &fm.bracket(&s.jh, &s.feh), jhk)
    });
    set.residual("f/ad-e(kappa)", "ad(e)([J(h), kappa] h) = -2 [J(e), kappa] h - 2 [J(h), kappa] e", move || {
        let rhs = &fm.mul(&fm.bracket(&s.je, &s.kappa), &s.h).scale_rational(&int(-2))
            - &fm.mul(&fm.bracket(&s.jh, &s.kappa), &s.e).scale_rational(&int(2));
        residual_el(fm, &fm.bracket(&s.e, jhk), &rhs)
    });
    set.residual("f/T-kappa-expansion", "T([J(h), kappa] h) = 4 [J(h), kappa] h - 4 [J(e) f + J(f) e, kappa]", move || {
        let rhs = &jhk.scale_rational(&int(4)) - &fm.bracket(mix, &s.kappa).scale_rational(&int(4));
        residual_el(fm, &tt(jhk), &rhs)
    });
    set.residual("f/T(kappa)", "T([J(h), kappa] h) = 6 [J(h), kappa] h", move || {
        residual_el(fm, &tt(jhk), &jhk.scale_rational(&int(6)))
    });
    set.residual("f/mix-fe", "[J(e) f + J(f) e, fe] = (J(f) e - f J(e)) h", move || {
        let rhs = fm.mul(&(&fm.mul(&s.jf, &s.e) - &fm.mul(&s.f, &s.je)), &s.h);
        residual_el(fm, &fm.bracket(mix, &s.fe), &rhs)
    });
    set.residual("f/mix-kappa", "[J(e) f + J(f) e, fe] = -1/2 [J(h), kappa] h", move || {
        residual_el(fm, &fm.bracket(mix, &s.fe), &jhk.scale_rational(&rat(-1, 2)))
    });
    set.residual("f/T(h)", "T(a) = 2 a for a in the Cartan subalgebra", move || {
        residual_el(fm, &tt(&s.h), &s.h.scale_rational(&int(2)))
    });
    set.residual("f/kappa-central", "[kappa, e] = [kappa, f] = [kappa, h] = 0", move || {
        let mut d = fm.bracket(&s.kappa, &fm.iota(le));
        d += &fm.bracket(&s.kappa, &fm.iota(lf));
        d += &fm.bracket(&s.kappa, &fm.iota(lh));
        (!d.is_zero()).then(|| fm.render(&d))
    });

    // (g)
    set.residual("g/B", "B = 1/2 [J(h), feh]", move || {
        residual_el(fm, &s.b, &fm.bracket(&s.jh, &s.feh).scale_rational(&rat(1, 2)))
    });
    Ok(Report::new("sl2-steps", fm.g().type_name(), set.run()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_steps_pass() {
        let fm = FreeModel::sl(2).unwrap();
        let rep = verify_sl2_steps(&fm, None).unwrap();
        let bad: Vec<_> = rep.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn faults_are_detected() {
        let fm = FreeModel::sl(2).unwrap();
        let rep = verify_sl2_steps(&fm, Some(Fault::Step2Drop)).unwrap();
        let ids: Vec<_> = rep.failures().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, vec!["c/step2"]);
        let twisted = FreeModel::with_fault(fm.env().clone(), Some(Fault::OmegaSign)).unwrap();
        assert!(!verify_sl2_steps(&twisted, None).unwrap().passed());
    }

    #[test]
    fn wrong_tensor_breaks_step_one() {
        let fm = FreeModel::sl(2).unwrap();
        let s = Sl2Elements::new(&fm).unwrap();
        let hh = fm.pure(&[&s.h, &s.h]);
        let lhs = fm.coproduct_defect(&fm.bracket(&s.je, &s.jf));
        assert_ne!(lhs, step1_rhs(&fm, &s, &hh));
        assert_eq!(lhs, step1_rhs(&fm, &s, &fm.omega()));
    }

    #[test]
    fn rejects_other_algebras() {
        assert!(Sl2Elements::new(&FreeModel::sl(3).unwrap()).is_err());
    }
}
