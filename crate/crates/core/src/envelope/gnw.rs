use super::{Envelope, Sign, UElement};
use crate::exactnum::{int, rat, HPoly};
use crate::fault::Fault;
use crate::liealg::LieElement;
use crate::report::{CheckSet, Report};

fn residual_u(env: &Envelope, d: &UElement) -> Option<String> {
    (!d.is_zero()).then(|| env.render(d))
}

/// Checks the three families of relations between `nu`, `w_i^{+-}` and the
/// coproduct.
///
/// With [`Fault::Nu`] the identities are evaluated with `nu(h) + h` in place
/// of `nu(h)` while `w_i^{+-}` keep their defining values. Shifting both
/// consistently would not be detectable: `nu -> nu + id` preserves all three
/// families.
pub fn verify_gnw(env: &Envelope, fault: Option<Fault>) -> Report {
    let g = env.g();
    let r = g.rank();
    let nu_of = |h: &LieElement| -> UElement {
        let mut v = env.nu(h).expect("Cartan input");
        if fault == Some(Fault::Nu) {
            v += &env.lie(h);
        }
        v
    };
    let mut set = CheckSet::new();
    for j in 0..r {
        for i in 0..r {
            for sign in [Sign::Plus, Sign::Minus] {
                let nu_of = &nu_of;
                set.residual(
                    format!("1/nu(t{})/x{}{}", j + 1, i + 1, sign.symbol()),
                    "[nu(h), x_i^(+-)] = +-alpha_i(h) w_i^(+-)",
                    move || {
                        let h = g.t(j);
                        let (xp, xm) = g.simple_root_vectors(i);
                        let x = env.letter::<HPoly>(if sign == Sign::Plus { xp } else { xm });
                        let alpha = g.simple_root_pairing(i, j);
                        let lhs = env.bracket(&nu_of(&h), &x);
                        let rhs = env.w_element(i, sign).scale_rational(&(alpha * int(sign.value())));
                        residual_u(env, &(&lhs - &rhs))
                    },
                );
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            for (tag, plus_first) in [("w+x-", true), ("x+w-", false)] {
                let nu_of = &nu_of;
                set.residual(
                    format!("2/{tag}/{}{}", i + 1, j + 1),
                    "[w_i^+, x_j^-] = [x_i^+, w_j^-] = delta_ij (nu(t_i) - t_i^2/2)",
                    move || {
                        let lhs = if plus_first {
                            let (_, xm) = g.simple_root_vectors(j);
                            env.bracket(&env.w_element(i, Sign::Plus), &env.letter(xm))
                        } else {
                            let (xp, _) = g.simple_root_vectors(i);
                            env.bracket(&env.letter(xp), &env.w_element(j, Sign::Minus))
                        };
                        let rhs = if i == j {
                            let t = env.lie::<HPoly>(&g.t(i));
                            &nu_of(&g.t(i)) - &env.mul(&t, &t).scale_rational(&rat(1, 2))
                        } else {
                            UElement::zero()
                        };
                        residual_u(env, &(&lhs - &rhs))
                    },
                );
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            let nu_of = &nu_of;
            set.residual(
                format!("3/t{}t{}", a + 1, b + 1),
                "Delta([nu(h1),nu(h2)]) = box([nu(h1),nu(h2)]) - 1/4 [[h1 (x) 1, Omega], [h2 (x) 1, Omega]]",
                move || {
                    let (h1, h2) = (g.t(a), g.t(b));
                    let c = env.bracket(&nu_of(&h1), &nu_of(&h2));
                    let lhs = env.coproduct(&c).sub(&env.box_n(&c, 2)).expect("arity two");
                    let q = env
                        .t_bracket(&env.omega_commutator(&h1), &env.omega_commutator(&h2))
                        .expect("arity two")
                        .scale_rational(&rat(1, 4));
                    let d = lhs.add(&q).expect("arity two");
                    (!d.is_zero()).then(|| env.render_tensor(&d))
                },
            );
        }
    }
    Report::new("gnw", g.type_name(), set.run())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnw_passes_and_fault_is_caught() {
        for n in [2, 3] {
            let env = Envelope::sl(n).unwrap();
            let rep = verify_gnw(&env, None);
            assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
            let bad = verify_gnw(&env, Some(Fault::Nu));
            assert!(!bad.passed());
            assert!(bad.failures().any(|c| c.id.starts_with("2/")));
        }
    }

    #[test]
    fn sl2_w_elements() {
        let env = Envelope::sl(2).unwrap();
        let e = env.named::<HPoly>("e").unwrap();
        let f = env.named::<HPoly>("f").unwrap();
        let h = LieElement::basis(env.g().lookup("h").unwrap());
        let nu = env.nu(&h).unwrap();
        let wp = env.w_element(0, Sign::Plus);
        assert_eq!(env.bracket(&nu, &e), wp.scale_rational(&int(2)));
        let hu = env.lie::<HPoly>(&h);
        let expected = &nu - &env.mul(&hu, &hu).scale_rational(&rat(1, 2));
        assert_eq!(env.bracket(&wp, &f), expected);
        // [fe, e] = fee - (fe + h)e = -he
        assert_eq!(env.render(&wp), "-(1/2)*h*e");
    }
}
