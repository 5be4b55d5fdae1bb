//! Values checked against explicit `n x n` matrices built here, without the
//! crate's structure constants.

use num_traits::{One, Zero};
use yangian_core::{Envelope, HPoly, LieAlgebraData, LieBasisIndex, LieElement, Rational, UElement};

type M = Vec<Vec<Rational>>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn unit(n: usize, i: usize, j: usize) -> M {
    let mut m = vec![vec![Rational::zero(); n]; n];
    m[i][j] = Rational::one();
    m
}

fn mul(a: &M, b: &M) -> M {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

fn sub(a: &M, b: &M) -> M {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn trace(a: &M) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// The matrix named `name`: `e_ij = E_ij`, `f_ij = E_ji`, `h_i = E_ii - E_{i+1,i+1}`.
fn matrix(n: usize, name: &str) -> M {
    let digits: Vec<usize> = name[1..].chars().map(|c| c.to_digit(10).unwrap() as usize - 1).collect();
    match (name.as_bytes()[0], n, digits.as_slice()) {
        (b'e', 2, []) => unit(2, 0, 1),
        (b'f', 2, []) => unit(2, 1, 0),
        (b'h', 2, []) => sub(&unit(2, 0, 0), &unit(2, 1, 1)),
        (b'e', _, [i, j]) => unit(n, *i, *j),
        (b'f', _, [i, j]) => unit(n, *j, *i),
        (b'h', _, [i]) => sub(&unit(n, *i, *i), &unit(n, i + 1, i + 1)),
        _ => panic!("unexpected basis name {name}"),
    }
}

fn as_matrix(g: &LieAlgebraData, x: &LieElement) -> M {
    let n = g.n();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for (b, c) in x {
        let m = matrix(n, g.name(*b));
        for i in 0..n {
            for j in 0..n {
                out[i][j] += c * &m[i][j];
            }
        }
    }
    out
}

#[test]
fn dimensions() {
    for (n, dim, pos) in [(2, 3, 1), (3, 8, 3), (4, 15, 6)] {
        let g = LieAlgebraData::sl(n).unwrap();
        assert_eq!(g.dim(), dim);
        assert_eq!(g.roots().positive_roots.len(), pos);
    }
}

#[test]
fn brackets_and_form_match_matrices() {
    for n in [2, 3] {
        let g = LieAlgebraData::sl(n).unwrap();
        let basis: Vec<LieBasisIndex> = g.basis().collect();
        for &a in &basis {
            for &b in &basis {
                let (ma, mb) = (matrix(n, g.name(a)), matrix(n, g.name(b)));
                let comm = sub(&mul(&ma, &mb), &mul(&mb, &ma));
                assert_eq!(as_matrix(&g, g.bracket_basis(a, b)), comm, "[{}, {}]", g.name(a), g.name(b));
                assert_eq!(*g.form_basis(a, b), trace(&mul(&ma, &mb)));
            }
        }
    }
    let g = LieAlgebraData::sl(2).unwrap();
    let (e, h) = (g.lookup("e").unwrap(), g.lookup("h").unwrap());
    assert_eq!(*g.bracket_basis(h, e), LieElement::term(e, q(2)));
    assert_eq!(*g.form_basis(h, h), q(2));
}

/// `sum_a ad(x_a) ad(x^a)` on `g`, with the dual basis taken for the trace
/// form by inverting the Gram matrix here.
fn casimir_on_adjoint(n: usize) -> Vec<Rational> {
    let g = LieAlgebraData::sl(n).unwrap();
    let basis: Vec<LieBasisIndex> = g.basis().collect();
    let d = basis.len();
    let mats: Vec<M> = basis.iter().map(|b| matrix(n, g.name(*b))).collect();
    // Gauss-Jordan inverse of the Gram matrix
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> = (0..d).map(|j| trace(&mul(&mats[i], &mats[j]))).collect();
            row.extend((0..d).map(|j| if i == j { q(1) } else { q(0) }));
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !a[r][c].is_zero()).unwrap();
        a.swap(c, p);
        let inv = a[c][c].recip();
        a[c].iter_mut().for_each(|x| *x *= &inv);
        for r in 0..d {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                a[r].iter_mut().zip(&pivot).for_each(|(x, y)| *x -= &f * y);
            }
        }
    }
    let ad = |x: &M, y: &M| sub(&mul(x, y), &mul(y, x));
    let mut eigen = Vec::new();
    for y in &mats {
        let mut acc = vec![vec![Rational::zero(); n]; n];
        for i in 0..d {
            for j in 0..d {
                let c = &a[i][d + j];
                if c.is_zero() {
                    continue;
                }
                let t = ad(&mats[i], &ad(&mats[j], y));
                for r in 0..n {
                    for s in 0..n {
                        acc[r][s] += c * &t[r][s];
                    }
                }
            }
        }
        // acc = lambda * y; read lambda off a nonzero entry
        let (r, s) = (0..n).flat_map(|r| (0..n).map(move |s| (r, s))).find(|&(r, s)| !y[r][s].is_zero()).unwrap();
        let lambda = &acc[r][s] / &y[r][s];
        for r in 0..n {
            for s in 0..n {
                assert_eq!(acc[r][s], &lambda * &y[r][s]);
            }
        }
        eigen.push(lambda);
    }
    eigen
}

#[test]
fn casimir_eigenvalue_on_adjoint() {
    for (n, c) in [(2, 4), (3, 6)] {
        assert!(casimir_on_adjoint(n).iter().all(|l| *l == q(c)));
        assert_eq!(LieAlgebraData::sl(n).unwrap().casimir_adjoint_eigenvalue().unwrap(), q(c));
    }
}

fn word(env: &Envelope, names: &[&str]) -> UElement {
    env.normal_order(&names.iter().map(|s| env.g().lookup(s).unwrap()).collect::<Vec<_>>())
}

#[test]
fn sl2_envelope_values() {
    let env = Envelope::sl(2).unwrap();
    let fe = word(&env, &["f", "e"]);
    assert_eq!(word(&env, &["e", "f"]), &fe + &word(&env, &["h"]));
    assert!(env.bracket(&word(&env, &["h"]), &fe).is_zero());
    let rendered = env.render_tensor(&env.coproduct(&fe));
    let mut terms: Vec<&str> = rendered.split(" + ").collect();
    terms.sort();
    assert_eq!(terms, ["(f*e) (x) 1", "1 (x) (f*e)", "e (x) f", "f (x) e"]);
    let h = LieElement::basis(env.g().lookup("h").unwrap());
    assert_eq!(env.nu(&h).unwrap(), fe);
    // C = ef + fe + h^2/2
    let half = HPoly::constant(Rational::new(1.into(), 2.into()));
    let c = &(&word(&env, &["e", "f"]) + &fe) + &word(&env, &["h", "h"]).scale(&half);
    assert_eq!(env.quadratic_casimir::<HPoly>(), c);
}

#[test]
fn sl3_nu_from_root_values() {
    let env = Envelope::sl(3).unwrap();
    let g = env.g();
    for k in 0..2 {
        let t = g.t(k);
        let tm = as_matrix(g, &t);
        // nu(t) = 1/2 sum_{i<j} (t_ii - t_jj) f_ij e_ij
        let mut expected = UElement::zero();
        for i in 0..3 {
            for j in i + 1..3 {
                let alpha = &tm[i][i] - &tm[j][j];
                let c = HPoly::constant(alpha / q(2));
                let fe = word(&env, &[&format!("f{}{}", i + 1, j + 1), &format!("e{}{}", i + 1, j + 1)]);
                expected += &fe.scale(&c);
            }
        }
        assert_eq!(env.nu(&t).unwrap(), expected, "nu(t_{})", k + 1);
        let values: Vec<Rational> = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).map(|(i, j)| &tm[i][i] - &tm[j][j]).collect();
        if k == 0 {
            let mut sorted = values.clone();
            sorted.sort();
            assert_eq!(sorted, vec![q(-1), q(1), q(2)]);
        }
    }
}
