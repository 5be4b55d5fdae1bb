//! The polynomial current algebra `g[u]`, its degree `-1` cobracket and the
//! presentation by degree-zero and degree-one generators.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::envelope::pbw::{LieBasis, Monomial, Straightener};
use crate::envelope::render;
use crate::envelope::Tensor;
use crate::exactnum::{int, rank, HPoly, Lin, Rational, SparseMatrix};
use crate::liealg::{LieAlgebraData, LieBasisIndex, LieElement};
use crate::report::{Check, CheckSet, Report};

/// The basis vector `x u^n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cur(pub LieBasisIndex, pub u32);

pub type CurrentElement = Lin<Cur, Rational>;
/// Element of `g[u]^{(x) k}`; for `k = 2` this is `(g (x) g)[u, v]`.
pub type CurrentTensor = Tensor<Cur, Rational>;

/// Brackets of `g[u]` for the straightening engine.
pub struct CurrentLetters(pub Arc<LieAlgebraData>);

impl LieBasis for CurrentLetters {
    type Letter = Cur;

    fn bracket_letters(&self, a: &Cur, b: &Cur) -> Vec<(Cur, Rational)> {
        self.0.bracket_basis(a.0, b.0).iter().map(|(k, c)| (Cur(*k, a.1 + b.1), c.clone())).collect()
    }
}

pub type CurrentMonomial = Monomial<Cur>;
/// Element of `U(g[u])` in PBW normal form.
pub type CurrentUElement = Lin<CurrentMonomial, Rational>;

/// `g[u]` together with the tensor used to build its cobracket.
pub struct CurrentAlgebra {
    g: Arc<LieAlgebraData>,
    omega: Vec<(LieBasisIndex, LieBasisIndex, Rational)>,
    pbw: Straightener<CurrentLetters>,
}

impl CurrentAlgebra {
    pub fn new(g: Arc<LieAlgebraData>) -> Self {
        let omega = g.casimir_terms().to_vec();
        Self::with_omega(g, omega)
    }

    /// Uses `omega` in place of the Casimir tensor. Only meaningful for
    /// checking that the bialgebra suite notices a wrong tensor.
    pub fn with_omega(g: Arc<LieAlgebraData>, omega: Vec<(LieBasisIndex, LieBasisIndex, Rational)>) -> Self {
        Self { pbw: Straightener::new(CurrentLetters(g.clone())), g, omega }
    }

    pub fn g(&self) -> &Arc<LieAlgebraData> {
        &self.g
    }

    /// `x u^n` for a Lie algebra element `x`.
    pub fn embed(&self, x: &LieElement, n: u32) -> CurrentElement {
        x.iter().map(|(b, c)| (Cur(*b, n), c.clone())).collect()
    }

    pub fn basis_element(&self, b: LieBasisIndex, n: u32) -> CurrentElement {
        Lin::basis(Cur(b, n))
    }

    /// `[x u^n, y u^m] = [x, y] u^{n+m}`.
    pub fn bracket(&self, f: &CurrentElement, g: &CurrentElement) -> CurrentElement {
        let mut out = Lin::zero();
        for (a, x) in f {
            for (b, y) in g {
                let c = x * y;
                for (k, s) in self.g.bracket_basis(a.0, b.0) {
                    out.add_term(Cur(*k, a.1 + b.1), &c * s);
                }
            }
        }
        out
    }

    /// `[x (x) 1, Omega]` with both slots at the given `u`, `v` degrees.
    fn omega_commutator(&self, x: LieBasisIndex, a: u32, b: u32) -> CurrentTensor {
        let mut out = Tensor::zero(2);
        for (l, m, c) in &self.omega {
            for (k, s) in self.g.bracket_basis(x, *l) {
                out.add_term(vec![Cur(*k, a), Cur(*m, b)], c * s);
            }
        }
        out
    }

    /// `delta(x u^n) = sum_{a+b=n-1} [x (x) 1, Omega] u^a v^b`.
    pub fn cobracket(&self, f: &CurrentElement) -> CurrentTensor {
        let mut out = Tensor::zero(2);
        for (Cur(x, n), c) in f {
            for a in 0..*n {
                let t = self.omega_commutator(*x, a, n - 1 - a);
                out.add_scaled(&t, c).expect("arity two");
            }
        }
        out
    }

    /// The diagonal adjoint action of `f` on a tensor.
    pub fn act(&self, f: &CurrentElement, t: &CurrentTensor) -> CurrentTensor {
        let mut out = Tensor::zero(t.arity());
        for i in 0..t.arity() {
            let part = t.map_slot(i, 1, |slot| {
                let y = self.bracket(f, &Lin::basis(*slot));
                y.into_iter().map(|(k, c)| (vec![k], c)).collect()
            });
            out.add_assign(&part).expect("same arity");
        }
        out
    }

    /// Applies `delta` to slot `i`.
    pub fn cobracket_slot(&self, t: &CurrentTensor, i: usize) -> CurrentTensor {
        t.map_slot(i, 2, |slot| {
            self.cobracket(&Lin::basis(*slot)).into_terms().into_iter().collect()
        })
    }

    /// `(u - v) delta(f)`, computed from the closed form
    /// `[f(u) (x) 1 + 1 (x) f(v), Omega]`.
    pub fn cleared_cobracket(&self, f: &CurrentElement) -> CurrentTensor {
        let mut out = Tensor::zero(2);
        for (Cur(x, n), c) in f {
            let mut w = Tensor::zero(2);
            for (l, m, r) in &self.omega {
                for (k, s) in self.g.bracket_basis(*x, *l) {
                    w.add_term(vec![Cur(*k, *n), Cur(*m, 0)], r * s);
                }
                for (k, s) in self.g.bracket_basis(*x, *m) {
                    w.add_term(vec![Cur(*l, 0), Cur(*k, *n)], r * s);
                }
            }
            out.add_scaled(&w, c).expect("arity two");
        }
        out
    }

    /// Multiplies a two-slot tensor by `u - v`.
    pub fn times_u_minus_v(t: &CurrentTensor) -> CurrentTensor {
        let mut out = Tensor::zero(2);
        for (s, c) in t.iter() {
            out.add_term(vec![Cur(s[0].0, s[0].1 + 1), s[1]], c.clone());
            out.add_term(vec![s[0], Cur(s[1].0, s[1].1 + 1)], -c);
        }
        out
    }

    pub fn straightener(&self) -> &Straightener<CurrentLetters> {
        &self.pbw
    }

    pub fn u_mul(&self, a: &CurrentUElement, b: &CurrentUElement) -> CurrentUElement {
        self.pbw.mul(a, b)
    }

    pub fn u_bracket(&self, a: &CurrentUElement, b: &CurrentUElement) -> CurrentUElement {
        self.pbw.bracket(a, b)
    }

    /// `f` regarded as an element of `U(g[u])`.
    pub fn to_envelope(&self, f: &CurrentElement) -> CurrentUElement {
        f.iter().map(|(k, c)| (Monomial::letter(*k), c.clone())).collect()
    }

    pub fn render_letter(&self, c: &Cur) -> String {
        let x = self.g.name(c.0);
        match c.1 {
            0 => x.to_string(),
            1 => format!("{x}*u"),
            n => format!("{x}*u^{n}"),
        }
    }

    pub fn render(&self, f: &CurrentElement) -> String {
        render::render_terms(f.iter().map(|(k, c)| (self.render_letter(k), HPoly::constant(c.clone()))))
    }

    pub fn render_tensor(&self, t: &CurrentTensor) -> String {
        render::render_terms(t.iter().map(|(slots, c)| {
            let key = render::render_slots(slots.iter().map(|s| self.render_letter(s)));
            (key, HPoly::constant(c.clone()))
        }))
    }

    pub fn render_u(&self, a: &CurrentUElement) -> String {
        render::render_terms(a.iter().map(|(m, c)| {
            let key = m.letters().iter().map(|l| self.render_letter(l)).collect::<Vec<_>>().join("*");
            (key, HPoly::constant(c.clone()))
        }))
    }

    fn basis_upto(&self, n_max: u32) -> Vec<Cur> {
        (0..=n_max).flat_map(|n| self.g.basis().map(move |b| Cur(b, n))).collect()
    }
}

fn residual_t(alg: &CurrentAlgebra, t: &CurrentTensor) -> Option<String> {
    (!t.is_zero()).then(|| alg.render_tensor(t))
}

/// Antisymmetry, the cocycle identity and co-Jacobi on every basis element
/// `x u^n` with `n <= n_max`, together with the grading of `delta` and the
/// closed-form cross-check.
pub fn verify_bialgebra(alg: &CurrentAlgebra, n_max: u32) -> Report {
    let basis = alg.basis_upto(n_max);
    let mut set = CheckSet::new();
    for &xi in &basis {
        let tag = alg.render_letter(&xi);
        set.residual(format!("antisymmetry/{tag}"), "delta + delta^21 = 0", move || {
            let d = alg.cobracket(&Lin::basis(xi));
            residual_t(alg, &d.add(&d.reversed()).expect("arity two"))
        });
        let grading_id = format!("grading/{tag}");
        set.push(move || {
            let d = alg.cobracket(&Lin::basis(xi));
            let bad: Vec<String> = d
                .iter()
                .filter(|(s, _)| s[0].1 + s[1].1 + 1 != xi.1)
                .map(|(s, _)| render::render_slots(s.iter().map(|l| alg.render_letter(l))))
                .collect();
            Check::boolean(grading_id, "delta has degree -1", bad.is_empty(), || bad.join(", "))
        });
        set.residual(
            format!("co-jacobi/{tag}"),
            "(Id + (1 2 3) + (1 3 2)) (delta (x) Id) delta = 0",
            move || {
                let dd = alg.cobracket_slot(&alg.cobracket(&Lin::basis(xi)), 0);
                let mut s = dd.clone();
                s.add_assign(&dd.permute(&[2, 0, 1])).expect("arity three");
                s.add_assign(&dd.permute(&[1, 2, 0])).expect("arity three");
                residual_t(alg, &s)
            },
        );
        set.residual(
            format!("closed-form/{tag}"),
            "(u - v) delta(f) = [f(u) (x) 1 + 1 (x) f(v), Omega]",
            move || {
                let f = Lin::basis(xi);
                let lhs = CurrentAlgebra::times_u_minus_v(&alg.cobracket(&f));
                residual_t(alg, &lhs.sub(&alg.cleared_cobracket(&f)).expect("arity two"))
            },
        );
    }
    for (i, &a) in basis.iter().enumerate() {
        for &b in &basis[i + 1..] {
            let id = format!("cocycle/{}/{}", alg.render_letter(&a), alg.render_letter(&b));
            set.residual(id, "delta([f,g]) = [delta(f), Delta(g)] + [Delta(f), delta(g)]", move || {
                let (f, g) = (Lin::basis(a), Lin::basis(b));
                let lhs = alg.cobracket(&alg.bracket(&f, &g));
                // [delta(f), Delta(g)] = -g . delta(f) and [Delta(f), delta(g)] = f . delta(g)
                let rhs = alg.act(&f, &alg.cobracket(&g)).sub(&alg.act(&g, &alg.cobracket(&f))).expect("arity two");
                residual_t(alg, &lhs.sub(&rhs).expect("arity two"))
            });
        }
    }
    Report::new("bialgebra", alg.g().type_name(), set.run())
}

/// The images under `iota(x) -> x`, `G(x) -> x u` of the defining relations
/// of the minimal presentation.
pub fn verify_min_presentation(alg: &CurrentAlgebra) -> Report {
    let g = alg.g();
    let iota = |x: LieBasisIndex| alg.basis_element(x, 0);
    let big_g = |x: &LieElement| alg.embed(x, 1);
    let mut set = CheckSet::new();
    for x in g.basis() {
        for y in g.basis() {
            let (nx, ny) = (g.name(x).to_string(), g.name(y).to_string());
            set.residual(format!("iota-lie/{nx}/{ny}"), "iota([x,y]) = [iota(x), iota(y)]", move || {
                let lhs = alg.embed(&g.bracket(&LieElement::basis(x), &LieElement::basis(y)), 0);
                let d = &lhs - &alg.bracket(&iota(x), &iota(y));
                (!d.is_zero()).then(|| alg.render(&d))
            });
            set.residual(format!("G-equivariant/{nx}/{ny}"), "G([x,y]) = [iota(x), G(y)]", move || {
                let lhs = big_g(&g.bracket(&LieElement::basis(x), &LieElement::basis(y)));
                let d = &lhs - &alg.bracket(&iota(x), &big_g(&LieElement::basis(y)));
                (!d.is_zero()).then(|| alg.render(&d))
            });
        }
    }
    if g.is_sl2() {
        set.residual("sl2/[[G(e),G(f)],G(h)]", "[[G(e), G(f)], G(h)] = 0", move || {
            let named = |s: &str| big_g(&LieElement::basis(g.lookup(s).expect("sl2 letter")));
            let d = alg.bracket(&alg.bracket(&named("e"), &named("f")), &named("h"));
            (!d.is_zero()).then(|| alg.render(&d))
        });
    } else {
        for i in 0..g.rank() {
            for j in 0..g.rank() {
                set.residual(format!("cartan/[G(t{}),G(t{})]", i + 1, j + 1), "[G(t_i), G(t_j)] = 0", move || {
                    let d = alg.bracket(&big_g(&g.t(i)), &big_g(&g.t(j)));
                    (!d.is_zero()).then(|| alg.render(&d))
                });
            }
        }
    }
    Report::new("min-presentation", g.type_name(), set.run())
}

/// Rank of a family of elements of the slice `g u^n`.
fn slice_rank(g: &LieAlgebraData, vs: &[CurrentElement]) -> usize {
    let mut m = SparseMatrix::new(vs.len(), g.dim());
    for (r, v) in vs.iter().enumerate() {
        for (k, c) in v {
            m.set(r, k.0.index(), c.clone());
        }
    }
    rank(&m)
}

/// Picks a maximal independent subfamily.
fn independent(g: &LieAlgebraData, vs: Vec<CurrentElement>) -> Vec<CurrentElement> {
    let mut out: Vec<CurrentElement> = Vec::new();
    for v in vs {
        if v.is_zero() {
            continue;
        }
        out.push(v);
        if slice_rank(g, &out) < out.len() {
            out.pop();
        }
        if out.len() == g.dim() {
            break;
        }
    }
    out
}

/// Dimension, for each `n <= n_max`, of the degree-`n` part of the Lie
/// subalgebra generated by `x` and `x u`.
pub fn generated_slice_dims(alg: &CurrentAlgebra, n_max: u32) -> Vec<usize> {
    let g = alg.g();
    let gens = |n: u32| g.basis().map(|b| alg.basis_element(b, n)).collect::<Vec<_>>();
    let mut slices: Vec<Vec<CurrentElement>> = vec![independent(g, gens(0))];
    if n_max >= 1 {
        slices.push(independent(g, gens(1)));
    }
    for n in 2..=n_max as usize {
        // right-normed brackets: degree n is [S_1, S_{n-1}] closed under ad S_0
        let mut cand = Vec::new();
        for a in &slices[1] {
            for b in &slices[n - 1] {
                cand.push(alg.bracket(a, b));
            }
        }
        let mut cur = independent(g, cand);
        loop {
            let mut grown = cur.clone();
            for a in &slices[0] {
                for b in &cur {
                    grown.push(alg.bracket(a, b));
                }
            }
            let next = independent(g, grown);
            if next.len() == cur.len() {
                break;
            }
            cur = next;
        }
        slices.push(cur);
    }
    slices.iter().map(Vec::len).collect()
}

pub fn verify_generation(alg: &CurrentAlgebra, n_max: u32) -> Report {
    let dim = alg.g().dim();
    let checks = generated_slice_dims(alg, n_max)
        .into_iter()
        .enumerate()
        .map(|(n, d)| {
            Check::boolean(format!("slice/u^{n}"), "generated slice g u^n has dimension dim g", d == dim, || {
                format!("dimension {d}, expected {dim}")
            })
        })
        .collect();
    Report::new("generation", alg.g().type_name(), checks)
}

/// Random element of `g[u]` with degrees at most `n_max` and small integer
/// coefficients.
pub fn random_element(alg: &CurrentAlgebra, n_max: u32, rng: &mut impl Rng) -> CurrentElement {
    let mut out = Lin::zero();
    for _ in 0..3 {
        let b = LieBasisIndex(rng.gen_range(0..alg.g().dim()) as u16);
        out.add_term(Cur(b, rng.gen_range(0..=n_max)), int(rng.gen_range(-3..=3)));
    }
    out
}

/// Jacobi identity of `g[u]` on seeded random triples.
pub fn check_jacobi(alg: &CurrentAlgebra, n_max: u32, trials: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|t| {
            let (x, y, z) = (
                random_element(alg, n_max, &mut rng),
                random_element(alg, n_max, &mut rng),
                random_element(alg, n_max, &mut rng),
            );
            let mut s = alg.bracket(&alg.bracket(&x, &y), &z);
            s += &alg.bracket(&alg.bracket(&y, &z), &x);
            s += &alg.bracket(&alg.bracket(&z, &x), &y);
            Check::from_residual(format!("jacobi/{t:03}"), "[[x,y],z] + cyclic = 0", (!s.is_zero()).then(|| alg.render(&s)))
        })
        .collect()
}
