//! The free model: the algebra over `Q[hbar]` generated by `I(x)` and `J(x)`
//! subject only to "`I` is a Lie map and `J` is equivariant", with its
//! deformed coproduct, counit and antipode.
//!
//! Normal form: a word in `J`-letters followed by a PBW monomial in the
//! `I`-letters. An `I`-letter is moved right past a `J`-letter by
//! `I(x) J(y) = J(y) I(x) + J([x, y])`; `J`-letters are never reordered.

mod sl2;
mod suites;

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

pub use sl2::{verify_sl2_steps, Sl2Elements};
pub use suites::{
    relation_defect_cartan, relation_defect_sl2, verify_coproduct_well_defined, verify_hopf,
    verify_primitive_defects, verify_t_identities,
};

use crate::current::{CurrentAlgebra, CurrentUElement, Cur};
use crate::envelope::pbw::{split_monomial, Monomial};
use crate::envelope::{render, Envelope, PbwMonomial, Tensor, TensorElement, UElement};
use crate::exactnum::{int, rat, Coeff, HPoly, Lin, Rational};
use crate::fault::Fault;
use crate::liealg::{LieAlgebraData, LieBasisIndex, LieElement};

/// A `J`-word followed by a PBW monomial of `I`-letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FmWord {
    pub j: Vec<LieBasisIndex>,
    pub i: PbwMonomial,
}

impl FmWord {
    pub fn unit() -> Self {
        Self::default()
    }

    /// Grading degree: one per `J`-letter.
    pub fn degree(&self) -> usize {
        self.j.len()
    }
}

pub type FmElement = Lin<FmWord, HPoly>;
pub type FmTensor = Tensor<FmWord, HPoly>;
type WordLin = Lin<FmWord, Rational>;

pub struct FreeModel {
    env: Arc<Envelope>,
    /// Coefficient `s` of `hbar [I(x) (x) 1, Omega]` in `Delta(J(x))`.
    cocycle: Rational,
    c_g: Rational,
    push: RwLock<HashMap<(PbwMonomial, Vec<LieBasisIndex>), WordLin>>,
    delta: RwLock<HashMap<FmWord, FmTensor>>,
}

impl std::fmt::Debug for FreeModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FreeModel({}, s = {})", self.g().type_name(), self.cocycle)
    }
}

impl FreeModel {
    pub fn new(env: Arc<Envelope>) -> crate::Result<Self> {
        Self::with_fault(env, None)
    }

    /// [`Fault::OmegaSign`] flips the sign of the Casimir term of `Delta(J)`
    /// and [`Fault::CocycleScale`] doubles it; other faults do not touch the
    /// model.
    pub fn with_fault(env: Arc<Envelope>, fault: Option<Fault>) -> crate::Result<Self> {
        let cocycle = match fault {
            Some(Fault::OmegaSign) => rat(-1, 2),
            Some(Fault::CocycleScale) => int(1),
            _ => rat(1, 2),
        };
        let c_g = env.g().casimir_adjoint_eigenvalue()?;
        Ok(Self { env, cocycle, c_g, push: RwLock::default(), delta: RwLock::default() })
    }

    pub fn sl(n: usize) -> crate::Result<Self> {
        Self::new(Envelope::sl(n)?)
    }

    pub fn env(&self) -> &Arc<Envelope> {
        &self.env
    }

    pub fn g(&self) -> &Arc<LieAlgebraData> {
        self.env.g()
    }

    pub fn casimir_eigenvalue(&self) -> &Rational {
        &self.c_g
    }

    pub fn one(&self) -> FmElement {
        Lin::basis(FmWord::unit())
    }

    pub fn scalar(&self, c: HPoly) -> FmElement {
        Lin::term(FmWord::unit(), c)
    }

    pub fn iota(&self, b: LieBasisIndex) -> FmElement {
        Lin::basis(FmWord { j: Vec::new(), i: Monomial::letter(b) })
    }

    pub fn j(&self, b: LieBasisIndex) -> FmElement {
        Lin::basis(FmWord { j: vec![b], i: Monomial::unit() })
    }

    pub fn iota_lie(&self, x: &LieElement) -> FmElement {
        x.iter().map(|(b, c)| (FmWord { j: Vec::new(), i: Monomial::letter(*b) }, HPoly::constant(c.clone()))).collect()
    }

    pub fn j_lie(&self, x: &LieElement) -> FmElement {
        x.iter().map(|(b, c)| (FmWord { j: vec![*b], i: Monomial::unit() }, HPoly::constant(c.clone()))).collect()
    }

    /// The image of `U(g)` under `I`.
    pub fn from_u(&self, a: &UElement) -> FmElement {
        a.iter().map(|(m, c)| (FmWord { j: Vec::new(), i: m.clone() }, c.clone())).collect()
    }

    /// `I (x) ... (x) I` applied to a tensor over `U(g)`.
    pub fn from_u_tensor(&self, t: &TensorElement) -> FmTensor {
        let mut out = Tensor::zero(t.arity());
        for (slots, c) in t.iter() {
            out.add_term(slots.iter().map(|m| FmWord { j: Vec::new(), i: m.clone() }).collect(), c.clone());
        }
        out
    }

    /// `I(m) J(w)` in normal form.
    fn push(&self, m: &PbwMonomial, w: &[LieBasisIndex]) -> WordLin {
        if m.is_unit() || w.is_empty() {
            return Lin::basis(FmWord { j: w.to_vec(), i: m.clone() });
        }
        let key = (m.clone(), w.to_vec());
        if let Some(hit) = self.push.read().get(&key) {
            return hit.clone();
        }
        let letters = m.letters();
        let x = letters[letters.len() - 1];
        let prefix = Monomial::from_sorted(letters[..letters.len() - 1].to_vec());
        let pbw = self.env.straightener();
        let mut out = WordLin::zero();
        // I(m') (J(w) I(x) + sum_k J(.. [x, w_k] ..))
        for (word, c) in &self.push(&prefix, w) {
            for (tail, r) in &pbw.mul_letter(&word.i, &x) {
                out.add_term(FmWord { j: word.j.clone(), i: tail.clone() }, c * r);
            }
        }
        for k in 0..w.len() {
            for (y, c) in self.g().bracket_basis(x, w[k]) {
                let mut w2 = w.to_vec();
                w2[k] = *y;
                out.add_scaled(&self.push(&prefix, &w2), c);
            }
        }
        self.push.write().insert(key, out.clone());
        out
    }

    pub fn word_mul(&self, a: &FmWord, b: &FmWord) -> WordLin {
        let pbw = self.env.straightener();
        let mut out = WordLin::zero();
        for (mid, c) in &self.push(&a.i, &b.j) {
            let mut j = a.j.clone();
            j.extend(mid.j.iter().copied());
            for (tail, r) in &pbw.mul_monomials(&mid.i, &b.i) {
                out.add_term(FmWord { j: j.clone(), i: tail.clone() }, c * r);
            }
        }
        out
    }

    pub fn mul(&self, a: &FmElement, b: &FmElement) -> FmElement {
        let mut out = FmElement::zero();
        for (u, x) in a {
            for (v, y) in b {
                out.add_scaled_rational(&self.word_mul(u, v), &x.mul_ref(y));
            }
        }
        out
    }

    pub fn product(&self, factors: &[&FmElement]) -> FmElement {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn bracket(&self, a: &FmElement, b: &FmElement) -> FmElement {
        &self.mul(a, b) - &self.mul(b, a)
    }

    /// `[I(x), a]`.
    pub fn ad_iota(&self, x: &LieElement, a: &FmElement) -> FmElement {
        self.bracket(&self.iota_lie(x), a)
    }

    pub fn t_mul(&self, a: &FmTensor, b: &FmTensor) -> crate::Result<FmTensor> {
        a.mul_with(b, |x, y| self.word_mul(x, y))
    }

    pub fn t_bracket(&self, a: &FmTensor, b: &FmTensor) -> crate::Result<FmTensor> {
        self.t_mul(a, b)?.sub(&self.t_mul(b, a)?)
    }

    /// `a` in slot `i` of an arity-`n` tensor.
    pub fn embed(&self, a: &FmElement, i: usize, n: usize) -> FmTensor {
        let mut out = Tensor::zero(n);
        for (w, c) in a {
            let mut slots = vec![FmWord::unit(); n];
            slots[i] = w.clone();
            out.add_term(slots, c.clone());
        }
        out
    }

    pub fn box_n(&self, a: &FmElement, n: usize) -> FmTensor {
        let mut out = Tensor::zero(n);
        for i in 0..n {
            out.add_assign(&self.embed(a, i, n)).expect("same arity");
        }
        out
    }

    /// `a_1 (x) ... (x) a_k`.
    pub fn pure(&self, slots: &[&FmElement]) -> FmTensor {
        let mut out = Tensor::pure(Vec::new(), HPoly::one());
        for s in slots {
            out = out.outer(&self.embed(s, 0, 1));
        }
        out
    }

    /// `Omega` in the `I`-letters.
    pub fn omega(&self) -> FmTensor {
        self.from_u_tensor(&self.env.casimir_tensor())
    }

    /// `[I(x) (x) 1, Omega_I]`.
    pub fn omega_commutator(&self, x: &LieElement) -> FmTensor {
        self.from_u_tensor(&self.env.omega_commutator(x))
    }

    fn delta_j(&self, b: LieBasisIndex) -> FmTensor {
        let mut out = self.box_n(&self.j(b), 2);
        let corr = self.omega_commutator(&LieElement::basis(b)).scale(&HPoly::monomial(1, self.cocycle.clone()));
        out.add_assign(&corr).expect("arity two");
        out
    }

    pub fn word_coproduct(&self, w: &FmWord) -> FmTensor {
        if let Some(hit) = self.delta.read().get(w) {
            return hit.clone();
        }
        let mut acc = Tensor::pure(vec![FmWord::unit(); 2], HPoly::one());
        for b in &w.j {
            acc = self.t_mul(&acc, &self.delta_j(*b)).expect("arity two");
        }
        let mut tail = Tensor::zero(2);
        for (x, y, c) in split_monomial(&w.i) {
            tail.add_term(vec![FmWord { j: Vec::new(), i: x }, FmWord { j: Vec::new(), i: y }], HPoly::constant(c));
        }
        let out = self.t_mul(&acc, &tail).expect("arity two");
        self.delta.write().insert(w.clone(), out.clone());
        out
    }

    /// The algebra morphism with `Delta(I(x)) = box(I(x))` and
    /// `Delta(J(x)) = box(J(x)) + s hbar [I(x) (x) 1, Omega]`.
    pub fn coproduct(&self, a: &FmElement) -> FmTensor {
        let mut out = Tensor::zero(2);
        for (w, c) in a {
            out.add_scaled(&self.word_coproduct(w), c).expect("arity two");
        }
        out
    }

    /// `Delta` applied to slot `i`.
    pub fn coproduct_slot(&self, t: &FmTensor, i: usize) -> FmTensor {
        let mut out = Tensor::zero(t.arity() + 1);
        for (slots, c) in t.iter() {
            for (img, d) in self.word_coproduct(&slots[i]).iter() {
                let mut s = slots[..i].to_vec();
                s.extend(img.iter().cloned());
                s.extend(slots[i + 1..].iter().cloned());
                out.add_term(s, c * d);
            }
        }
        out
    }

    /// `(Delta - box)(a)`.
    pub fn coproduct_defect(&self, a: &FmElement) -> FmTensor {
        self.coproduct(a).sub(&self.box_n(a, 2)).expect("arity two")
    }

    /// The algebra morphism to `Q[hbar]` killing every generator.
    pub fn counit(&self, a: &FmElement) -> HPoly {
        a.get(&FmWord::unit()).cloned().unwrap_or_else(HPoly::zero)
    }

    /// `eps` applied to slot `i`, lowering the arity.
    pub fn counit_slot(&self, t: &FmTensor, i: usize) -> FmTensor {
        let mut out = Tensor::zero(t.arity() - 1);
        for (slots, c) in t.iter() {
            if slots[i] == FmWord::unit() {
                let mut s = slots.clone();
                s.remove(i);
                out.add_term(s, c.clone());
            }
        }
        out
    }

    /// `S(J(x)) = -J(x) + hbar/4 c_g I(x)`.
    fn antipode_j(&self, b: LieBasisIndex) -> FmElement {
        let mut out = -&self.j(b);
        out.add_scaled(&self.iota(b), &HPoly::monomial(1, &self.c_g * rat(1, 4)));
        out
    }

    /// The anti-automorphism with `S(I(x)) = -I(x)` and the antipode of
    /// `J(x)` fixed above.
    pub fn antipode(&self, a: &FmElement) -> FmElement {
        let mut out = FmElement::zero();
        for (w, c) in a {
            let m: UElement = Lin::basis(w.i.clone());
            let mut acc = self.from_u(&self.env.antipode(&m));
            for b in w.j.iter().rev() {
                acc = self.mul(&acc, &self.antipode_j(*b));
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// Applies `f` to slot `i` of every pure tensor.
    pub fn map_slot(&self, t: &FmTensor, i: usize, f: impl Fn(&FmElement) -> FmElement) -> FmTensor {
        let mut out = Tensor::zero(t.arity());
        for (slots, c) in t.iter() {
            for (w, d) in &f(&Lin::basis(slots[i].clone())) {
                let mut s = slots.clone();
                s[i] = w.clone();
                out.add_term(s, c.mul_ref(d));
            }
        }
        out
    }

    /// Multiplies the slots of each pure tensor together.
    pub fn slot_multiply(&self, t: &FmTensor) -> FmElement {
        let mut out = FmElement::zero();
        for (slots, c) in t.iter() {
            let mut acc: WordLin = Lin::basis(FmWord::unit());
            for s in slots {
                let mut next = WordLin::zero();
                for (w, r) in &acc {
                    next.add_scaled(&self.word_mul(w, s), r);
                }
                acc = next;
            }
            out.add_scaled_rational(&acc, c);
        }
        out
    }

    /// Sets `hbar = 0` and maps `I(x) -> x`, `J(x) -> x u` into `U(g[u])`.
    pub fn classical_limit(&self, cur: &CurrentAlgebra, a: &FmElement) -> CurrentUElement {
        let mut out = CurrentUElement::zero();
        let pbw = cur.straightener();
        for (w, c) in a {
            let c0 = c.at_zero();
            if c0.c_is_zero() {
                continue;
            }
            let mut word: Vec<Cur> = w.j.iter().map(|b| Cur(*b, 1)).collect();
            word.extend(w.i.letters().iter().map(|b| Cur(*b, 0)));
            out.add_scaled_rational(&pbw.normal_order(&word), &c0);
        }
        out
    }

    /// Whether every term has the same total degree (`J`-letters plus powers
    /// of `hbar`); zero counts as homogeneous of any degree.
    pub fn homogeneous_degree(&self, a: &FmElement) -> Option<Option<usize>> {
        degrees(a.iter().map(|(w, c)| (w.degree(), c)))
    }

    pub fn tensor_homogeneous_degree(&self, t: &FmTensor) -> Option<Option<usize>> {
        degrees(t.iter().map(|(s, c)| (s.iter().map(FmWord::degree).sum(), c)))
    }

    pub fn render_word(&self, w: &FmWord) -> String {
        let g = self.g();
        let mut parts: Vec<String> = w.j.iter().map(|b| format!("J({})", g.name(*b))).collect();
        parts.extend(w.i.letters().iter().map(|b| format!("I({})", g.name(*b))));
        parts.join("*")
    }

    pub fn render(&self, a: &FmElement) -> String {
        render::render_terms(a.iter().map(|(w, c)| (self.render_word(w), c.clone())))
    }

    pub fn render_tensor(&self, t: &FmTensor) -> String {
        render::render_terms(
            t.iter().map(|(s, c)| (render::render_slots(s.iter().map(|w| self.render_word(w))), c.clone())),
        )
    }
}

fn degrees<'a>(items: impl Iterator<Item = (usize, &'a HPoly)>) -> Option<Option<usize>> {
    let mut seen: Option<usize> = None;
    for (d, c) in items {
        for (k, _) in c.terms() {
            let t = d + k as usize;
            match seen {
                None => seen = Some(t),
                Some(s) if s != t => return None,
                _ => {}
            }
        }
    }
    Some(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn letter(fm: &FreeModel, s: &str) -> LieBasisIndex {
        fm.g().lookup(s).unwrap()
    }

    fn random_element(fm: &FreeModel, rng: &mut ChaCha8Rng) -> FmElement {
        let dim = fm.g().dim();
        let mut out = FmElement::zero();
        for _ in 0..2 {
            let mut t = fm.scalar(HPoly::monomial(rng.gen_range(0..2), int(rng.gen_range(-2..=2))));
            for _ in 0..rng.gen_range(0..=2) {
                let b = LieBasisIndex(rng.gen_range(0..dim) as u16);
                let gen = if rng.gen_bool(0.5) { fm.j(b) } else { fm.iota(b) };
                t = fm.mul(&t, &gen);
            }
            out += &t;
        }
        out
    }

    #[test]
    fn rewrite_examples() {
        let fm = FreeModel::sl(2).unwrap();
        let (e, f, h) = (letter(&fm, "e"), letter(&fm, "f"), letter(&fm, "h"));
        assert_eq!(fm.render(&fm.mul(&fm.iota(e), &fm.j(f))), "J(f)*I(e) + J(h)");
        assert_eq!(fm.render(&fm.mul(&fm.j(e), &fm.j(f))), "J(e)*J(f)");
        assert_eq!(fm.render(&fm.mul(&fm.iota(e), &fm.iota(f))), "I(f)*I(e) + I(h)");
        for x in fm.g().basis() {
            for y in fm.g().basis() {
                let lhs = fm.bracket(&fm.iota(x), &fm.j(y));
                assert_eq!(lhs, fm.j_lie(fm.g().bracket_basis(x, y)));
            }
        }
        let _ = h;
    }

    #[test]
    fn associativity_on_random_triples() {
        for n in [2, 3] {
            let fm = FreeModel::sl(n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11 + n as u64);
            for _ in 0..15 {
                let (a, b, c) = (random_element(&fm, &mut rng), random_element(&fm, &mut rng), random_element(&fm, &mut rng));
                assert_eq!(fm.mul(&fm.mul(&a, &b), &c), fm.mul(&a, &fm.mul(&b, &c)));
            }
        }
    }

    #[test]
    fn coproduct_examples_and_coassociativity() {
        let fm = FreeModel::sl(2).unwrap();
        let (e, f, h) = (letter(&fm, "e"), letter(&fm, "f"), letter(&fm, "h"));
        let d = fm.coproduct_defect(&fm.j(h));
        assert_eq!(fm.render_tensor(&d), "-hbar*I(f) (x) I(e) + hbar*I(e) (x) I(f)");
        assert_eq!(fm.coproduct(&fm.one()), fm.pure(&[&fm.one(), &fm.one()]));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut samples = vec![fm.j(e), fm.j(f), fm.j(h), fm.mul(&fm.j(e), &fm.j(f))];
        samples.extend((0..6).map(|_| random_element(&fm, &mut rng)));
        for a in &samples {
            let d = fm.coproduct(a);
            assert_eq!(fm.coproduct_slot(&d, 0), fm.coproduct_slot(&d, 1));
        }
        // algebra morphism on random pairs
        for _ in 0..6 {
            let (a, b) = (random_element(&fm, &mut rng), random_element(&fm, &mut rng));
            let lhs = fm.coproduct(&fm.mul(&a, &b));
            assert_eq!(lhs, fm.t_mul(&fm.coproduct(&a), &fm.coproduct(&b)).unwrap());
        }
    }

    #[test]
    fn grading_is_preserved() {
        let fm = FreeModel::sl(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mono = |fm: &FreeModel, rng: &mut ChaCha8Rng| {
                let mut t = fm.one();
                for _ in 0..rng.gen_range(0..=2) {
                    let b = LieBasisIndex(rng.gen_range(0..3));
                    t = fm.mul(&t, &if rng.gen_bool(0.5) { fm.j(b) } else { fm.iota(b) });
                }
                t
            };
            let (a, b) = (mono(&fm, &mut rng), mono(&fm, &mut rng));
            let (da, db) = (fm.homogeneous_degree(&a).unwrap(), fm.homogeneous_degree(&b).unwrap());
            let p = fm.mul(&a, &b);
            if let (Some(x), Some(y)) = (da, db) {
                assert!(matches!(fm.homogeneous_degree(&p), Some(Some(d)) if d == x + y) || p.is_zero());
                assert!(matches!(fm.tensor_homogeneous_degree(&fm.coproduct(&a)), Some(Some(d)) if d == x));
                assert!(matches!(fm.homogeneous_degree(&fm.antipode(&a)), Some(Some(d)) if d == x));
            }
        }
    }

    #[test]
    fn counit_antipode_and_classical_limit() {
        let fm = FreeModel::sl(2).unwrap();
        let (e, f, h) = (letter(&fm, "e"), letter(&fm, "f"), letter(&fm, "h"));
        assert!(fm.counit(&fm.mul(&fm.j(e), &fm.j(f))).is_zero());
        assert_eq!(fm.antipode(&fm.iota(e)), -&fm.iota(e));
        let cur = CurrentAlgebra::new(fm.g().clone());
        assert_eq!(fm.classical_limit(&cur, &fm.iota(e)), cur.to_envelope(&cur.basis_element(e, 0)));
        let hbar_stuff = fm.mul(&fm.scalar(HPoly::hbar(1)), &fm.j(h));
        assert!(fm.classical_limit(&cur, &hbar_stuff).is_zero());
        let jf = fm.classical_limit(&cur, &fm.mul(&fm.j(f), &fm.iota(e)));
        assert_eq!(cur.render_u(&jf), "f*u*e");
    }
}
