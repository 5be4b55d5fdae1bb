//! The enveloping algebra `U(g)` in PBW normal form, its tensor powers and
//! the standard cocommutative coproduct.
//!
//! Scalars are [`HPoly`] so that deformed identities live in the same types;
//! the cohomology code instantiates the same operations over [`Rational`].

mod gnw;
pub mod pbw;
pub mod render;
pub mod tensor;

use std::sync::Arc;

use num_traits::Zero;

pub use gnw::verify_gnw;
pub use pbw::{LieBasis, Monomial, Straightener};
pub use tensor::Tensor;

use crate::error::{Error, Result};
use crate::exactnum::{rat, Coeff, HPoly, Lin, Rational};
use crate::liealg::{BasisKind, LieAlgebraData, LieBasisIndex, LieElement};

pub type PbwMonomial = Monomial<LieBasisIndex>;
pub type UElement = Lin<PbwMonomial, HPoly>;
/// Element of `U(g)` over the rationals.
pub type QElement = Lin<PbwMonomial, Rational>;
pub type TensorElement = Tensor<PbwMonomial, HPoly>;
pub type QTensor = Tensor<PbwMonomial, Rational>;

/// Sign of a root vector `x_i^+` or `x_i^-`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Brackets of `g` as seen by the straightening engine.
pub struct AdjointLetters(pub Arc<LieAlgebraData>);

impl LieBasis for AdjointLetters {
    type Letter = LieBasisIndex;

    fn bracket_letters(&self, a: &LieBasisIndex, b: &LieBasisIndex) -> Vec<(LieBasisIndex, Rational)> {
        self.0.bracket_basis(*a, *b).iter().map(|(k, c)| (*k, c.clone())).collect()
    }
}

/// `U(g)` for a tabulated `g`, with memoized straightening.
pub struct Envelope {
    g: Arc<LieAlgebraData>,
    pbw: Straightener<AdjointLetters>,
}

impl std::fmt::Debug for Envelope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Envelope({:?})", self.g)
    }
}

impl Envelope {
    pub fn new(g: Arc<LieAlgebraData>) -> Arc<Self> {
        Arc::new(Self { pbw: Straightener::new(AdjointLetters(g.clone())), g })
    }

    /// `U(sl_n)`.
    pub fn sl(n: usize) -> Result<Arc<Self>> {
        Ok(Self::new(LieAlgebraData::sl(n)?))
    }

    pub fn g(&self) -> &Arc<LieAlgebraData> {
        &self.g
    }

    pub fn straightener(&self) -> &Straightener<AdjointLetters> {
        &self.pbw
    }

    pub fn normal_order(&self, word: &[LieBasisIndex]) -> UElement {
        self.pbw.normal_order(word).map_coeffs(|c| HPoly::constant(c.clone()))
    }

    pub fn mul_monomials(&self, m: &PbwMonomial, n: &PbwMonomial) -> QElement {
        self.pbw.mul_monomials(m, n)
    }

    pub fn one<C: Coeff>(&self) -> Lin<PbwMonomial, C> {
        Lin::basis(Monomial::unit())
    }

    pub fn scalar<C: Coeff>(&self, c: C) -> Lin<PbwMonomial, C> {
        Lin::term(Monomial::unit(), c)
    }

    pub fn letter<C: Coeff>(&self, b: LieBasisIndex) -> Lin<PbwMonomial, C> {
        Lin::basis(Monomial::letter(b))
    }

    /// The image of a Lie algebra element.
    pub fn lie<C: Coeff>(&self, x: &LieElement) -> Lin<PbwMonomial, C> {
        let mut out = Lin::zero();
        for (b, c) in x {
            out.add_term(Monomial::letter(*b), C::from_rational(c));
        }
        out
    }

    /// Letter by name, e.g. `e`, `h` or `f12`.
    pub fn named<C: Coeff>(&self, name: &str) -> Result<Lin<PbwMonomial, C>> {
        let b = self.g.lookup(name).ok_or_else(|| Error::UnknownBasis(name.to_string()))?;
        Ok(self.letter(b))
    }

    pub fn mul<C: Coeff>(&self, a: &Lin<PbwMonomial, C>, b: &Lin<PbwMonomial, C>) -> Lin<PbwMonomial, C> {
        self.pbw.mul(a, b)
    }

    /// `ab - ba`.
    pub fn bracket<C: Coeff>(&self, a: &Lin<PbwMonomial, C>, b: &Lin<PbwMonomial, C>) -> Lin<PbwMonomial, C> {
        self.pbw.bracket(a, b)
    }

    pub fn product<C: Coeff>(&self, factors: &[&Lin<PbwMonomial, C>]) -> Lin<PbwMonomial, C> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// `x . a = [x, a]`.
    pub fn adjoint_action<C: Coeff>(&self, x: &LieElement, a: &Lin<PbwMonomial, C>) -> Lin<PbwMonomial, C> {
        self.bracket(&self.lie(x), a)
    }

    /// The counit: the coefficient of the unit monomial.
    pub fn counit<C: Coeff>(&self, a: &Lin<PbwMonomial, C>) -> C {
        a.get(&Monomial::unit()).cloned().unwrap_or_else(C::c_zero)
    }

    /// Antipode: the anti-automorphism with `S(x) = -x` on `g`.
    pub fn antipode<C: Coeff>(&self, a: &Lin<PbwMonomial, C>) -> Lin<PbwMonomial, C> {
        let mut out = Lin::zero();
        for (m, c) in a {
            let mut word: Vec<LieBasisIndex> = m.letters().to_vec();
            word.reverse();
            let sign = if word.len().is_multiple_of(2) { Rational::from_integer(1.into()) } else { rat(-1, 1) };
            out.add_scaled_rational(&self.pbw.normal_order(&word), &c.scale(&sign));
        }
        out
    }

    fn monomial_coproduct(m: &PbwMonomial) -> Vec<(Vec<PbwMonomial>, Rational)> {
        pbw::split_monomial(m).into_iter().map(|(a, b, c)| (vec![a, b], c)).collect()
    }

    /// The algebra morphism extending `Delta(x) = x (x) 1 + 1 (x) x`.
    pub fn coproduct<C: Coeff>(&self, a: &Lin<PbwMonomial, C>) -> Tensor<PbwMonomial, C> {
        let mut out = Tensor::zero(2);
        for (m, c) in a {
            for (slots, r) in Self::monomial_coproduct(m) {
                out.add_term(slots, c.scale(&r));
            }
        }
        out
    }

    /// Applies `Delta` to slot `i`, raising the arity by one.
    pub fn coproduct_slot<C: Coeff>(&self, t: &Tensor<PbwMonomial, C>, i: usize) -> Tensor<PbwMonomial, C> {
        t.map_slot(i, 2, Self::monomial_coproduct)
    }

    /// `a` placed in slot `i` of an arity-`n` tensor, units elsewhere.
    pub fn embed<C: Coeff>(&self, a: &Lin<PbwMonomial, C>, i: usize, n: usize) -> Tensor<PbwMonomial, C> {
        let mut out = Tensor::zero(n);
        for (m, c) in a {
            let mut slots = vec![Monomial::unit(); n];
            slots[i] = m.clone();
            out.add_term(slots, c.clone());
        }
        out
    }

    /// `box_n(a) = a (x) 1 (x) ... + ... + 1 (x) ... (x) a`.
    pub fn box_n<C: Coeff>(&self, a: &Lin<PbwMonomial, C>, n: usize) -> Tensor<PbwMonomial, C> {
        let mut out = Tensor::zero(n);
        for i in 0..n {
            out.add_assign(&self.embed(a, i, n)).expect("same arity");
        }
        out
    }

    /// The unit `1 (x) ... (x) 1`.
    pub fn tensor_one<C: Coeff>(&self, n: usize) -> Tensor<PbwMonomial, C> {
        Tensor::pure(vec![Monomial::unit(); n], C::c_one())
    }

    pub fn pure_tensor<C: Coeff>(&self, slots: &[&Lin<PbwMonomial, C>]) -> Tensor<PbwMonomial, C> {
        let mut out = self.tensor_one(0);
        for s in slots {
            out = out.outer(&self.embed(s, 0, 1));
        }
        out
    }

    pub fn t_mul<C: Coeff>(
        &self,
        a: &Tensor<PbwMonomial, C>,
        b: &Tensor<PbwMonomial, C>,
    ) -> Result<Tensor<PbwMonomial, C>> {
        a.mul_with(b, |x, y| self.pbw.mul_monomials(x, y))
    }

    pub fn t_bracket<C: Coeff>(
        &self,
        a: &Tensor<PbwMonomial, C>,
        b: &Tensor<PbwMonomial, C>,
    ) -> Result<Tensor<PbwMonomial, C>> {
        self.t_mul(a, b)?.sub(&self.t_mul(b, a)?)
    }

    /// Diagonal adjoint action `x . t = [box_n(x), t]`.
    pub fn t_adjoint<C: Coeff>(&self, x: &LieElement, t: &Tensor<PbwMonomial, C>) -> Tensor<PbwMonomial, C> {
        let bx = self.box_n(&self.lie(x), t.arity());
        self.t_bracket(&bx, t).expect("same arity")
    }

    /// Multiplies all slots together.
    pub fn slot_multiply<C: Coeff>(&self, t: &Tensor<PbwMonomial, C>) -> Lin<PbwMonomial, C> {
        let mut out = Lin::zero();
        for (slots, c) in t.iter() {
            let mut acc: QElement = Lin::basis(Monomial::unit());
            for s in slots {
                acc = self.pbw.mul(&acc, &Lin::basis(s.clone()));
            }
            out.add_scaled_rational(&acc, c);
        }
        out
    }

    /// The Casimir tensor `Omega`.
    pub fn casimir_tensor<C: Coeff>(&self) -> Tensor<PbwMonomial, C> {
        let mut out = Tensor::zero(2);
        for (l, m, c) in self.g.casimir_terms() {
            out.add_term(vec![Monomial::letter(*l), Monomial::letter(*m)], C::from_rational(c));
        }
        out
    }

    /// `[x (x) 1, Omega]`.
    pub fn omega_commutator<C: Coeff>(&self, x: &LieElement) -> Tensor<PbwMonomial, C> {
        let x1 = self.embed(&self.lie(x), 0, 2);
        self.t_bracket(&x1, &self.casimir_tensor()).expect("arity two")
    }

    /// `nu(h) = 1/2 sum_{alpha > 0} alpha(h) x_alpha^- x_alpha^+`.
    pub fn nu(&self, h: &LieElement) -> Result<UElement> {
        let mut out = UElement::zero();
        let half = rat(1, 2);
        for (k, (xp, xm)) in self.g.roots().root_vectors.iter().enumerate() {
            let a = self.g.root_value(k, h)?;
            if !a.is_zero() {
                let m = Monomial::from_sorted(vec![*xm, *xp]);
                out.add_term(m, HPoly::constant(&half * a));
            }
        }
        Ok(out)
    }

    /// `w_i^{+-} = +-(alpha_i, alpha_i)^{-1} [nu(t_i), x_i^{+-}]`.
    pub fn w_element(&self, i: usize, sign: Sign) -> UElement {
        let nu = self.nu(&self.g.t(i)).expect("t_i is Cartan");
        self.w_from_nu(i, sign, &nu)
    }

    pub(crate) fn w_from_nu(&self, i: usize, sign: Sign, nu_ti: &UElement) -> UElement {
        let (xp, xm) = self.g.simple_root_vectors(i);
        let x = self.letter(if sign == Sign::Plus { xp } else { xm });
        let scale = Rational::from_integer(sign.value().into()) / self.g.simple_root_pairing(i, i);
        self.bracket(nu_ti, &x).scale_rational(&scale)
    }

    /// The quadratic Casimir `C = m(Omega)`.
    pub fn quadratic_casimir<C: Coeff>(&self) -> Lin<PbwMonomial, C> {
        self.slot_multiply(&self.casimir_tensor())
    }

    /// `kappa = 1/4 h^2 + 1/2 h + fe`, defined for `sl_2` only.
    pub fn kappa(&self) -> Result<UElement> {
        if !self.g.is_sl2() {
            return Err(Error::WrongAlgebra { op: "kappa", expected: "A1", got: self.g.type_name() });
        }
        let (e, f, h) = (self.named("e")?, self.named("f")?, self.named::<HPoly>("h")?);
        let mut out = self.mul(&h, &h).scale_rational(&rat(1, 4));
        out += &h.scale_rational(&rat(1, 2));
        out += &self.mul(&f, &e);
        Ok(out)
    }

    /// `rho_ad(a)` applied to `x`, for `a` in `U(g)`.
    pub fn rho_ad(&self, a: &QElement, x: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (m, c) in a {
            let mut v = x.clone();
            for l in m.letters().iter().rev() {
                v = self.g.bracket(&LieElement::basis(*l), &v);
            }
            out.add_scaled(&v, c);
        }
        out
    }

    pub fn is_cartan_letter(&self, b: LieBasisIndex) -> bool {
        matches!(self.g.kind(b), BasisKind::Cartan(_))
    }

    /// PBW degree of the top filtration piece of `a`.
    pub fn filtration_degree<C: Coeff>(&self, a: &Lin<PbwMonomial, C>) -> usize {
        a.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn render_monomial(&self, m: &PbwMonomial) -> String {
        render::render_product(m.letters().iter().map(|b| self.g.name(*b)))
    }

    pub fn render(&self, a: &UElement) -> String {
        render::render_terms(a.iter().map(|(m, c)| (self.render_monomial(m), c.clone())))
    }

    pub fn render_q(&self, a: &QElement) -> String {
        render::render_terms(a.iter().map(|(m, c)| (self.render_monomial(m), HPoly::constant(c.clone()))))
    }

    pub fn render_tensor(&self, t: &TensorElement) -> String {
        render::render_terms(t.iter().map(|(slots, c)| (self.render_slots(slots), c.clone())))
    }

    pub fn render_qtensor(&self, t: &QTensor) -> String {
        render::render_terms(t.iter().map(|(slots, c)| (self.render_slots(slots), HPoly::constant(c.clone()))))
    }

    fn render_slots(&self, slots: &[PbwMonomial]) -> String {
        render::render_slots(slots.iter().map(|m| self.render_monomial(m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn u(env: &Envelope, name: &str) -> UElement {
        env.named(name).unwrap()
    }

    #[test]
    fn straightening_examples() {
        let env = Envelope::sl(2).unwrap();
        let (e, f, h) = (env.g().lookup("e").unwrap(), env.g().lookup("f").unwrap(), env.g().lookup("h").unwrap());
        let ef = env.normal_order(&[e, f]);
        assert_eq!(env.render(&ef), "f*e + h");
        assert_eq!(env.normal_order(&[f, h, e]), env.mul(&env.mul(&u(&env, "f"), &u(&env, "h")), &u(&env, "e")));
        assert_eq!(env.render(&env.normal_order(&[e, e])), "e*e");
        assert_eq!(env.normal_order(&[f, e]).len(), 1);
    }

    #[test]
    fn brackets_and_actions() {
        let env = Envelope::sl(2).unwrap();
        let (e, f, h) = (u(&env, "e"), u(&env, "f"), u(&env, "h"));
        assert_eq!(env.bracket(&e, &f), h);
        assert!(env.bracket(&e, &e).is_zero());
        let fe = env.mul(&f, &e);
        assert!(env.bracket(&h, &fe).is_zero());
        let hl = LieElement::basis(env.g().lookup("h").unwrap());
        let el = LieElement::basis(env.g().lookup("e").unwrap());
        assert!(env.adjoint_action(&hl, &fe).is_zero());
        assert!(env.adjoint_action::<HPoly>(&hl, &env.one()).is_zero());
        assert_eq!(env.adjoint_action(&el, &f), h);
    }

    #[test]
    fn coproduct_examples() {
        let env = Envelope::sl(2).unwrap();
        let (e, f) = (u(&env, "e"), u(&env, "f"));
        let fe = env.mul(&f, &e);
        assert_eq!(
            env.render_tensor(&env.coproduct(&fe)),
            "1 (x) (f*e) + f (x) e + (f*e) (x) 1 + e (x) f"
        );
        assert_eq!(env.coproduct(&env.one::<HPoly>()), env.tensor_one(2));
        assert_eq!(env.coproduct(&e), env.box_n(&e, 2));
    }

    #[test]
    fn casimir_and_step_one_identity() {
        let env = Envelope::sl(2).unwrap();
        let omega: TensorElement = env.casimir_tensor();
        assert_eq!(env.render_tensor(&omega), "f (x) e + (1/2)*h (x) h + e (x) f");
        assert_eq!(omega.reversed(), omega);
        for x in env.g().basis() {
            let bx = env.box_n(&env.letter::<HPoly>(x), 2);
            assert!(env.t_bracket(&bx, &omega).unwrap().is_zero());
        }
        // [h(x)e - e(x)h, h(x)f - f(x)h] = 2 box(h) Omega
        let (e, f, h) = (u(&env, "e"), u(&env, "f"), u(&env, "h"));
        let a = env.pure_tensor(&[&h, &e]).sub(&env.pure_tensor(&[&e, &h])).unwrap();
        let b = env.pure_tensor(&[&h, &f]).sub(&env.pure_tensor(&[&f, &h])).unwrap();
        let lhs = env.t_bracket(&a, &b).unwrap();
        let rhs = env.t_mul(&env.box_n(&h, 2), &omega).unwrap().scale_rational(&int(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn distinguished_elements() {
        let env = Envelope::sl(2).unwrap();
        let h = LieElement::basis(env.g().lookup("h").unwrap());
        assert_eq!(env.render(&env.nu(&h).unwrap()), "f*e");
        assert!(matches!(env.nu(&LieElement::basis(env.g().lookup("e").unwrap())), Err(Error::NotCartan(_))));
        let c: UElement = env.quadratic_casimir();
        assert_eq!(env.render(&c), "2*f*e + h + (1/2)*h*h");
        let kappa = env.kappa().unwrap();
        assert_eq!(env.render(&kappa), "f*e + (1/2)*h + (1/4)*h*h");
        for x in ["e", "f", "h"] {
            assert!(env.bracket(&kappa, &u(&env, x)).is_zero());
            assert!(env.bracket(&c, &u(&env, x)).is_zero());
        }
        assert!(Envelope::sl(3).unwrap().kappa().is_err());
    }

    #[test]
    fn sl3_nu_values() {
        let env = Envelope::sl(3).unwrap();
        let nu1 = env.nu(&env.g().t(0)).unwrap();
        // alpha_1(t_1) = 2, alpha_2(t_1) = -1, (alpha_1 + alpha_2)(t_1) = 1
        assert_eq!(env.render(&nu1), "f12*e12 - (1/2)*f23*e23 + (1/2)*f13*e13");
        let sum = &env.g().t(0) + &env.g().t(1);
        assert_eq!(env.nu(&sum).unwrap(), &nu1 + &env.nu(&env.g().t(1)).unwrap());
    }

    #[test]
    fn casimir_contraction_identity() {
        for n in 2..=3 {
            let env = Envelope::sl(n).unwrap();
            let cg = env.g().casimir_adjoint_eigenvalue().unwrap();
            for x in env.g().basis() {
                let xl = LieElement::basis(x);
                let x1 = env.embed(&env.lie::<Rational>(&xl), 0, 2);
                let comm = env.t_bracket(&env.casimir_tensor(), &x1).unwrap();
                let lhs = env.slot_multiply(&comm);
                assert_eq!(lhs, env.lie(&xl.scale(&(-&cg / int(2)))));
                assert_eq!(env.rho_ad(&env.quadratic_casimir(), &xl), xl.scale(&cg));
            }
        }
    }
}
