//! The bicomplex `K^{m,n} = Hom(wedge^m g (x) g_ad, U(g)^{(x) n})` truncated
//! to the PBW filtration slice of degree `D`.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Map, Value};

use super::cobar::cobar_differential;
use super::module::{monomial_weight, pbw_basis, Weight};
use super::{small_nonzero, sort_alternating};
use crate::envelope::{render, Envelope, Monomial, PbwMonomial, QTensor};
use crate::error::{Error, Result};
use crate::exactnum::{Lin, Rational};
use crate::liealg::{LieAlgebraData, LieBasisIndex, LieElement};

/// Arguments `(x_1 < ... < x_m; v)` of a cochain.
pub type CochainKey = (Vec<LieBasisIndex>, LieBasisIndex);

/// One scalar coordinate of a cochain: arguments and a pure tensor of
/// PBW monomials.
pub type Coord = (Vec<LieBasisIndex>, LieBasisIndex, Vec<PbwMonomial>);

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub m: usize,
    pub n: usize,
    pub degree: usize,
    pub values: BTreeMap<CochainKey, QTensor>,
}

impl Cochain {
    pub fn zero(m: usize, n: usize, degree: usize) -> Self {
        Self { m, n, degree, values: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Adds `t` to the value at `(args; v)`, reordering `args` with sign.
    pub fn add(&mut self, args: Vec<LieBasisIndex>, v: LieBasisIndex, t: &QTensor) {
        let Some((sorted, sign)) = sort_alternating(args) else { return };
        let key = (sorted, v);
        let slot = self.values.entry(key.clone()).or_insert_with(|| QTensor::zero(self.n));
        slot.add_scaled(t, &Rational::from_integer(sign.into())).expect("cochain arity");
        if slot.is_zero() {
            self.values.remove(&key);
        }
    }

    pub fn eval(&self, args: Vec<LieBasisIndex>, v: LieBasisIndex) -> QTensor {
        match sort_alternating(args) {
            Some((sorted, sign)) => self
                .values
                .get(&(sorted, v))
                .map_or_else(|| QTensor::zero(self.n), |t| t.scale_rational(&Rational::from_integer(sign.into()))),
            None => QTensor::zero(self.n),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, &-Rational::one())
    }

    pub fn add_cochain(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, &Rational::one())
    }

    fn combine(&self, other: &Cochain, c: &Rational) -> Result<Cochain> {
        if (self.m, self.n) != (other.m, other.n) {
            return Err(Error::DimensionMismatch(format!(
                "bidegree ({}, {}) vs ({}, {})",
                self.m, self.n, other.m, other.n
            )));
        }
        let mut out = self.clone();
        out.degree = self.degree.max(other.degree);
        for ((args, v), t) in &other.values {
            out.add(args.clone(), *v, &t.scale_rational(c));
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        let mut out = Cochain::zero(self.m, self.n, self.degree);
        if c.is_zero() {
            return out;
        }
        out.values = self.values.iter().map(|(k, t)| (k.clone(), t.scale_rational(c))).collect();
        out
    }

    /// The largest total PBW degree of a stored tensor.
    pub fn filtration_degree(&self) -> usize {
        self.values
            .values()
            .flat_map(|t| t.iter().map(|(s, _)| s.iter().map(Monomial::degree).sum::<usize>()))
            .max()
            .unwrap_or(0)
    }

    pub fn check_truncation(&self) -> Result<()> {
        if self.filtration_degree() > self.degree {
            return Err(Error::OutsideTruncation(self.degree));
        }
        Ok(())
    }

    /// Flattened scalar coordinates.
    pub fn coords(&self) -> Lin<Coord, Rational> {
        let mut out = Lin::zero();
        for ((args, v), t) in &self.values {
            for (slots, c) in t.iter() {
                out.add_term((args.clone(), *v, slots.clone()), c.clone());
            }
        }
        out
    }

    /// `omega^{21}`: the slot swap at arity two.
    pub fn flip(&self) -> Cochain {
        let mut out = self.clone();
        for t in out.values.values_mut() {
            *t = t.reversed();
        }
        out
    }

    /// Nested map `"x1,x2;v" -> "slot (x) slot" -> "p/q"`.
    pub fn to_json(&self, g: &LieAlgebraData) -> Value {
        let mut values = Map::new();
        for ((args, v), t) in &self.values {
            let key = format!("{};{}", args.iter().map(|b| g.name(*b)).join(","), g.name(*v));
            let mut inner = Map::new();
            for (slots, c) in t.iter() {
                let s = render::render_slots(
                    slots.iter().map(|m| render::render_product(m.letters().iter().map(|b| g.name(*b)))),
                );
                inner.insert(s, Value::String(c.to_string()));
            }
            values.insert(key, Value::Object(inner));
        }
        json!({ "m": self.m, "n": self.n, "degree": self.degree, "values": values })
    }

    pub fn from_json(g: &LieAlgebraData, value: &Value) -> Result<Cochain> {
        let bad = |what: &str| Error::Precondition { equation: "cochain JSON schema", detail: what.to_string() };
        let field = |k: &str| value.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| bad(k));
        let mut out = Cochain::zero(field("m")?, field("n")?, field("degree")?);
        let lookup = |name: &str| g.lookup(name.trim()).ok_or_else(|| Error::UnknownBasis(name.trim().to_string()));
        let values = value.get("values").and_then(Value::as_object).ok_or_else(|| bad("values"))?;
        for (key, inner) in values {
            let (args, v) = key.split_once(';').ok_or_else(|| bad(key))?;
            let args: Vec<LieBasisIndex> =
                if args.is_empty() { Vec::new() } else { args.split(',').map(lookup).collect::<Result<_>>()? };
            if args.len() != out.m {
                return Err(bad(key));
            }
            let v = lookup(v)?;
            let mut t = QTensor::zero(out.n);
            for (slots, c) in inner.as_object().ok_or_else(|| bad(key))? {
                let slots: Vec<PbwMonomial> = slots
                    .split(" (x) ")
                    .map(|s| {
                        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
                        if s == "1" {
                            Ok(Monomial::unit())
                        } else {
                            s.split('*').map(lookup).collect::<Result<Vec<_>>>().map(Monomial::from_commuting)
                        }
                    })
                    .collect::<Result<_>>()?;
                if slots.len() != out.n {
                    return Err(Error::ArityMismatch(slots.len(), out.n));
                }
                let c: Rational = c.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("coefficient"))?;
                t.add_term(slots, c);
            }
            out.add(args, v, &t);
        }
        Ok(out)
    }

    pub fn render(&self, g: &LieAlgebraData) -> String {
        if self.values.is_empty() {
            return "0".into();
        }
        self.values
            .iter()
            .map(|((args, v), t)| {
                let body = render::render_terms(t.iter().map(|(s, c)| {
                    let key = if s.len() == 1 && s[0].is_unit() {
                        String::new()
                    } else {
                        render::render_slots(s.iter().map(|m| render::render_product(m.letters().iter().map(|b| g.name(*b)))))
                    };
                    (key, crate::exactnum::HPoly::constant(c.clone()))
                }));
                format!("({};{}) -> {}", args.iter().map(|b| g.name(*b)).join(","), g.name(*v), body)
            })
            .join("; ")
    }
}

/// The two differentials over a fixed `U(g)` and truncation degree.
pub struct Bicomplex {
    env: Arc<Envelope>,
    degree: usize,
}

impl Bicomplex {
    pub fn new(env: Arc<Envelope>, degree: usize) -> Self {
        Self { env, degree }
    }

    pub fn env(&self) -> &Arc<Envelope> {
        &self.env
    }

    pub fn g(&self) -> &Arc<LieAlgebraData> {
        self.env.g()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Diagonal adjoint action of a basis element on `U(g)^{(x) n}`.
    pub fn act(&self, x: LieBasisIndex, t: &QTensor) -> QTensor {
        let x = LieElement::basis(x);
        let mut out = QTensor::zero(t.arity());
        for i in 0..t.arity() {
            let part = t.map_slot(i, 1, |m| {
                self.env
                    .adjoint_action::<Rational>(&x, &Lin::basis(m.clone()))
                    .into_iter()
                    .map(|(k, c)| (vec![k], c))
                    .collect()
            });
            out.add_assign(&part).expect("same arity");
        }
        out
    }

    /// `dh(w)(x_1..x_{m+1}; v) = sum_{i<j} (-1)^{i+j} w([x_i,x_j], ..; v)
    ///   + sum_i (-1)^{i-1} (x_i . w(..^i..; v) - w(..^i..; [x_i, v]))`.
    pub fn dh(&self, w: &Cochain) -> Cochain {
        let g = self.g();
        let mut out = Cochain::zero(w.m + 1, w.n, w.degree);
        let sign = |k: usize| if k.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        for t in g.basis().combinations(w.m + 1) {
            for v in g.basis() {
                let mut value = QTensor::zero(w.n);
                for (a, b) in (0..t.len()).tuple_combinations() {
                    let rest: Vec<LieBasisIndex> =
                        t.iter().enumerate().filter(|(k, _)| *k != a && *k != b).map(|(_, x)| *x).collect();
                    for (k, c) in g.bracket_basis(t[a], t[b]) {
                        let mut args = vec![*k];
                        args.extend(&rest);
                        value.add_scaled(&w.eval(args, v), &(&sign(a + b) * c)).expect("arity");
                    }
                }
                for a in 0..t.len() {
                    let rest: Vec<LieBasisIndex> =
                        t.iter().enumerate().filter(|(k, _)| *k != a).map(|(_, x)| *x).collect();
                    let s = sign(a);
                    value.add_scaled(&self.act(t[a], &w.eval(rest.clone(), v)), &s).expect("arity");
                    for (k, c) in g.bracket_basis(t[a], v) {
                        value.add_scaled(&w.eval(rest.clone(), *k), &-(&s * c)).expect("arity");
                    }
                }
                if !value.is_zero() {
                    out.values.insert((t.clone(), v), value);
                }
            }
        }
        out
    }

    /// `dv(w)(x; v) = delta_n(w(x; v))`.
    pub fn dv(&self, w: &Cochain) -> Cochain {
        let mut out = Cochain::zero(w.m, w.n + 1, w.degree);
        for (k, t) in &w.values {
            let d = cobar_differential(t);
            if !d.is_zero() {
                out.values.insert(k.clone(), d);
            }
        }
        out
    }

    /// Weight of a coordinate under the Cartan action.
    pub fn coord_weight(&self, c: &Coord) -> Weight {
        let g = self.g();
        let mut w = vec![0; g.rank()];
        for m in &c.2 {
            for (acc, v) in w.iter_mut().zip(monomial_weight(g, m)) {
                *acc += v;
            }
        }
        for b in c.0.iter().chain(std::iter::once(&c.1)) {
            for (acc, v) in w.iter_mut().zip(g.weight(*b)) {
                *acc -= v;
            }
        }
        w
    }

    /// The cochain in `K^{0,1}` sending `v` to `m` and every other basis
    /// vector to zero.
    pub fn elementary(&self, v: LieBasisIndex, m: PbwMonomial) -> Cochain {
        let mut out = Cochain::zero(0, 1, self.degree);
        out.add(Vec::new(), v, &QTensor::pure(vec![m], Rational::one()));
        out
    }

    /// The PBW monomials of the truncation slice.
    pub fn slice_basis(&self) -> Vec<PbwMonomial> {
        pbw_basis(self.g(), self.degree)
    }

    /// Random sparse cochain of bidegree `(m, n)` inside the slice.
    pub fn random_cochain(&self, m: usize, n: usize, rng: &mut impl Rng) -> Cochain {
        let g = self.g();
        let tuples: Vec<Vec<LieBasisIndex>> = g.basis().combinations(m).collect();
        let mut out = Cochain::zero(m, n, self.degree);
        if tuples.is_empty() {
            return out;
        }
        for _ in 0..rng.gen_range(1..=3) {
            let args = tuples[rng.gen_range(0..tuples.len())].clone();
            let v = LieBasisIndex(rng.gen_range(0..g.dim()) as u16);
            let mut t = QTensor::zero(n);
            for _ in 0..rng.gen_range(1..=3) {
                let mut slots: Vec<Vec<LieBasisIndex>> = vec![Vec::new(); n];
                for _ in 0..rng.gen_range(0..=self.degree) {
                    slots[rng.gen_range(0..n)].push(LieBasisIndex(rng.gen_range(0..g.dim()) as u16));
                }
                t.add_term(slots.into_iter().map(Monomial::from_commuting).collect(), small_nonzero(rng));
            }
            out.add(args, v, &t);
        }
        out
    }

    /// A random element of `K^{0,1}` with every basis vector mapped into the
    /// slice.
    pub fn random_map(&self, rng: &mut impl Rng) -> Cochain {
        let basis = self.slice_basis();
        let mut out = Cochain::zero(0, 1, self.degree);
        for v in self.g().basis() {
            for _ in 0..rng.gen_range(1..=3) {
                let m = basis[rng.gen_range(0..basis.len())].clone();
                out.add(Vec::new(), v, &QTensor::pure(vec![m], small_nonzero(rng)));
            }
        }
        out
    }

    /// `v -> v`, the identity of `g` viewed in `K^{0,1}`.
    pub fn identity(&self) -> Cochain {
        let mut out = Cochain::zero(0, 1, self.degree);
        for v in self.g().basis() {
            out.add(Vec::new(), v, &QTensor::pure(vec![Monomial::letter(v)], Rational::one()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sl2() -> Bicomplex {
        Bicomplex::new(Envelope::sl(2).unwrap(), 2)
    }

    #[test]
    fn differentials_square_to_zero_and_commute() {
        let bc = sl2();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in 0..=1 {
            for n in 1..=2 {
                for _ in 0..4 {
                    let w = bc.random_cochain(m, n, &mut rng);
                    assert!(bc.dh(&bc.dh(&w)).is_zero());
                    assert!(bc.dv(&bc.dv(&w)).is_zero());
                    assert_eq!(bc.dh(&bc.dv(&w)), bc.dv(&bc.dh(&w)));
                }
            }
        }
    }

    #[test]
    fn horizontal_differential_at_degree_zero() {
        let bc = sl2();
        let g = bc.g().clone();
        let (e, f, h) = (g.lookup("e").unwrap(), g.lookup("f").unwrap(), g.lookup("h").unwrap());
        // w(v) = v * v is not an intertwiner
        let mut w = Cochain::zero(0, 1, 2);
        for v in g.basis() {
            w.add(Vec::new(), v, &QTensor::pure(vec![Monomial::from_sorted(vec![v, v])], Rational::one()));
        }
        let d = bc.dh(&w);
        for x in [e, f, h] {
            for v in [e, f, h] {
                let mut expected = bc.act(x, &w.eval(Vec::new(), v));
                for (k, c) in g.bracket_basis(x, v) {
                    expected.add_scaled(&w.eval(Vec::new(), *k), &-c).unwrap();
                }
                assert_eq!(d.eval(vec![x], v), expected);
            }
        }
        assert!(!d.is_zero());
    }

    #[test]
    fn vertical_differential_is_box_minus_delta() {
        let bc = sl2();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let psi = bc.random_map(&mut rng);
        let d = bc.dv(&psi);
        let env = bc.env();
        for v in bc.g().basis() {
            let x = psi.eval(Vec::new(), v);
            let u: Lin<PbwMonomial, Rational> = x.iter().map(|(s, c)| (s[0].clone(), c.clone())).collect();
            let expected = env.box_n(&u, 2).sub(&env.coproduct(&u)).unwrap();
            assert_eq!(d.eval(Vec::new(), v), expected);
        }
    }

    #[test]
    fn intertwiners_are_horizontal_cocycles() {
        let bc = sl2();
        assert!(bc.dh(&bc.identity()).is_zero());
        // v -> [v (x) 1, Omega] is an intertwiner into U (x) U
        let env = bc.env();
        let mut w = Cochain::zero(0, 2, 2);
        for v in bc.g().basis() {
            w.add(Vec::new(), v, &env.omega_commutator::<Rational>(&LieElement::basis(v)));
        }
        assert!(bc.dh(&w).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let noise = bc.random_cochain(0, 2, &mut rng);
        assert!(!bc.dh(&w.add_cochain(&noise).unwrap()).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let bc = sl2();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (m, n) in [(0, 1), (1, 1), (0, 2), (2, 2)] {
            let w = bc.random_cochain(m, n, &mut rng);
            let j = w.to_json(bc.g());
            assert_eq!(Cochain::from_json(bc.g(), &j).unwrap(), w);
        }
    }
}
