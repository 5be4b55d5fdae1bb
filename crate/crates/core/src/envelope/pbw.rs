//! PBW straightening for the enveloping algebra of any Lie algebra given by
//! structure constants on a totally ordered basis.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::One;
use parking_lot::RwLock;

use crate::exactnum::{Coeff, Lin, Rational};

/// A Lie algebra presented by a totally ordered basis and its brackets.
pub trait LieBasis: Send + Sync {
    type Letter: Ord + Clone + Hash + Eq + Debug + Send + Sync;

    /// `[a, b]` expanded in the basis.
    fn bracket_letters(&self, a: &Self::Letter, b: &Self::Letter) -> Vec<(Self::Letter, Rational)>;
}

/// Weakly increasing word of basis letters; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial<L>(Vec<L>);

impl<L> Default for Monomial<L> {
    fn default() -> Self {
        Monomial(Vec::new())
    }
}

impl<L: Ord + Clone> Monomial<L> {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn letter(l: L) -> Self {
        Monomial(vec![l])
    }

    /// Wraps a word that is already weakly increasing.
    pub fn from_sorted(letters: Vec<L>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] <= w[1]));
        Monomial(letters)
    }

    /// Sorts a word; only meaningful for commuting letters.
    pub fn from_commuting(mut letters: Vec<L>) -> Self {
        letters.sort();
        Monomial(letters)
    }

    pub fn letters(&self) -> &[L] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters grouped with multiplicities, in increasing order.
    pub fn runs(&self) -> Vec<(L, usize)> {
        let mut out: Vec<(L, usize)> = Vec::new();
        for l in &self.0 {
            match out.last_mut() {
                Some((last, k)) if last == l => *k += 1,
                _ => out.push((l.clone(), 1)),
            }
        }
        out
    }
}

type MonoLin<L> = Lin<Monomial<L>, Rational>;

/// Memoized straightening engine.
///
/// Products are computed by right multiplication with single letters:
/// `m' a * b = (m' * b) * a + m' * [a, b]` whenever `b < a`.
pub struct Straightener<B: LieBasis> {
    basis: B,
    by_letter: RwLock<HashMap<(Monomial<B::Letter>, B::Letter), MonoLin<B::Letter>>>,
    by_monomial: RwLock<HashMap<(Monomial<B::Letter>, Monomial<B::Letter>), MonoLin<B::Letter>>>,
}

impl<B: LieBasis> Straightener<B> {
    pub fn new(basis: B) -> Self {
        Self { basis, by_letter: RwLock::default(), by_monomial: RwLock::default() }
    }

    pub fn basis(&self) -> &B {
        &self.basis
    }

    /// `m * b` in normal form.
    pub fn mul_letter(&self, m: &Monomial<B::Letter>, b: &B::Letter) -> MonoLin<B::Letter> {
        match m.0.last() {
            None => return Lin::basis(Monomial::letter(b.clone())),
            Some(a) if a <= b => {
                let mut w = m.0.clone();
                w.push(b.clone());
                return Lin::basis(Monomial(w));
            }
            _ => {}
        }
        let key = (m.clone(), b.clone());
        if let Some(hit) = self.by_letter.read().get(&key) {
            return hit.clone();
        }
        let mut prefix = m.0.clone();
        let a = prefix.pop().expect("nonempty");
        let prefix = Monomial(prefix);
        let mut out = Lin::zero();
        for (mono, c) in &self.mul_letter(&prefix, b) {
            out.add_scaled(&self.mul_letter(mono, &a), c);
        }
        for (l, c) in self.basis.bracket_letters(&a, b) {
            out.add_scaled(&self.mul_letter(&prefix, &l), &c);
        }
        self.by_letter.write().insert(key, out.clone());
        out
    }

    /// `m * n` in normal form.
    pub fn mul_monomials(&self, m: &Monomial<B::Letter>, n: &Monomial<B::Letter>) -> MonoLin<B::Letter> {
        if n.is_unit() {
            return Lin::basis(m.clone());
        }
        if m.is_unit() {
            return Lin::basis(n.clone());
        }
        if m.0.last() <= n.0.first() {
            let mut w = m.0.clone();
            w.extend(n.0.iter().cloned());
            return Lin::basis(Monomial(w));
        }
        let key = (m.clone(), n.clone());
        if let Some(hit) = self.by_monomial.read().get(&key) {
            return hit.clone();
        }
        let mut acc: MonoLin<B::Letter> = Lin::basis(m.clone());
        for l in &n.0 {
            let mut next = Lin::zero();
            for (mono, c) in &acc {
                next.add_scaled(&self.mul_letter(mono, l), c);
            }
            acc = next;
        }
        self.by_monomial.write().insert(key, acc.clone());
        acc
    }

    /// Normal form of an arbitrary word.
    pub fn normal_order(&self, word: &[B::Letter]) -> MonoLin<B::Letter> {
        let mut acc: MonoLin<B::Letter> = Lin::basis(Monomial::unit());
        for l in word {
            let mut next = Lin::zero();
            for (mono, c) in &acc {
                next.add_scaled(&self.mul_letter(mono, l), c);
            }
            acc = next;
        }
        acc
    }

    pub fn mul<C: Coeff>(
        &self,
        a: &Lin<Monomial<B::Letter>, C>,
        b: &Lin<Monomial<B::Letter>, C>,
    ) -> Lin<Monomial<B::Letter>, C> {
        let mut out = Lin::zero();
        for (m, x) in a {
            for (n, y) in b {
                out.add_scaled_rational(&self.mul_monomials(m, n), &x.mul_ref(y));
            }
        }
        out
    }

    pub fn bracket<C: Coeff>(
        &self,
        a: &Lin<Monomial<B::Letter>, C>,
        b: &Lin<Monomial<B::Letter>, C>,
    ) -> Lin<Monomial<B::Letter>, C> {
        &self.mul(a, b) - &self.mul(b, a)
    }

    /// The unit of the enveloping algebra.
    pub fn one<C: Coeff>() -> Lin<Monomial<B::Letter>, C> {
        Lin::basis(Monomial::unit())
    }
}

/// `binom(n, k)` as a rational.
pub(crate) fn binomial(n: usize, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    acc
}

/// The standard coproduct of a PBW monomial: since every sub-multiset of a
/// sorted word is sorted, `Delta(m) = sum binom * m_S (x) m_{S^c}` needs no
/// straightening.
pub(crate) fn split_monomial<L: Ord + Clone>(m: &Monomial<L>) -> Vec<(Monomial<L>, Monomial<L>, Rational)> {
    let mut out = vec![(Vec::new(), Vec::new(), Rational::one())];
    for (l, k) in m.runs() {
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for (left, right, c) in &out {
            for j in 0..=k {
                let mut l2: Vec<L> = left.clone();
                l2.extend(std::iter::repeat_n(l.clone(), j));
                let mut r2: Vec<L> = right.clone();
                r2.extend(std::iter::repeat_n(l.clone(), k - j));
                next.push((l2, r2, c * binomial(k, j)));
            }
        }
        out = next;
    }
    out.into_iter().map(|(a, b, c)| (Monomial(a), Monomial(b), c)).collect()
}
