use crate::error::{Error, Result};
use crate::exactnum::{Coeff, Lin, Rational};

/// Element of an `n`-fold tensor power, stored as a combination of pure
/// tensors of basis keys. The arity is explicit so that zero still knows
/// where it lives.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor<K: Ord, C> {
    arity: usize,
    terms: Lin<Vec<K>, C>,
}

impl<K: Ord + Clone, C: Coeff> Tensor<K, C> {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: Lin::zero() }
    }

    pub fn pure(slots: Vec<K>, c: C) -> Self {
        let arity = slots.len();
        Self { arity, terms: Lin::term(slots, c) }
    }

    pub fn from_terms(arity: usize, terms: Lin<Vec<K>, C>) -> Self {
        debug_assert!(terms.keys().all(|k| k.len() == arity));
        Self { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &Lin<Vec<K>, C> {
        &self.terms
    }

    pub fn into_terms(self) -> Lin<Vec<K>, C> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<K>, &C)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, slots: Vec<K>, c: C) {
        debug_assert_eq!(slots.len(), self.arity);
        self.terms.add_term(slots, c);
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch(self.arity, other.arity))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Ok(Self { arity: self.arity, terms: &self.terms + &other.terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Ok(Self { arity: self.arity, terms: &self.terms - &other.terms })
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.same_arity(other)?;
        self.terms += &other.terms;
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) -> Result<()> {
        self.same_arity(other)?;
        self.terms.add_scaled(&other.terms, c);
        Ok(())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self { arity: self.arity, terms: self.terms.scale(c) }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self { arity: self.arity, terms: self.terms.scale_rational(r) }
    }

    pub fn neg(&self) -> Self {
        Self { arity: self.arity, terms: -&self.terms }
    }

    pub fn map_coeffs<C2: Coeff>(&self, f: impl FnMut(&C) -> C2) -> Tensor<K, C2> {
        Tensor { arity: self.arity, terms: self.terms.map_coeffs(f) }
    }

    /// Tensor whose `k`-th slot is taken from slot `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let mut out = Lin::zero();
        for (slots, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| slots[p].clone()).collect(), c.clone());
        }
        Self { arity: self.arity, terms: out }
    }

    /// `y^{21}` for arity two, and slot reversal in general.
    pub fn reversed(&self) -> Self {
        let perm: Vec<usize> = (0..self.arity).rev().collect();
        self.permute(&perm)
    }

    /// The concatenation `self (x) other`.
    pub fn outer(&self, other: &Self) -> Self {
        let mut out = Lin::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut slots = a.clone();
                slots.extend(b.iter().cloned());
                out.add_term(slots, x.mul_ref(y));
            }
        }
        Self { arity: self.arity + other.arity, terms: out }
    }

    /// Replaces slot `i` of every pure tensor by the arity-`k` image of a
    /// linear map on keys.
    pub fn map_slot(&self, i: usize, k: usize, mut f: impl FnMut(&K) -> Vec<(Vec<K>, Rational)>) -> Self {
        let mut out = Lin::zero();
        for (slots, c) in &self.terms {
            for (img, r) in f(&slots[i]) {
                debug_assert_eq!(img.len(), k);
                let mut s = Vec::with_capacity(self.arity + k - 1);
                s.extend(slots[..i].iter().cloned());
                s.extend(img);
                s.extend(slots[i + 1..].iter().cloned());
                out.add_term(s, c.scale(&r));
            }
        }
        Self { arity: self.arity + k - 1, terms: out }
    }

    /// Slotwise product, given the product of keys.
    pub fn mul_with(&self, other: &Self, mut mul: impl FnMut(&K, &K) -> Lin<K, Rational>) -> Result<Self> {
        self.same_arity(other)?;
        let mut out = Lin::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let c = x.mul_ref(y);
                let mut partial: Vec<(Vec<K>, Rational)> = vec![(Vec::with_capacity(self.arity), Rational::from_integer(1.into()))];
                for (ka, kb) in a.iter().zip(b) {
                    let prod = mul(ka, kb);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (s, r) in &partial {
                        for (k, q) in &prod {
                            let mut s2 = s.clone();
                            s2.push(k.clone());
                            next.push((s2, r * q));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (s, r) in partial {
                    out.add_term(s, c.scale(&r));
                }
            }
        }
        Ok(Self { arity: self.arity, terms: out })
    }
}
