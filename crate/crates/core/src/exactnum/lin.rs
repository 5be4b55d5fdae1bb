use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use super::{Coeff, Rational};

/// Finite formal linear combination of keys `K` with coefficients `C`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// elements.
#[derive(Clone, PartialEq, Debug)]
pub struct Lin<K: Ord, C> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for Lin<K, C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, C: Coeff> Lin<K, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(key, c);
        out
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, C::c_one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&C> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, C> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, C> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, c: C) {
        if c.c_is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().c_is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_term_ref(&mut self, key: &K, c: &C) {
        if c.c_is_zero() {
            return;
        }
        if let Some(e) = self.terms.get_mut(key) {
            e.add_assign_ref(c);
            if e.c_is_zero() {
                self.terms.remove(key);
            }
        } else {
            self.terms.insert(key.clone(), c.clone());
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (k, v) in &other.terms {
            self.add_term_ref(k, &v.mul_ref(c));
        }
    }

    /// `self += r * other` for a rational-coefficient combination.
    pub fn add_scaled_rational(&mut self, other: &Lin<K, Rational>, c: &C) {
        for (k, r) in other.iter() {
            self.add_term_ref(k, &c.scale(r));
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.mul_ref(c));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.scale(r));
        }
        out
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Lin<K2, C>) -> Lin<K2, C> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Transforms every coefficient; zero results are dropped.
    pub fn map_coeffs<C2: Coeff>(&self, mut f: impl FnMut(&C) -> C2) -> Lin<K, C2> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K, &C) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, c)| keep(k, c))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone, C: Coeff> FromIterator<(K, C)> for Lin<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord, C> IntoIterator for Lin<K, C> {
    type Item = (K, C);
    type IntoIter = btree_map::IntoIter<K, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord, C> IntoIterator for &'a Lin<K, C> {
    type Item = (&'a K, &'a C);
    type IntoIter = btree_map::Iter<'a, K, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone, C: Coeff> AddAssign<&Lin<K, C>> for Lin<K, C> {
    fn add_assign(&mut self, rhs: &Lin<K, C>) {
        for (k, c) in &rhs.terms {
            self.add_term_ref(k, c);
        }
    }
}

impl<K: Ord + Clone, C: Coeff> SubAssign<&Lin<K, C>> for Lin<K, C> {
    fn sub_assign(&mut self, rhs: &Lin<K, C>) {
        for (k, c) in &rhs.terms {
            self.add_term_ref(k, &c.neg_ref());
        }
    }
}

impl<K: Ord + Clone, C: Coeff> Add for &Lin<K, C> {
    type Output = Lin<K, C>;
    fn add(self, rhs: Self) -> Lin<K, C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone, C: Coeff> Sub for &Lin<K, C> {
    type Output = Lin<K, C>;
    fn sub(self, rhs: Self) -> Lin<K, C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone, C: Coeff> Add for Lin<K, C> {
    type Output = Lin<K, C>;
    fn add(mut self, rhs: Self) -> Lin<K, C> {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone, C: Coeff> Sub for Lin<K, C> {
    type Output = Lin<K, C>;
    fn sub(mut self, rhs: Self) -> Lin<K, C> {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone, C: Coeff> Neg for &Lin<K, C> {
    type Output = Lin<K, C>;
    fn neg(self) -> Lin<K, C> {
        Lin {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg_ref())).collect(),
        }
    }
}

impl<K: Ord + Clone, C: Coeff> Neg for Lin<K, C> {
    type Output = Lin<K, C>;
    fn neg(self) -> Lin<K, C> {
        -&self
    }
}
