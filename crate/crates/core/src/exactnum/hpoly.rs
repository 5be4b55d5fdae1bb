use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::fmt_rational;
use super::{Coeff, Rational};

/// Polynomial in the deformation parameter `hbar` with rational
/// coefficients. `hbar` has grading degree one.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl HPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        Self::monomial(0, r)
    }

    /// `c * hbar^k`.
    pub fn monomial(k: u32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    pub fn hbar(k: u32) -> Self {
        Self::monomial(k, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// The value at `hbar = 0`.
    pub fn at_zero(&self) -> Rational {
        self.coeff(0)
    }

    /// Returns the constant term if the polynomial has no positive powers.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    /// Exact division by `hbar^k`; `None` if some power below `k` survives.
    pub fn div_hbar(&self, k: u32) -> Option<Self> {
        if self.low_degree().is_some_and(|d| d < k) {
            return None;
        }
        Some(Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e - k, c.clone())).collect(),
        })
    }

    pub fn mul_hbar(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    fn add_coeff(&mut self, k: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }
}

impl Coeff for HPoly {
    fn c_zero() -> Self {
        HPoly::zero()
    }
    fn c_one() -> Self {
        HPoly::one()
    }
    fn c_is_zero(&self) -> bool {
        HPoly::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (k, c) in &other.coeffs {
            self.add_coeff(*k, c);
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = HPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                out.add_coeff(a + b, &(x * y));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        HPoly::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return HPoly::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }
}

impl From<Rational> for HPoly {
    fn from(r: Rational) -> Self {
        HPoly::constant(r)
    }
}

impl Add for &HPoly {
    type Output = HPoly;
    fn add(self, rhs: &HPoly) -> HPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &HPoly) -> HPoly {
        let mut out = self.clone();
        out.add_assign_ref(&rhs.neg_ref());
        out
    }
}

impl Mul for &HPoly {
    type Output = HPoly;
    fn mul(self, rhs: &HPoly) -> HPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        self.neg_ref()
    }
}

/// Renders as a sum of `c*hbar^k` terms in increasing powers, e.g.
/// `1 + (1/2)*hbar - 3*hbar^2`.
impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let pow = match k {
                0 => String::new(),
                1 => "hbar".to_string(),
                k => format!("hbar^{k}"),
            };
            if *k == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{pow}")?;
            } else {
                write!(f, "{}*{pow}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn hbar_arithmetic() {
        let a = &HPoly::one() + &HPoly::hbar(1);
        let b = &HPoly::one() - &HPoly::hbar(1);
        let p = &a * &b;
        assert_eq!(p, &HPoly::one() - &HPoly::hbar(2));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.div_hbar(1), None);
        assert_eq!(HPoly::hbar(3).div_hbar(2), Some(HPoly::hbar(1)));
    }

    #[test]
    fn display() {
        let p = &HPoly::monomial(2, rat(-3, 1)) + &HPoly::monomial(1, rat(1, 2));
        assert_eq!(p.to_string(), "(1/2)*hbar - 3*hbar^2");
        assert_eq!(HPoly::zero().to_string(), "0");
    }
}
