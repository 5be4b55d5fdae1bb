use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

/// Arbitrary precision rational, always kept in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational so that the DSL parser reads it back: integers bare,
/// proper fractions parenthesised (`(1/2)`, `-(3/4)`).
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-({}/{})", r.numer().abs(), r.denom())
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

