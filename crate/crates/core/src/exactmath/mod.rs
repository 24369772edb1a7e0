//! Exact scalar arithmetic: rationals, binomial coefficients and multivariate
//! polynomials over the rationals.

mod poly;

pub use poly::{poly_equal, Monomial, Polynomial, Var};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient `C(upper, lower)`.
///
/// Zero when `lower < 0` or `lower > upper >= 0`. A negative upper index with a
/// non-negative lower index is rejected: such a call is always an index bug
/// upstream.
pub fn binomial(upper: i64, lower: i64) -> Result<Rational> {
    Ok(Rational::from_integer(binomial_int(upper, lower)?))
}

pub(crate) fn binomial_int(upper: i64, lower: i64) -> Result<BigInt> {
    if lower < 0 {
        return Ok(BigInt::zero());
    }
    if upper < 0 {
        return Err(Error::NegativeUpperIndex { upper, lower });
    }
    if lower > upper {
        return Ok(BigInt::zero());
    }
    let k = lower.min(upper - lower);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(upper - i);
        acc /= BigInt::from(i + 1);
    }
    Ok(acc)
}

/// Parse `p/q`, `-p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid rational '{text}'"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{text}'")));
    }
    Ok(Rational::new(num, den))
}

/// `p/q` or `p`, the inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2).unwrap(), rat(10));
        assert_eq!(binomial(3, -1).unwrap(), rat(0));
        assert_eq!(binomial(2, 3).unwrap(), rat(0));
        assert_eq!(binomial(0, 0).unwrap(), rat(1));
        assert_eq!(binomial(-1, -1).unwrap(), rat(0));
        assert_eq!(
            binomial(60, 30).unwrap(),
            Rational::from_integer("118264581564861424".parse().unwrap())
        );
    }

    #[test]
    fn binomial_rejects_negative_upper() {
        assert_eq!(
            binomial(-1, 0),
            Err(Error::NegativeUpperIndex { upper: -1, lower: 0 })
        );
    }

    #[test]
    fn vandermonde_small() {
        let lhs: Rational = (0..=2)
            .map(|j| binomial(3, j).unwrap() * binomial(2, 2 - j).unwrap())
            .sum();
        assert_eq!(lhs, binomial(5, 2).unwrap());
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-3", "1/858", "-21/5"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_is_canonical() {
        let r = ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let x = ratio(7, 3);
        assert_eq!(&x * x.recip(), rat(1));
    }

    proptest::proptest! {
        #[test]
        fn pascal_rule(a in 1i64..40, k in 0i64..40) {
            proptest::prop_assume!(k <= a);
            let lhs = binomial(a, k).unwrap();
            let rhs = binomial(a - 1, k - 1).unwrap() + binomial(a - 1, k).unwrap();
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }
}
