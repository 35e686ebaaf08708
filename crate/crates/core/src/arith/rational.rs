use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ArithError;

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q` with decimal integers; the result is normalized.
pub fn parse_rational(text: &str) -> Result<Rational, ArithError> {
    let text = text.trim();
    let bad = || ArithError::Parse(text.to_string());
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => BigInt::from_str(text)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// `p/q`, or just `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// `(-1)^k`
pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn is_nonnegative(x: &Rational) -> bool {
    !x.is_negative()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6").unwrap(), int(6));
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(format_rational(&rat(-691, 2730)), "-691/2730");
        assert_eq!(format_rational(&int(3)), "3");
        assert!(parse_rational("1.5").is_err());
        assert!(matches!(
            parse_rational("1/0"),
            Err(ArithError::DivisionByZero)
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
