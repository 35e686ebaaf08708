use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gauss::GaussRational;
use super::ArithError;

/// Laurent polynomial in the quantum parameter `q` over Q(i).
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, GaussRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: GaussRational, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, GaussRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: GaussRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> GaussRational {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    /// Exact value at `q0`; a negative exponent at `q0 = 0` is a pole.
    pub fn eval_at(&self, q0: &GaussRational) -> Result<GaussRational, ArithError> {
        let mut acc = GaussRational::zero();
        for (&e, c) in &self.terms {
            let power = if e >= 0 {
                q0.pow(e as u32)
            } else {
                q0.inv()
                    .ok_or_else(|| ArithError::Pole(q0.to_string()))?
                    .pow(e.unsigned_abs() as u32)
            };
            acc += &(c * &power);
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                out.add_term(ea + eb, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-GaussRational::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => format!("({c})"),
                1 => format!("({c})*q"),
                _ => format!("({c})*q^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_series_at_minus_one() {
        let p = LaurentPoly::from_terms([
            (-1, GaussRational::from_int(3)),
            (0, GaussRational::from_int(12)),
            (1, GaussRational::from_int(3)),
        ]);
        assert_eq!(
            p.eval_at(&GaussRational::from_int(-1)).unwrap(),
            GaussRational::from_int(6)
        );
        assert!(matches!(
            p.eval_at(&GaussRational::zero()),
            Err(ArithError::Pole(_))
        ));
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = LaurentPoly::monomial(GaussRational::i(), 2);
        assert!((&p - &p).is_zero());
        let sq = &p * &p;
        assert_eq!(sq.support(), vec![4]);
        assert_eq!(sq.coeff(4), GaussRational::from_int(-1));
    }
}
