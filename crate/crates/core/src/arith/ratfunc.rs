use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::gauss::GaussRational;
use super::poly::Poly;
use super::ArithError;

/// Rational function `numer / denom` in `q` over Q(i).
///
/// Normal form: `denom` is monic and coprime to `numer`, and the zero function
/// is `0 / 1`, so structural equality is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    numer: Poly,
    denom: Poly,
}

impl RatFunc {
    pub fn new(numer: Poly, denom: Poly) -> Result<Self, ArithError> {
        if denom.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if numer.is_zero() {
            return Ok(Self::from_poly(Poly::zero()));
        }
        let g = numer.gcd(&denom);
        let (numer, _) = numer.div_rem(&g);
        let (denom, _) = denom.div_rem(&g);
        let lc_inv = denom.leading().and_then(GaussRational::inv).expect("nonzero denominator");
        Ok(Self {
            numer: numer.scale(&lc_inv),
            denom: denom.scale(&lc_inv),
        })
    }

    /// Skips the gcd; `numer` and `denom` must already be coprime.
    pub fn from_coprime(numer: Poly, denom: Poly) -> Result<Self, ArithError> {
        let lc_inv = denom.leading().and_then(GaussRational::inv).ok_or(ArithError::DivisionByZero)?;
        if numer.is_zero() {
            return Ok(Self::from_poly(Poly::zero()));
        }
        Ok(Self {
            numer: numer.scale(&lc_inv),
            denom: denom.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            numer: p,
            denom: Poly::one(),
        }
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `q / (1 - q)`, the generating function of the positive integers' indicator.
    pub fn geometric() -> Self {
        Self::new(Poly::var(), Poly::from_ints(&[1, -1])).expect("nonzero denominator")
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        Self {
            numer: self.numer.scale(c),
            denom: self.denom.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.numer.derivative() * &self.denom) - &(&self.numer * &self.denom.derivative());
        Self::new(num, &self.denom * &self.denom).expect("nonzero denominator")
    }

    /// The Euler operator `q·d/dq`.
    pub fn theta(&self) -> Self {
        &RatFunc::from_poly(Poly::var()) * &self.derivative()
    }

    pub fn eval_at(&self, q0: &GaussRational) -> Result<GaussRational, ArithError> {
        let d = self.denom.eval(q0);
        if d.is_zero() {
            return Err(ArithError::Pole(q0.to_string()));
        }
        Ok(&self.numer.eval(q0) / &d)
    }

    /// The first `n` coefficients of the power series at `q = 0`.
    pub fn series(&self, n: usize) -> Result<Vec<GaussRational>, ArithError> {
        let d0 = self.denom.coeff(0);
        let d0_inv = d0.inv().ok_or_else(|| ArithError::Pole("0".into()))?;
        let mut out: Vec<GaussRational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.numer.coeff(k);
            for j in 1..=k.min(self.denom.coeffs().len().saturating_sub(1)) {
                acc -= &(&self.denom.coeff(j) * &out[k - j]);
            }
            out.push(&acc * &d0_inv);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let n = &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom);
        RatFunc::new(n, &self.denom * &rhs.denom).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
            .expect("nonzero denominator")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.degree() == Some(0) {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "[{}] / [{}]", self.numer, self.denom)
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_is_canonical() {
        // (2q - 2) / (4q^2 - 4)  ==  (1/2) / (q + 1)
        let f = RatFunc::new(Poly::from_ints(&[-2, 2]), Poly::from_ints(&[-4, 0, 4])).unwrap();
        let g = RatFunc::new(
            Poly::constant(GaussRational::real(crate::arith::rat(1, 2))),
            Poly::from_ints(&[1, 1]),
        )
        .unwrap();
        assert_eq!(f, g);
        assert_eq!(f.denom().leading(), Some(&GaussRational::from_int(1)));
    }

    #[test]
    fn geometric_series_values() {
        let f = RatFunc::geometric();
        assert!(f.eval_at(&GaussRational::zero()).unwrap().is_zero());
        assert!(matches!(
            f.eval_at(&GaussRational::from_int(1)),
            Err(ArithError::Pole(_))
        ));
        let s = f.series(5).unwrap();
        assert_eq!(s, [0, 1, 1, 1, 1].map(GaussRational::from_int).to_vec());
    }
}
