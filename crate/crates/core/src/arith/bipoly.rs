use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gauss::GaussRational;

/// Polynomial in two commuting variables `T1`, `T2` over Q(i), with no
/// relations imposed. Keys are exponent pairs `(e1, e2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), GaussRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: GaussRational, e1: u32, e2: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((e1, e2), c);
        p
    }

    pub fn t1() -> Self {
        Self::monomial(GaussRational::one(), 1, 0)
    }

    pub fn t2() -> Self {
        Self::monomial(GaussRational::one(), 0, 1)
    }

    pub fn add_term(&mut self, exp: (u32, u32), coeff: GaussRational) {
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

    pub fn coeff(&self, e1: u32, e2: u32) -> GaussRational {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &GaussRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Total degree of the highest term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|(a, b)| a + b);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            out.add_term(*e, x * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((a1, a2), x) in &self.terms {
            for ((b1, b2), y) in &rhs.terms {
                out.add_term((a1 + b1, a2 + b2), x * y);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-GaussRational::one())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for ((a, b), c) in self.terms.iter().rev() {
            let mut m = format!("({c})");
            for (v, e) in [("T1", a), ("T2", b)] {
                match e {
                    0 => {}
                    1 => m.push_str(&format!("*{v}")),
                    _ => m.push_str(&format!("*{v}^{e}")),
                }
            }
            parts.push(m);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_expansion() {
        let e = &BiPoly::t2() - &BiPoly::t1();
        let sq = e.pow(2);
        assert_eq!(sq.coeff(2, 0), GaussRational::from_int(1));
        assert_eq!(sq.coeff(1, 1), GaussRational::from_int(-2));
        assert_eq!(sq.coeff(0, 2), GaussRational::from_int(1));
        assert!(sq.is_homogeneous());
        assert_eq!(sq.degree(), Some(2));
        assert!((&sq - &sq).is_zero());
    }
}
