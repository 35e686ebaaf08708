use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{int, rat, BiPoly, GaussRational};

pub const DIM: usize = 9;

/// Exponents `(e1, e2)` of `T1^e1 T2^e2` for each basis slot.
pub const MONOMIALS: [(u32, u32); DIM] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (2, 1),
    (1, 2),
    (2, 2),
];

pub const BASIS_NAMES: [&str; DIM] = [
    "1", "T1", "T2", "T1^2", "T1*T2", "T2^2", "T1^2*T2", "T1*T2^2", "T1^2*T2^2",
];

pub fn basis_degree(k: usize) -> u32 {
    let (a, b) = MONOMIALS[k];
    a + b
}

fn slot(e1: u32, e2: u32) -> Option<usize> {
    MONOMIALS.iter().position(|&m| m == (e1, e2))
}

/// Chow ring of the Hilbert scheme of two points in the plane,
/// `Q[T1, T2] / (T1³, T2³ − 3T1T2² − 3T1²T2)`, in the monomial basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HilbClass {
    pub coeffs: [GaussRational; DIM],
}

impl HilbClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(k: usize) -> Self {
        let mut c = Self::zero();
        c.coeffs[k] = GaussRational::one();
        c
    }

    pub fn t1() -> Self {
        Self::basis(1)
    }

    pub fn t2() -> Self {
        Self::basis(2)
    }

    /// Normal form of `T1^a T2^b`. The leading terms `T1³` and `T2³` are
    /// coprime, so the two generators already form a Gröbner basis and
    /// rewriting `T2³` then discarding `T1³` terminates in the basis.
    pub fn monomial(a: u32, b: u32) -> Self {
        if a >= 3 {
            return Self::zero();
        }
        if b >= 3 {
            let three = GaussRational::from_int(3);
            return &Self::monomial(a + 1, b - 1).scale(&three) + &Self::monomial(a + 2, b - 2).scale(&three);
        }
        Self::basis(slot(a, b).expect("reduced monomial"))
    }

    /// Image of a free polynomial under the quotient map.
    pub fn from_bipoly(p: &BiPoly) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in p.terms() {
            out = &out + &Self::monomial(a, b).scale(c);
        }
        out
    }

    pub fn to_bipoly(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (k, c) in self.support() {
            let (a, b) = MONOMIALS[k];
            out.add_term((a, b), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &GaussRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.support().map(|(k, _)| basis_degree(k));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] * c),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `∫T2⁴ = 3` and `T2⁴ = 12·T1²T2²` fix `∫T1²T2² = 1/4`.
    pub fn integrate(&self) -> GaussRational {
        self.coeffs[DIM - 1].scale(&rat(1, 4))
    }

    pub fn pairing(&self, other: &Self) -> GaussRational {
        (self * other).integrate()
    }
}

impl<'a> Add<&'a HilbClass> for &'a HilbClass {
    type Output = HilbClass;
    fn add(self, rhs: &HilbClass) -> HilbClass {
        HilbClass {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] + &rhs.coeffs[k]),
        }
    }
}

impl<'a> Sub<&'a HilbClass> for &'a HilbClass {
    type Output = HilbClass;
    fn sub(self, rhs: &HilbClass) -> HilbClass {
        HilbClass {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] - &rhs.coeffs[k]),
        }
    }
}

impl<'a> Mul<&'a HilbClass> for &'a HilbClass {
    type Output = HilbClass;
    fn mul(self, rhs: &HilbClass) -> HilbClass {
        let mut out = HilbClass::zero();
        for (i, x) in self.support() {
            for (j, y) in rhs.support() {
                let (a1, b1) = MONOMIALS[i];
                let (a2, b2) = MONOMIALS[j];
                out = &out + &HilbClass::monomial(a1 + a2, b1 + b2).scale(&(x * y));
            }
        }
        out
    }
}

impl Neg for &HilbClass {
    type Output = HilbClass;
    fn neg(self) -> HilbClass {
        self.scale(&GaussRational::real(int(-1)))
    }
}

impl fmt::Display for HilbClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support()
            .map(|(k, c)| {
                if c.is_one() {
                    BASIS_NAMES[k].to_string()
                } else {
                    format!("({c})*{}", BASIS_NAMES[k])
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Curve class `a·B1 + b·B2` on the Hilbert scheme, with `T_i · B_j = δ_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    pub a: i64,
    pub b: i64,
}

impl CurveClass {
    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// Intersection with the divisor `c1·T1 + c2·T2`.
    pub fn dot_divisor(&self, c1: i64, c2: i64) -> i64 {
        c1 * self.a + c2 * self.b
    }

    /// Intersection with the exceptional divisor `E = −2T1 + 2T2`.
    pub fn dot_exceptional(&self) -> i64 {
        self.dot_divisor(-2, 2)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}B1+{}B2", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_relations() {
        let t1 = HilbClass::t1();
        let t2 = HilbClass::t2();
        assert!(t1.pow(3).is_zero());
        let rhs = &(&t1 * &t2.pow(2)).scale(&GaussRational::from_int(3))
            + &(&t1.pow(2) * &t2).scale(&GaussRational::from_int(3));
        assert_eq!(t2.pow(3), rhs);
        assert_eq!(t2.pow(4), HilbClass::basis(8).scale(&GaussRational::from_int(12)));
        assert_eq!(t2.pow(4).integrate(), GaussRational::from_int(3));
        assert!((&t1 * &t2).integrate().is_zero());
    }

    #[test]
    fn exceptional_divisor_pairing() {
        assert_eq!(CurveClass::new(1, 1).dot_exceptional(), 0);
        assert_eq!(CurveClass::new(0, 1).dot_exceptional(), 2);
        assert_eq!(CurveClass::new(2, 1).dot_exceptional(), -2);
    }
}
