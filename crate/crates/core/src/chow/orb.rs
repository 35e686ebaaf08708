use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::arith::{int, rat, GaussRational, Rational};

pub const DIM: usize = 9;

pub const ONE: usize = 0;
pub const ALPHA: usize = 1;
pub const ALPHA2: usize = 2;
pub const BETA: usize = 3;
pub const ALPHA3: usize = 4;
pub const ALPHA4: usize = 5;
pub const GAMMA0: usize = 6;
pub const GAMMA1: usize = 7;
pub const GAMMA2: usize = 8;

/// Orbifold degree (codimension plus age) of each basis class.
pub const ORB_DEG: [u32; DIM] = [0, 1, 2, 2, 3, 4, 1, 2, 3];

pub const BASIS_NAMES: [&str; DIM] = ["1", "a", "a^2", "b", "a^3", "a^4", "g", "g1", "g2"];

pub fn is_twisted(i: usize) -> bool {
    i >= GAMMA0
}

// Truncated polynomials in h1, h2 modulo (h1^3, h2^3); index 3*e1 + e2.
type Cover = [Rational; 9];

fn cover_zero() -> Cover {
    std::array::from_fn(|_| Rational::zero())
}

fn cover_mono(c: Rational, e1: usize, e2: usize) -> Cover {
    let mut p = cover_zero();
    if e1 < 3 && e2 < 3 {
        p[3 * e1 + e2] = c;
    }
    p
}

fn cover_add(a: &Cover, b: &Cover) -> Cover {
    std::array::from_fn(|k| &a[k] + &b[k])
}

fn cover_mul(a: &Cover, b: &Cover) -> Cover {
    let mut out = cover_zero();
    for (ka, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (kb, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            let (e1, e2) = (ka / 3 + kb / 3, ka % 3 + kb % 3);
            if e1 < 3 && e2 < 3 {
                out[3 * e1 + e2] += x * y;
            }
        }
    }
    out
}

fn cover_pow(a: &Cover, n: u32) -> Cover {
    (0..n).fold(cover_mono(Rational::one(), 0, 0), |acc, _| cover_mul(&acc, a))
}

fn coef(p: &Cover, e1: usize, e2: usize) -> &Rational {
    &p[3 * e1 + e2]
}

/// Pullback of an untwisted basis class to P² × P².
fn pullback(i: usize) -> Cover {
    let h = cover_add(&cover_mono(int(1), 1, 0), &cover_mono(int(1), 0, 1));
    match i {
        ONE => cover_mono(int(1), 0, 0),
        ALPHA => h,
        ALPHA2 => cover_pow(&h, 2),
        BETA => cover_mono(int(1), 1, 1),
        ALPHA3 => cover_pow(&h, 3),
        ALPHA4 => cover_pow(&h, 4),
        _ => unreachable!("twisted class has no pullback"),
    }
}

/// Inverse of `pullback` on symmetric elements.
fn descend(p: &Cover) -> [Rational; DIM] {
    for e1 in 0..3 {
        for e2 in 0..3 {
            assert_eq!(coef(p, e1, e2), coef(p, e2, e1), "pullback image must be symmetric");
        }
    }
    let mut out: [Rational; DIM] = std::array::from_fn(|_| Rational::zero());
    out[ONE] = coef(p, 0, 0).clone();
    out[ALPHA] = coef(p, 1, 0).clone();
    out[ALPHA2] = coef(p, 2, 0).clone();
    out[BETA] = coef(p, 1, 1) - coef(p, 2, 0) * int(2);
    out[ALPHA3] = coef(p, 2, 1) / int(3);
    out[ALPHA4] = coef(p, 2, 2) / int(6);
    out
}

/// Restriction of an untwisted class to the diagonal, as a polynomial in h (length 3).
fn restrict_to_diagonal(p: &Cover) -> [Rational; 3] {
    let mut out: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
    for e1 in 0..3 {
        for e2 in 0..3 {
            if e1 + e2 < 3 {
                out[e1 + e2] += coef(p, e1, e2);
            }
        }
    }
    out
}

/// Frozen structure constants, derived once from the double cover.
pub struct OrbRing {
    mult: Vec<Rational>,
    pairing: Vec<Vec<Rational>>,
}

impl OrbRing {
    pub fn get() -> &'static OrbRing {
        static RING: OnceLock<OrbRing> = OnceLock::new();
        RING.get_or_init(OrbRing::derive)
    }

    fn derive() -> OrbRing {
        let mut mult = vec![Rational::zero(); DIM * DIM * DIM];
        let diag = cover_add(
            &cover_add(&cover_mono(int(1), 2, 0), &cover_mono(int(1), 1, 1)),
            &cover_mono(int(1), 0, 2),
        );
        for i in 0..DIM {
            for j in 0..DIM {
                let row: [Rational; DIM] = match (is_twisted(i), is_twisted(j)) {
                    (false, false) => descend(&cover_mul(&pullback(i), &pullback(j))),
                    (false, true) | (true, false) => {
                        let (u, t) = if is_twisted(j) { (i, j) } else { (j, i) };
                        let r = restrict_to_diagonal(&pullback(u));
                        let mut out: [Rational; DIM] = std::array::from_fn(|_| Rational::zero());
                        for (k, c) in r.iter().enumerate() {
                            let target = t - GAMMA0 + k;
                            if target < 3 {
                                out[GAMMA0 + target] += c;
                            }
                        }
                        out
                    }
                    (true, true) => {
                        let m = i + j - 2 * GAMMA0;
                        if m > 2 {
                            std::array::from_fn(|_| Rational::zero())
                        } else {
                            // the diagonal class times h^m, symmetrised
                            let hm = cover_add(
                                &cover_mono(rat(1, 2), m, 0),
                                &cover_mono(rat(1, 2), 0, m),
                            );
                            descend(&cover_mul(&hm, &diag))
                        }
                    }
                };
                for (k, c) in row.into_iter().enumerate() {
                    mult[(i * DIM + j) * DIM + k] = c;
                }
            }
        }
        let top = |k: usize| -> Rational {
            // ∫ over the quotient is half of ∫ over P² × P², where ∫h1²h2² = 1
            if k == ALPHA4 {
                int(3)
            } else {
                Rational::zero()
            }
        };
        let pairing = (0..DIM)
            .map(|i| {
                (0..DIM)
                    .map(|j| (0..DIM).map(|k| &mult[(i * DIM + j) * DIM + k] * top(k)).sum())
                    .collect()
            })
            .collect();
        OrbRing { mult, pairing }
    }

    /// Coefficient of basis class `k` in the product of basis classes `i` and `j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.mult[(i * DIM + j) * DIM + k]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> OrbClass {
        OrbClass::from_rationals((0..DIM).map(|k| self.structure_constant(i, j, k).clone()))
    }

    pub fn pairing_entry(&self, i: usize, j: usize) -> &Rational {
        &self.pairing[i][j]
    }

    pub fn pairing_matrix(&self) -> &[Vec<Rational>] {
        &self.pairing
    }

    /// `∫ ξ_i ξ_j ξ_k`, the degree-0 three-point invariant.
    pub fn triple_integral(&self, i: usize, j: usize, k: usize) -> Rational {
        (0..DIM)
            .map(|l| self.structure_constant(i, j, l) * &self.pairing[l][k])
            .sum()
    }
}

/// A class in the orbifold Chow ring, coordinates over the fixed basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrbClass {
    pub coeffs: [GaussRational; DIM],
}

impl OrbClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(ONE)
    }

    pub fn basis(i: usize) -> Self {
        let mut c = Self::zero();
        c.coeffs[i] = GaussRational::one();
        c
    }

    pub fn from_rationals<I: IntoIterator<Item = Rational>>(it: I) -> Self {
        let mut c = Self::zero();
        for (k, x) in it.into_iter().enumerate() {
            c.coeffs[k] = x.into();
        }
        c
    }

    pub fn alpha() -> Self {
        Self::basis(ALPHA)
    }

    pub fn beta() -> Self {
        Self::basis(BETA)
    }

    pub fn gamma() -> Self {
        Self::basis(GAMMA0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] * c),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Nonzero coordinates as `(basis index, coefficient)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &GaussRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// The orbifold degree if the class is homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.support().map(|(k, _)| ORB_DEG[k]);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn integrate(&self) -> GaussRational {
        self.coeffs[ALPHA4].scale(&int(3))
    }

    pub fn pairing(&self, other: &Self) -> GaussRational {
        let ring = OrbRing::get();
        let mut acc = GaussRational::zero();
        for (i, x) in self.support() {
            for (j, y) in other.support() {
                let p = ring.pairing_entry(i, j);
                if !p.is_zero() {
                    acc += &(x * y).scale(p);
                }
            }
        }
        acc
    }
}

impl<'a> Add<&'a OrbClass> for &'a OrbClass {
    type Output = OrbClass;
    fn add(self, rhs: &OrbClass) -> OrbClass {
        OrbClass {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] + &rhs.coeffs[k]),
        }
    }
}

impl<'a> Sub<&'a OrbClass> for &'a OrbClass {
    type Output = OrbClass;
    fn sub(self, rhs: &OrbClass) -> OrbClass {
        OrbClass {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] - &rhs.coeffs[k]),
        }
    }
}

impl<'a> Mul<&'a OrbClass> for &'a OrbClass {
    type Output = OrbClass;
    fn mul(self, rhs: &OrbClass) -> OrbClass {
        let ring = OrbRing::get();
        let mut out = OrbClass::zero();
        for (i, x) in self.support() {
            for (j, y) in rhs.support() {
                let xy = x * y;
                for k in 0..DIM {
                    let c = ring.structure_constant(i, j, k);
                    if !c.is_zero() {
                        out.coeffs[k] += &xy.scale(c);
                    }
                }
            }
        }
        out
    }
}

impl Neg for &OrbClass {
    type Output = OrbClass;
    fn neg(self) -> OrbClass {
        OrbClass {
            coeffs: std::array::from_fn(|k| -&self.coeffs[k]),
        }
    }
}

impl fmt::Display for OrbClass {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: usize) -> OrbClass {
        OrbClass::basis(i)
    }

    #[test]
    fn named_products() {
        let r = OrbRing::get();
        assert_eq!(&b(ALPHA) * &b(GAMMA0), b(GAMMA1).scale(&GaussRational::from_int(2)));
        assert_eq!(&b(GAMMA0) * &b(GAMMA0), &b(ALPHA2) - &b(BETA));
        assert_eq!(r.basis_product(ALPHA2, BETA), b(ALPHA4).scale(&rat(1, 3).into()));
        assert_eq!(r.basis_product(GAMMA0, GAMMA2), b(ALPHA4).scale(&rat(1, 6).into()));
        assert_eq!(r.basis_product(BETA, BETA), b(ALPHA4).scale(&rat(1, 6).into()));
    }

    #[test]
    fn integration_and_pairing() {
        let r = OrbRing::get();
        assert_eq!(b(ALPHA4).integrate(), GaussRational::from_int(3));
        assert!(b(GAMMA2).integrate().is_zero());
        assert_eq!(r.pairing_entry(ALPHA2, BETA), &int(1));
        assert_eq!(r.pairing_entry(GAMMA0, GAMMA2), &rat(1, 2));
        assert_eq!(r.pairing_entry(GAMMA1, GAMMA1), &rat(1, 2));
        assert!(r.pairing_entry(ONE, GAMMA2).is_zero());
    }
}
