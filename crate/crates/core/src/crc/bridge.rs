use num_traits::Zero;

use crate::arith::{invert_dense, mat_mul, GaussRational};
use crate::chow::orb::{self, DIM};
use crate::chow::{hilb, HilbClass, OrbClass};

/// Exponents `(a, b)` of the monomials `α^a γ^b` spanning the orbifold ring.
pub const MONOMIALS: [(u32, u32); DIM] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (4, 0),
];

pub fn orb_monomial(a: u32, b: u32) -> OrbClass {
    &OrbClass::alpha().pow(a) * &OrbClass::gamma().pow(b)
}

/// `L(α) = T2`, `L(γ) = i(T2 − T1)`.
pub fn l_alpha() -> HilbClass {
    HilbClass::t2()
}

pub fn l_gamma() -> HilbClass {
    (&HilbClass::t2() - &HilbClass::t1()).scale(&GaussRational::i())
}

pub fn hilb_monomial_image(a: u32, b: u32) -> HilbClass {
    &l_alpha().pow(a) * &l_gamma().pow(b)
}

/// The linear map L in coordinates: column `j` is the image of basis class `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeMap {
    pub matrix: Vec<Vec<GaussRational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialsDependent;

impl BridgeMap {
    /// The map, built once.
    pub fn get() -> &'static BridgeMap {
        static L: std::sync::OnceLock<BridgeMap> = std::sync::OnceLock::new();
        L.get_or_init(BridgeMap::default)
    }

    /// Extends L from the generators through the monomial basis; fails if the
    /// monomials do not span the orbifold ring.
    pub fn new() -> Result<Self, MonomialsDependent> {
        // columns: monomials in orbifold coordinates / their images
        let mono: Vec<OrbClass> = MONOMIALS.iter().map(|&(a, b)| orb_monomial(a, b)).collect();
        let images: Vec<HilbClass> = MONOMIALS.iter().map(|&(a, b)| hilb_monomial_image(a, b)).collect();
        let p: Vec<Vec<GaussRational>> = (0..DIM).map(|r| mono.iter().map(|m| m.coeffs[r].clone()).collect()).collect();
        let q: Vec<Vec<GaussRational>> = (0..hilb::DIM).map(|r| images.iter().map(|m| m.coeffs[r].clone()).collect()).collect();
        let p_inv = invert_dense(&p).map_err(|_| MonomialsDependent)?;
        Ok(Self {
            matrix: mat_mul(&q, &p_inv),
        })
    }

    pub fn apply(&self, x: &OrbClass) -> HilbClass {
        let mut out = HilbClass::zero();
        for r in 0..hilb::DIM {
            let mut acc = GaussRational::zero();
            for (j, c) in x.support() {
                acc += &(&self.matrix[r][j] * c);
            }
            out.coeffs[r] = acc;
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        invert_dense(&self.matrix).is_ok()
    }

    /// Every basis class maps to a class of the same degree.
    pub fn is_degree_preserving(&self) -> bool {
        (0..DIM).all(|j| {
            let img = self.apply(&OrbClass::basis(j));
            img.is_zero() || img.degree() == Some(orb::ORB_DEG[j])
        })
    }

    /// Multiplicativity on all basis pairs.
    pub fn is_ring_map(&self) -> bool {
        (0..DIM).all(|i| {
            (0..DIM).all(|j| {
                let (x, y) = (OrbClass::basis(i), OrbClass::basis(j));
                self.apply(&(&x * &y)) == &self.apply(&x) * &self.apply(&y)
            })
        }) && self.apply(&OrbClass::one()) == HilbClass::one()
    }
}

#[allow(clippy::derivable_impls)]
impl Default for BridgeMap {
    fn default() -> Self {
        Self::new().expect("orbifold monomials form a basis")
    }
}
