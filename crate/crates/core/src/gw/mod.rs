//! Invariant keys, the axioms, and the closed-form initial data.

mod key;

pub use key::{InvariantKey, KeyParseError};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{bernoulli, int, pow, sign, GaussRational, Rational};
#[cfg(test)]
use crate::arith::rat;
use crate::chow::orb::{
    is_twisted, ALPHA, ALPHA2, ALPHA3, ALPHA4, BETA, DIM, GAMMA0, GAMMA1, GAMMA2, ONE,
};
use crate::chow::{OrbClass, OrbRing};

/// Why an invariant has the value it has without running the reconstruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    Dimension,
    Parity,
    UnitAxiom,
    DivisorAxiom,
    ThreePointIntegral,
    DegreeZeroUntwisted,
    DegreeZeroHodge,
    TwoPointTable,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::Dimension => "dimension",
            Reason::Parity => "parity",
            Reason::UnitAxiom => "unit axiom",
            Reason::DivisorAxiom => "divisor axiom",
            Reason::ThreePointIntegral => "three-point integral",
            Reason::DegreeZeroUntwisted => "degree-zero untwisted insertion",
            Reason::DegreeZeroHodge => "degree-zero Hodge integral",
            Reason::TwoPointTable => "degree-one two-point table",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of applying the axioms to a key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Moduli space is empty; the bracket is absent rather than zero.
    Unstable,
    Value(Rational, Reason),
    /// `factor · ⟨key⟩`, where `key` needs the reconstruction.
    Pending(Rational, InvariantKey),
}

pub fn dimension_matches(key: &InvariantKey) -> bool {
    key.degree_sum() as usize == 3 * key.d as usize + 1 + key.n()
}

pub fn parity_ok(key: &InvariantKey) -> bool {
    key.twisted_count().is_multiple_of(2)
}

/// Σ orbdeg = 3d + 1 + n and an even number of twisted insertions.
pub fn dimension_admissible(key: &InvariantKey) -> bool {
    dimension_matches(key) && parity_ok(key)
}

/// `(−1)^{g−1} (2^{2g} − 1) B_{2g} / (2g)`, the integral of λ_g λ_{g−1}.
pub fn fp_hodge_integral(g: u32) -> Rational {
    assert!(g >= 1, "Hodge integral needs g >= 1");
    let two_g = 2 * g as usize;
    sign(g as i64 - 1) * (pow(&int(2), 2 * g) - int(1)) * bernoulli(two_g) / int(two_g as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeData {
    pub g: u32,
    pub value: Rational,
}

impl HodgeData {
    pub fn new(g: u32) -> Self {
        Self {
            g,
            value: fp_hodge_integral(g),
        }
    }
}

/// `⟨γ1, γ0^{2g+1}⟩_0 = (−1)^g (2^{2g} − 1)·3·B_{2g} / (2g)`.
pub fn degree_zero_twisted(g: u32) -> Rational {
    -fp_hodge_integral(g) * int(3)
}

/// Degree-one two-point values.
pub fn two_point_table() -> &'static [((usize, usize), Rational)] {
    static TABLE: OnceLock<Vec<((usize, usize), Rational)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        vec![
            ((ALPHA2, ALPHA4), int(6)),
            ((BETA, ALPHA4), int(0)),
            ((ALPHA3, ALPHA3), int(9)),
            ((GAMMA2, GAMMA2), int(1)),
        ]
    })
}

fn triple(key: &InvariantKey) -> Rational {
    let v = key.insertions();
    OrbRing::get().triple_integral(v[0], v[1], v[2])
}

/// Applies, in order: stability, dimension and parity, the unit axiom, the
/// divisor axiom, the degree-zero closed forms, and the degree-one table.
pub fn reduce(key: &InvariantKey) -> Reduction {
    let mut factor = Rational::one();
    let mut key = *key;
    loop {
        let n = key.n();
        if key.d == 0 && n < 3 {
            return Reduction::Unstable;
        }
        let value = |v: Rational, r: Reason| {
            let reason = if factor.is_one() { r } else { Reason::DivisorAxiom };
            Reduction::Value(&factor * v, reason)
        };
        if key.count(ONE) > 0 {
            return if key.d == 0 && n == 3 {
                value(triple(&key), Reason::ThreePointIntegral)
            } else {
                value(Rational::zero(), Reason::UnitAxiom)
            };
        }
        if !dimension_matches(&key) {
            return Reduction::Value(Rational::zero(), Reason::Dimension);
        }
        if !parity_ok(&key) {
            return Reduction::Value(Rational::zero(), Reason::Parity);
        }
        if key.count(ALPHA) > 0 {
            if key.d == 0 {
                return if n == 3 {
                    value(triple(&key), Reason::ThreePointIntegral)
                } else {
                    value(Rational::zero(), Reason::DivisorAxiom)
                };
            }
            factor *= int(key.d as i64);
            key = key.without(ALPHA);
            continue;
        }
        if key.d == 0 {
            if n == 3 {
                return value(triple(&key), Reason::ThreePointIntegral);
            }
            if (0..DIM).any(|i| !is_twisted(i) && key.count(i) > 0) {
                return value(Rational::zero(), Reason::DegreeZeroUntwisted);
            }
            let g = (n - 2) / 2;
            return if key.count(GAMMA1) == 1 && key.count(GAMMA0) as usize == n - 1 {
                value(degree_zero_twisted(g as u32), Reason::DegreeZeroHodge)
            } else {
                value(Rational::zero(), Reason::DegreeZeroHodge)
            };
        }
        if key.d == 1 && n == 2 {
            let v = key.insertions();
            if let Some((_, val)) = two_point_table().iter().find(|((i, j), _)| (*i, *j) == (v[0], v[1])) {
                return value(val.clone(), Reason::TwoPointTable);
            }
        }
        return Reduction::Pending(factor, key);
    }
}

/// The value when the axioms and closed forms determine it.
pub fn base_value(key: &InvariantKey) -> Option<Rational> {
    match reduce(key) {
        Reduction::Value(v, _) => Some(v),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GwError {
    #[error("insertion {0} mixes the untwisted and twisted sectors")]
    MixedSector(usize),
}

/// A bracket with arbitrary classes as insertions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantQuery {
    pub d: u32,
    pub insertions: Vec<OrbClass>,
}

impl InvariantQuery {
    pub fn new(d: u32, insertions: Vec<OrbClass>) -> Self {
        Self { d, insertions }
    }

    /// Multilinear expansion into basis keys; zero coefficients are dropped.
    pub fn expand(&self) -> BTreeMap<InvariantKey, GaussRational> {
        let mut acc: BTreeMap<[u16; DIM], GaussRational> = BTreeMap::new();
        acc.insert([0; DIM], GaussRational::one());
        for x in &self.insertions {
            let mut next = BTreeMap::new();
            for (counts, c) in &acc {
                for (i, xi) in x.support() {
                    let mut k = *counts;
                    k[i] += 1;
                    let slot: &mut GaussRational = next.entry(k).or_default();
                    *slot += &(c * xi);
                }
            }
            next.retain(|_, c: &mut GaussRational| !c.is_zero());
            acc = next;
        }
        acc.into_iter()
            .map(|(counts, c)| (InvariantKey::from_counts(self.d, counts), c))
            .collect()
    }
}

/// The genus-refined bracket `⟨φ⟩_{(d,h)}` as a `d`-bracket: append γ0 until
/// there are `2h + 2` twisted insertions. `None` means identically zero.
pub fn convert_notation(d: u32, h: i64, insertions: &[OrbClass]) -> Result<Option<InvariantQuery>, GwError> {
    let mut twisted = 0i64;
    for (pos, x) in insertions.iter().enumerate() {
        let tw = x.support().filter(|(i, _)| is_twisted(*i)).count();
        let un = x.support().count() - tw;
        if tw > 0 && un > 0 {
            return Err(GwError::MixedSector(pos));
        }
        if tw > 0 {
            twisted += 1;
        }
    }
    let extra = 2 * h + 2 - twisted;
    if extra < 0 {
        return Ok(None);
    }
    let mut ins = insertions.to_vec();
    ins.extend(std::iter::repeat_n(OrbClass::basis(GAMMA0), extra as usize));
    Ok(Some(InvariantQuery::new(d, ins)))
}

/// `⟨γ1, γ0^{2g+1}⟩_0` as a key.
pub fn hodge_key(g: u32) -> InvariantKey {
    let mut ins = vec![GAMMA1];
    ins.extend(std::iter::repeat_n(GAMMA0, 2 * g as usize + 1));
    InvariantKey::new(0, &ins)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(dimension_admissible(&InvariantKey::new(1, &[ALPHA4, ALPHA2])));
        assert!(!dimension_admissible(&InvariantKey::new(1, &[ALPHA4, GAMMA1])));
        assert!(!dimension_admissible(&InvariantKey::new(0, &[ALPHA3, ALPHA3])));
    }

    #[test]
    fn base_values() {
        let k = |d, v: &[usize]| InvariantKey::new(d, v);
        assert_eq!(base_value(&k(1, &[ALPHA4, ALPHA2])), Some(int(6)));
        assert_eq!(base_value(&k(1, &[GAMMA2, GAMMA2])), Some(int(1)));
        assert_eq!(base_value(&k(0, &[GAMMA1, GAMMA0, GAMMA0, GAMMA0])), Some(rat(-3, 4)));
        assert_eq!(base_value(&hodge_key(2)), Some(rat(-3, 8)));
        assert_eq!(base_value(&k(0, &[ALPHA2, GAMMA0, GAMMA0, GAMMA0, GAMMA0])), Some(int(0)));
        assert_eq!(base_value(&k(1, &[ALPHA, ALPHA4, ALPHA2])), Some(int(6)));
        assert_eq!(
            reduce(&k(2, &[ALPHA, ALPHA2, ALPHA4, ALPHA4])),
            Reduction::Pending(int(2), k(2, &[ALPHA2, ALPHA4, ALPHA4]))
        );
        assert_eq!(reduce(&k(0, &[GAMMA0, GAMMA0])), Reduction::Unstable);
        assert_eq!(
            reduce(&k(5, &[ONE, ALPHA, ALPHA2])),
            Reduction::Value(int(0), Reason::UnitAxiom)
        );
        assert_eq!(
            reduce(&k(1, &[ALPHA4, GAMMA1])),
            Reduction::Value(int(0), Reason::Parity)
        );
    }

    #[test]
    fn hodge_values() {
        assert_eq!(fp_hodge_integral(1), rat(1, 4));
        assert_eq!(fp_hodge_integral(2), rat(1, 8));
    }

    #[test]
    fn notation_conversion() {
        let g2 = OrbClass::basis(GAMMA2);
        let q = convert_notation(1, 1, &[g2.clone(), g2.clone()]).unwrap().unwrap();
        assert_eq!(q.insertions.len(), 4);
        assert_eq!(q.expand().into_keys().collect::<Vec<_>>(), vec![InvariantKey::new(1, &[6, 6, 8, 8])]);
        let q0 = convert_notation(1, 0, &[g2.clone(), g2.clone()]).unwrap().unwrap();
        assert_eq!(q0.insertions.len(), 2);
        assert_eq!(convert_notation(1, -1, &[g2.clone(), g2]).unwrap(), None);
    }
}
