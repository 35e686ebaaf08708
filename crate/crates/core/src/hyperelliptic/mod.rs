//! Odd set partitions, the triangular conversion between Gromov–Witten
//! numbers J(d, g) and hyperelliptic counts E(d, g), and the end-to-end count.

mod partitions;

pub use partitions::{odd_set_partitions, set_partitions, visit_set_partitions, OddPartitionType};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{factorial, is_integral, is_nonnegative, pow, rat, GaussRational, Rational};
use crate::chow::orb::{ALPHA2, BETA, GAMMA0};
use crate::chow::OrbClass;
use crate::gw::InvariantQuery;
use crate::wdvv::{Engine, WdvvError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperellipticError {
    #[error("partition type of size {got} does not partition a set of size {n}")]
    TypeMismatch { n: usize, got: usize },
    #[error(transparent)]
    Engine(#[from] WdvvError),
    #[error("J(d, g) came out non-real: {0}")]
    NonReal(String),
}

/// Number of set partitions of an `n`-set with the given odd type:
/// `n! / (Π (2i+1)!^{b_i} · Π b_i!)`.
pub fn partition_type_count(n: usize, ty: &OddPartitionType) -> Result<BigInt, HyperellipticError> {
    if ty.size() != n {
        return Err(HyperellipticError::TypeMismatch { n, got: ty.size() });
    }
    let mut denom = BigInt::one();
    for (i, &b) in ty.counts.iter().enumerate() {
        denom *= num_traits::pow(factorial(2 * i as u64 + 1), b as usize);
        denom *= factorial(b as u64);
    }
    Ok(factorial(n as u64) / denom)
}

/// Weight of one contracted tooth.
pub fn tooth_weight() -> Rational {
    rat(-1, 4)
}

/// Lower-triangular `M` with `J = M·E`, rows and columns indexed by genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionMatrix {
    pub entries: Vec<Vec<Rational>>,
}

impl ConversionMatrix {
    pub fn max_genus(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, g: usize, h: usize) -> &Rational {
        &self.entries[g][h]
    }
}

/// Closed form: sum over odd types with `2h + 2` parts of a `(2g + 2)`-set.
pub fn conversion_matrix(max_genus: usize) -> ConversionMatrix {
    let entries = (0..=max_genus)
        .map(|g| {
            (0..=max_genus)
                .map(|h| {
                    if h > g {
                        return Rational::zero();
                    }
                    let n = 2 * g + 2;
                    let total: BigInt = OddPartitionType::enumerate(n, 2 * h + 2)
                        .iter()
                        .map(|t| partition_type_count(n, t).expect("type sized to n"))
                        .sum();
                    pow(&tooth_weight(), (g - h) as u32)
                        * Rational::from_integer(factorial(2 * h as u64 + 2) * total)
                })
                .collect()
        })
        .collect();
    ConversionMatrix { entries }
}

/// Same matrix by summing over explicit set partitions into odd blocks.
pub fn conversion_matrix_by_enumeration(max_genus: usize) -> ConversionMatrix {
    let size = max_genus + 1;
    let mut entries = vec![vec![Rational::zero(); size]; size];
    for (g, row) in entries.iter_mut().enumerate() {
        for blocks in odd_set_partitions(2 * g + 2) {
            let h = (blocks.len() - 2) / 2;
            row[h] += pow(&tooth_weight(), (g - h) as u32) * Rational::from_integer(factorial(2 * h as u64 + 2));
        }
    }
    ConversionMatrix { entries }
}

pub fn j_from_e(m: &ConversionMatrix, e: &[Rational]) -> Vec<Rational> {
    (0..e.len())
        .map(|g| (0..=g).map(|h| m.get(g, h) * &e[h]).sum())
        .collect()
}

/// Forward substitution; the diagonal `(2g + 2)!` never vanishes.
pub fn e_from_j(m: &ConversionMatrix, j: &[Rational]) -> Vec<Rational> {
    let mut e: Vec<Rational> = Vec::with_capacity(j.len());
    for (g, jg) in j.iter().enumerate() {
        let partial: Rational = (0..g).map(|h| m.get(g, h) * &e[h]).sum();
        e.push((jg - partial) / m.get(g, g));
    }
    e
}

/// `α² − 2β`, the class of the locus of point pairs meeting a fixed point.
pub fn incidence_class() -> OrbClass {
    &OrbClass::basis(ALPHA2) - &OrbClass::basis(BETA).scale(&GaussRational::from_int(2))
}

/// `⟨(α² − 2β)^{3d+1}, γ0^{2g+2}⟩_d`
pub fn j_query(d: u32, g: u32) -> InvariantQuery {
    let mut ins = vec![incidence_class(); 3 * d as usize + 1];
    ins.extend(std::iter::repeat_n(OrbClass::basis(GAMMA0), 2 * g as usize + 2));
    InvariantQuery::new(d, ins)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub g: u32,
    pub j: Rational,
    pub e: Rational,
    pub integral: bool,
    pub nonnegative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub d: u32,
    pub rows: Vec<CountRow>,
}

pub fn count_hyperelliptic(engine: &mut Engine, d: u32, max_genus: u32) -> Result<CountTable, HyperellipticError> {
    let mut js = Vec::new();
    for g in 0..=max_genus {
        let v = engine.compute_query(&j_query(d, g))?;
        let re = v.as_real().cloned().ok_or_else(|| HyperellipticError::NonReal(v.to_string()))?;
        js.push(re);
    }
    let m = conversion_matrix(max_genus as usize);
    let es = e_from_j(&m, &js);
    let rows = js
        .into_iter()
        .zip(es)
        .enumerate()
        .map(|(g, (j, e))| CountRow {
            g: g as u32,
            integral: is_integral(&e),
            nonnegative: is_nonnegative(&e),
            j,
            e,
        })
        .collect();
    Ok(CountTable { d, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn small_matrix_entries() {
        let m = conversion_matrix(2);
        assert_eq!(m.get(0, 0), &int(2));
        assert_eq!(m.get(1, 1), &int(24));
        assert_eq!(m.get(1, 0), &int(-2));
        assert!(m.get(0, 1).is_zero());
        assert_eq!(m, conversion_matrix_by_enumeration(2));
    }

    #[test]
    fn type_counts() {
        let t = |c: &[u32]| OddPartitionType { counts: c.to_vec() };
        assert_eq!(partition_type_count(4, &t(&[4])).unwrap(), BigInt::from(1));
        assert_eq!(partition_type_count(4, &t(&[1, 1])).unwrap(), BigInt::from(4));
        assert_eq!(partition_type_count(6, &t(&[0, 2])).unwrap(), BigInt::from(10));
        assert!(partition_type_count(5, &t(&[1, 1])).is_err());
    }

    #[test]
    fn incidence_self_intersection() {
        let x = incidence_class();
        assert_eq!(x.degree(), Some(2));
        assert_eq!((&x * &x).integrate(), GaussRational::from_int(1));
    }
}
