//! Reconstruction of genus-zero invariants from the initial data via WDVV.
//!
//! Invariants are organised in levels `(d, n)`. Every identity used at a level
//! has `n + 1` marked points; its unknown terms are `n`-point degree-`d`
//! invariants and everything else sits at a lower level.

mod relation;
mod solver;
mod store;

pub use relation::{level_relations, level_unknowns, multisets, Known, RelationLabel, WdvvRelation};
pub use solver::{EchelonSystem, Inconsistent, Row};
pub use store::{sha256_hex, CacheError, InvariantStore};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{format_rational, invert_dense, GaussRational, Rational};
use crate::chow::orb::{BASIS_NAMES, DIM};
use crate::chow::{OrbClass, OrbRing};
use crate::gw::{fp_hodge_integral, reduce, two_point_table, InvariantKey, InvariantQuery, Reduction};

use relation::Context;

/// `(degree, number of insertions)`
pub type Level = (u32, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WdvvError {
    #[error("invariant {0} is unstable")]
    Unstable(InvariantKey),
    #[error("unstable factor {0} inside a relation")]
    UnstableFactor(InvariantKey),
    #[error("lower invariant {0} needed before it was computed")]
    UnknownLowerInvariant(InvariantKey),
    #[error("relation has a product of two unknowns")]
    Nonlinear,
    #[error("level {level:?} is inconsistent: relation {relation} leaves residual {residual}")]
    Inconsistent {
        level: Level,
        relation: String,
        residual: String,
    },
    #[error("{key} not determined by the relations; free unknowns at its level: {free:?}")]
    Underdetermined { key: InvariantKey, free: Vec<String> },
    #[error("level {0:?} depends on itself")]
    Cycle(Level),
}

/// The basis with its dual under the orbifold pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasisPair {
    pub basis: Vec<OrbClass>,
    pub duals: Vec<OrbClass>,
    /// Inverse pairing matrix `g^{ij}`; `dual_i = Σ_j g^{ij} ξ_j`.
    pub ginv: Vec<Vec<Rational>>,
}

pub fn dual_basis() -> &'static DualBasisPair {
    static DUAL: OnceLock<DualBasisPair> = OnceLock::new();
    DUAL.get_or_init(|| {
        let g = OrbRing::get().pairing_matrix().to_vec();
        let ginv = invert_dense(&g).expect("orbifold pairing is nondegenerate");
        let basis = (0..DIM).map(OrbClass::basis).collect();
        let duals = ginv
            .iter()
            .map(|row| OrbClass::from_rationals(row.iter().cloned()))
            .collect();
        DualBasisPair { basis, duals, ginv }
    })
}

/// SHA-256 over everything the reconstruction consumes: structure constants,
/// pairing, two-point table, Hodge values and the relation schedule version.
pub fn initial_data_fingerprint() -> &'static str {
    static FP: OnceLock<String> = OnceLock::new();
    FP.get_or_init(|| {
        let ring = OrbRing::get();
        let mut s = String::from("symsq initial data v1\nbasis");
        for name in BASIS_NAMES {
            s.push(' ');
            s.push_str(name);
        }
        s.push('\n');
        for i in 0..DIM {
            for j in 0..DIM {
                let row: Vec<String> = (0..DIM).map(|k| format_rational(ring.structure_constant(i, j, k))).collect();
                s.push_str(&format!("mult {i} {j} {}\n", row.join(" ")));
            }
        }
        for i in 0..DIM {
            let row: Vec<String> = (0..DIM).map(|j| format_rational(ring.pairing_entry(i, j))).collect();
            s.push_str(&format!("pair {i} {}\n", row.join(" ")));
        }
        for ((i, j), v) in two_point_table() {
            s.push_str(&format!("two-point {i} {j} {v}\n"));
        }
        for g in 1..=8 {
            s.push_str(&format!("hodge {g} {}\n", fp_hodge_integral(g)));
        }
        sha256_hex(s.as_bytes())
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub unknowns: usize,
    pub relations_available: usize,
    pub relations_used: usize,
    pub rank: usize,
    pub free: Vec<InvariantKey>,
}

/// Lazily solves levels on demand and memoizes every reconstructed value.
pub struct Engine {
    store: InvariantStore,
    in_progress: BTreeSet<Level>,
    stats: BTreeMap<Level, LevelStats>,
    batch: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::with_store(InvariantStore::new())
    }

    pub fn with_store(store: InvariantStore) -> Self {
        Self {
            store,
            in_progress: BTreeSet::new(),
            stats: BTreeMap::new(),
            batch: 64,
        }
    }

    pub fn store(&self) -> &InvariantStore {
        &self.store
    }

    pub fn into_store(self) -> InvariantStore {
        self.store
    }

    pub fn stats(&self) -> &BTreeMap<Level, LevelStats> {
        &self.stats
    }

    /// Value of one basis bracket.
    pub fn compute_invariant(&mut self, key: &InvariantKey) -> Result<Rational, WdvvError> {
        match reduce(key) {
            Reduction::Unstable => Err(WdvvError::Unstable(*key)),
            Reduction::Value(v, _) => Ok(v),
            Reduction::Pending(f, k) => {
                if let Some(v) = self.store.get(&k) {
                    return Ok(f * v);
                }
                self.ensure_level(k.level())?;
                match self.store.get(&k) {
                    Some(v) => Ok(f * v),
                    None => Err(WdvvError::Underdetermined {
                        key: k,
                        free: self
                            .stats
                            .get(&k.level())
                            .map(|s| s.free.iter().map(ToString::to_string).collect())
                            .unwrap_or_default(),
                    }),
                }
            }
        }
    }

    /// Multilinear value of a bracket with arbitrary class insertions.
    pub fn compute_query(&mut self, query: &InvariantQuery) -> Result<GaussRational, WdvvError> {
        let mut acc = GaussRational::zero();
        for (key, c) in query.expand() {
            if matches!(reduce(&key), Reduction::Unstable) {
                continue;
            }
            let v = self.compute_invariant(&key)?;
            acc += &c.scale(&v);
        }
        Ok(acc)
    }

    fn prerequisites(level: Level) -> Vec<Level> {
        let (d, n) = level;
        let mut out = Vec::new();
        for d2 in 1..=d {
            for n2 in 2..=n {
                if (d2, n2) < (d, n) {
                    out.push((d2, n2));
                }
            }
        }
        out
    }

    /// Solves `level` after every level its relations can reach.
    pub fn ensure_level(&mut self, level: Level) -> Result<(), WdvvError> {
        if self.store.is_solved(level) {
            return Ok(());
        }
        if !self.in_progress.insert(level) {
            return Err(WdvvError::Cycle(level));
        }
        let result = (|| {
            for p in Self::prerequisites(level) {
                self.ensure_level(p)?;
            }
            self.solve_level(level)
        })();
        self.in_progress.remove(&level);
        result
    }

    fn solve_level(&mut self, level: Level) -> Result<(), WdvvError> {
        let unknowns = level_unknowns(level);
        let mut stats = LevelStats {
            unknowns: unknowns.len(),
            ..LevelStats::default()
        };
        if unknowns.is_empty() {
            self.store.mark_solved(level);
            self.stats.insert(level, stats);
            return Ok(());
        }
        let labels = level_relations(level);
        stats.relations_available = labels.len();
        let mut system = EchelonSystem::new(unknowns.iter().copied().collect());
        let ctx = Context {
            known: &self.store,
            ginv: &dual_basis().ginv,
            level,
        };
        'outer: for chunk in labels.chunks(self.batch) {
            let rels: Vec<WdvvRelation> = chunk
                .par_iter()
                .map(|l| ctx.relation(l.clone()))
                .collect::<Result<_, _>>()?;
            for rel in rels {
                stats.relations_used += 1;
                system.add(rel.row).map_err(|e| WdvvError::Inconsistent {
                    level,
                    relation: rel.label.to_string(),
                    residual: e.residual.to_string(),
                })?;
                if system.is_full_rank() {
                    break 'outer;
                }
            }
        }
        let (values, free) = system.back_substitute();
        stats.rank = system.rank();
        stats.free = free;
        for (k, v) in values {
            self.store.insert(k, v);
        }
        self.store.mark_solved(level);
        self.stats.insert(level, stats);
        Ok(())
    }

    /// Builds one relation against the current store.
    pub fn relation(&self, label: RelationLabel) -> Result<WdvvRelation, WdvvError> {
        let level = (label.d, label.rest.iter().map(|&c| c as usize).sum::<usize>() + 3);
        Context {
            known: &self.store,
            ginv: &dual_basis().ginv,
            level,
        }
        .relation(label)
    }

    /// Re-evaluates every identity of a solved level with the solved values
    /// substituted. Returns the labels with a nonzero or unevaluable residual.
    pub fn residuals(&mut self, level: Level) -> Result<Vec<(RelationLabel, Option<Rational>)>, WdvvError> {
        self.ensure_level(level)?;
        let ctx = Context {
            known: &self.store,
            ginv: &dual_basis().ginv,
            level,
        };
        let values = self.store.values();
        let labels = level_relations(level);
        let bad: Vec<_> = labels
            .par_iter()
            .map(|l| -> Result<Option<(RelationLabel, Option<Rational>)>, WdvvError> {
                let rel = ctx.relation(l.clone())?;
                let r = rel.row.evaluate(values);
                Ok(match r {
                    Some(v) if v.is_zero() => None,
                    other => Some((l.clone(), other)),
                })
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(bad)
    }

    /// Number of identities at a level, for reporting.
    pub fn relation_count(level: Level) -> usize {
        level_relations(level).len()
    }
}

/// `wdvv_relation(a, b, c, e, S, d)`: `F(ab|ce) − F(ac|be)` with unknowns at
/// level `(d, |S| + 3)`, constants folded from `known`.
pub fn wdvv_relation<K: Known>(
    known: &K,
    a: usize,
    b: usize,
    c: usize,
    e: usize,
    s: &[usize],
    d: u32,
) -> Result<WdvvRelation, WdvvError> {
    let rest = InvariantKey::new(d, s).counts;
    let level = (d, s.len() + 3);
    Context {
        known,
        ginv: &dual_basis().ginv,
        level,
    }
    .relation(RelationLabel {
        d,
        q: [a, b, c, e],
        rest,
        swap: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::chow::orb::{ALPHA2, ALPHA4, BETA, GAMMA0, GAMMA2, ONE};

    #[test]
    fn dual_basis_pairs_to_identity() {
        let db = dual_basis();
        for i in 0..DIM {
            for j in 0..DIM {
                let p = db.basis[i].pairing(&db.duals[j]);
                let expected = if i == j { GaussRational::from_int(1) } else { GaussRational::zero() };
                assert_eq!(p, expected, "({i},{j})");
            }
        }
        assert_eq!(db.duals[ONE], OrbClass::basis(ALPHA4).scale(&rat(1, 3).into()));
        assert_eq!(db.duals[GAMMA0], OrbClass::basis(GAMMA2).scale(&int(2).into()));
        let expected = &OrbClass::basis(ALPHA2) - &OrbClass::basis(BETA).scale(&int(2).into());
        assert_eq!(db.duals[ALPHA2], expected);
    }

    #[test]
    fn exchange_symmetry() {
        let empty = BTreeMap::new();
        let r = wdvv_relation(&empty, GAMMA0, ALPHA2, ALPHA2, GAMMA0, &[], 1).unwrap();
        assert!(r.is_trivial());
    }
}
