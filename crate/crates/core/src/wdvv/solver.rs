use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::arith::Rational;
use crate::gw::InvariantKey;

/// Sparse row `Σ terms[k]·x_k + constant = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Row {
    pub terms: BTreeMap<InvariantKey, Rational>,
    pub constant: Rational,
}

impl Row {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: InvariantKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `self += c · other`
    pub fn axpy(&mut self, c: &Rational, other: &Row) {
        for (k, v) in &other.terms {
            self.add_term(*k, c * v);
        }
        self.constant += c * &other.constant;
    }

    /// Value of the row with every unknown substituted from `values`.
    pub fn evaluate(&self, values: &BTreeMap<InvariantKey, Rational>) -> Option<Rational> {
        let mut acc = self.constant.clone();
        for (k, c) in &self.terms {
            acc += c * values.get(k)?;
        }
        Some(acc)
    }
}

/// Raised when a reduced row has no unknowns but a nonzero constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistent {
    pub residual: Rational,
}

/// Incremental row echelon form. The pivot of a row is its smallest key, so
/// eliminating a pivot only ever introduces larger keys and reduction ends.
#[derive(Clone, Debug, Default)]
pub struct EchelonSystem {
    unknowns: BTreeSet<InvariantKey>,
    pivots: BTreeMap<InvariantKey, Row>,
    rows_seen: usize,
}

impl EchelonSystem {
    pub fn new(unknowns: BTreeSet<InvariantKey>) -> Self {
        Self {
            unknowns,
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn unknown_count(&self) -> usize {
        self.unknowns.len()
    }

    pub fn rows_seen(&self) -> usize {
        self.rows_seen
    }

    pub fn is_full_rank(&self) -> bool {
        self.pivots.len() == self.unknowns.len()
    }

    fn reduce(&self, mut row: Row) -> Row {
        while let Some(k) = row.terms.keys().find(|k| self.pivots.contains_key(k)).copied() {
            let c = -row.terms[&k].clone();
            row.axpy(&c, &self.pivots[&k]);
        }
        row
    }

    /// Adds a relation; returns whether it raised the rank.
    pub fn add(&mut self, row: Row) -> Result<bool, Inconsistent> {
        self.rows_seen += 1;
        debug_assert!(row.terms.keys().all(|k| self.unknowns.contains(k)));
        let row = self.reduce(row);
        let Some((&pivot, lead)) = row.terms.iter().next() else {
            return if row.constant.is_zero() {
                Ok(false)
            } else {
                Err(Inconsistent {
                    residual: row.constant,
                })
            };
        };
        let inv = lead.recip();
        let mut normalized = Row::default();
        normalized.axpy(&inv, &row);
        self.pivots.insert(pivot, normalized);
        Ok(true)
    }

    /// Solved values, and the unknowns left free (non-pivots, or pivots whose
    /// rows still reach a free unknown).
    pub fn back_substitute(&self) -> (BTreeMap<InvariantKey, Rational>, Vec<InvariantKey>) {
        let mut values: BTreeMap<InvariantKey, Rational> = BTreeMap::new();
        for (k, row) in self.pivots.iter().rev() {
            let mut acc = row.constant.clone();
            let mut ok = true;
            for (j, c) in row.terms.iter().filter(|(j, _)| *j != k) {
                match values.get(j) {
                    Some(v) => acc += c * v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                values.insert(*k, -acc);
            }
        }
        let free = self.unknowns.iter().filter(|k| !values.contains_key(k)).copied().collect();
        (values, free)
    }
}
