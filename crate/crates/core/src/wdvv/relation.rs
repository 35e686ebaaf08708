use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::arith::{binomial, Rational};
use crate::chow::orb::{is_twisted, ALPHA, DIM, ONE, ORB_DEG};
use crate::gw::{reduce, InvariantKey, Reduction};

use super::solver::Row;
use super::{Level, WdvvError};

/// Read access to invariants already reconstructed at lower levels.
pub trait Known {
    fn known(&self, key: &InvariantKey) -> Option<&Rational>;
}

impl Known for BTreeMap<InvariantKey, Rational> {
    fn known(&self, key: &InvariantKey) -> Option<&Rational> {
        self.get(key)
    }
}

/// Which WDVV identity: the marked quadruple `q`, the remaining points `rest`,
/// and the second splitting compared with `{q0 q1 | q2 q3}` (1 or 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationLabel {
    pub d: u32,
    pub q: [usize; 4],
    pub rest: [u16; DIM],
    pub swap: u8,
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, e] = self.q;
        let (x, y) = if self.swap == 1 { ((a, c), (b, e)) } else { ((a, e), (b, c)) };
        let rest = InvariantKey::from_counts(self.d, self.rest);
        write!(
            f,
            "d={} S=[{}] F({a}{b}|{c}{e}) - F({}{}|{}{})",
            self.d,
            rest.insertions().iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
            x.0,
            x.1,
            y.0,
            y.1
        )
    }
}

/// `Σ terms·⟨key⟩ + constant = 0`, with keys at a single level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdvvRelation {
    pub label: RelationLabel,
    pub row: Row,
}

impl WdvvRelation {
    pub fn is_trivial(&self) -> bool {
        self.row.is_empty() && self.row.constant.is_zero()
    }
}

/// A value linear in the unknowns of the current level.
#[derive(Clone, Debug, Default)]
struct Lin {
    constant: Rational,
    terms: BTreeMap<InvariantKey, Rational>,
}

impl Lin {
    fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }
}

pub(crate) struct Context<'a, K: Known> {
    pub known: &'a K,
    pub ginv: &'a [Vec<Rational>],
    pub level: Level,
}

impl<K: Known> Context<'_, K> {
    fn eval_key(&self, key: &InvariantKey) -> Result<Lin, WdvvError> {
        match reduce(key) {
            // unstable brackets never arise in a splitting with three special points
            Reduction::Unstable => Err(WdvvError::UnstableFactor(*key)),
            Reduction::Value(v, _) => Ok(Lin {
                constant: v,
                terms: BTreeMap::new(),
            }),
            Reduction::Pending(f, k) => {
                if k.level() == self.level {
                    Ok(Lin {
                        constant: Rational::zero(),
                        terms: [(k, f)].into_iter().collect(),
                    })
                } else {
                    let v = self.known.known(&k).ok_or(WdvvError::UnknownLowerInvariant(k))?;
                    Ok(Lin {
                        constant: f * v,
                        terms: BTreeMap::new(),
                    })
                }
            }
        }
    }

    /// `F(x,y|z,w) = Σ_{S1⊔S2=S} Σ_{d1+d2=d} Σ_ij ⟨x,y,S1,ξ_i⟩_{d1} g^{ij} ⟨ξ_j,z,w,S2⟩_{d2}`,
    /// accumulated into `row` with sign `sgn`.
    fn accumulate_f(&self, pair1: (usize, usize), pair2: (usize, usize), rest: &[u16; DIM], sgn: &Rational, row: &mut Row) -> Result<(), WdvvError> {
        let d = self.level.0;
        for (s1, weight) in sub_multisets(rest) {
            let s2: [u16; DIM] = std::array::from_fn(|k| rest[k] - s1[k]);
            let w = sgn * weight;
            for d1 in 0..=d {
                let base_l = InvariantKey::from_counts(d1, s1).with(pair1.0).with(pair1.1);
                let base_r = InvariantKey::from_counts(d - d1, s2).with(pair2.0).with(pair2.1);
                let left: Vec<Lin> = (0..DIM).map(|i| self.eval_key(&base_l.with(i))).collect::<Result<_, _>>()?;
                if left.iter().all(Lin::is_zero) {
                    continue;
                }
                let right: Vec<Lin> = (0..DIM).map(|j| self.eval_key(&base_r.with(j))).collect::<Result<_, _>>()?;
                for (i, l) in left.iter().enumerate().filter(|(_, l)| !l.is_zero()) {
                    for (j, r) in right.iter().enumerate().filter(|(_, r)| !r.is_zero()) {
                        let g = &self.ginv[i][j];
                        if g.is_zero() {
                            continue;
                        }
                        let c = &w * g;
                        match (l.is_constant(), r.is_constant()) {
                            (true, true) => row.constant += &c * &l.constant * &r.constant,
                            (true, false) => add_scaled(row, &(&c * &l.constant), r),
                            (false, true) => add_scaled(row, &(&c * &r.constant), l),
                            (false, false) => return Err(WdvvError::Nonlinear),
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn relation(&self, label: RelationLabel) -> Result<WdvvRelation, WdvvError> {
        let [a, b, c, e] = label.q;
        let mut row = Row::default();
        let one = Rational::from_integer(1.into());
        self.accumulate_f((a, b), (c, e), &label.rest, &one, &mut row)?;
        let other = if label.swap == 1 { ((a, c), (b, e)) } else { ((a, e), (b, c)) };
        self.accumulate_f(other.0, other.1, &label.rest, &-one, &mut row)?;
        Ok(WdvvRelation { label, row })
    }
}

fn add_scaled(row: &mut Row, c: &Rational, lin: &Lin) {
    row.constant += c * &lin.constant;
    for (k, v) in &lin.terms {
        row.add_term(*k, c * v);
    }
}

/// Every sub-multiset of `s`, with the number of ways to pick it from distinct points.
fn sub_multisets(s: &[u16; DIM]) -> Vec<([u16; DIM], Rational)> {
    let mut out = vec![([0u16; DIM], Rational::from_integer(1.into()))];
    for k in 0..DIM {
        if s[k] == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (s[k] as usize + 1));
        for (sub, w) in &out {
            for t in 0..=s[k] {
                let mut n = *sub;
                n[k] = t;
                next.push((n, w * Rational::from_integer(binomial(s[k] as u64, t as u64))));
            }
        }
        out = next;
    }
    out
}

pub fn excess(i: usize) -> i32 {
    ORB_DEG[i] as i32 - 1
}

/// Multisets of `size` elements from `indices` with the given excess sum and
/// an even number of twisted elements, in lexicographic order of sorted lists.
pub fn multisets(indices: &[usize], size: usize, excess_sum: i32, caps: &[(usize, u16)]) -> Vec<[u16; DIM]> {
    fn go(
        indices: &[usize],
        size: usize,
        left: i32,
        caps: &[(usize, u16)],
        cur: &mut [u16; DIM],
        out: &mut Vec<[u16; DIM]>,
    ) {
        let Some((&i, rest)) = indices.split_first() else {
            let tw: u16 = (0..DIM).filter(|&k| is_twisted(k)).map(|k| cur[k]).sum();
            if size == 0 && left == 0 && tw.is_multiple_of(2) {
                out.push(*cur);
            }
            return;
        };
        let cap = caps.iter().find(|(k, _)| *k == i).map_or(size as u16, |(_, c)| *c);
        // larger counts of the smallest index sort first
        for c in (0..=cap.min(size as u16)).rev() {
            let l = left - excess(i) * c as i32;
            if l < 0 && rest.iter().all(|&k| excess(k) >= 0) {
                continue;
            }
            cur[i] = c;
            go(rest, size - c as usize, l, caps, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(indices, size, excess_sum, caps, &mut [0; DIM], &mut out);
    out
}

/// Keys at a level that need the reconstruction, in key order.
pub fn level_unknowns(level: Level) -> Vec<InvariantKey> {
    let (d, n) = level;
    let indices: Vec<usize> = (0..DIM).filter(|&i| i != ONE && i != ALPHA).collect();
    let mut keys: Vec<InvariantKey> = multisets(&indices, n, 3 * d as i32 + 1, &[])
        .into_iter()
        .map(|c| InvariantKey::from_counts(d, c))
        .filter(|k| matches!(reduce(k), Reduction::Pending(_, p) if p == *k))
        .collect();
    keys.sort();
    keys
}

/// Labels of the WDVV identities used at a level: `n + 1` marked points with
/// excess `3d`, α allowed only among the four special points. Quadruples
/// containing α come first since the divisor axiom pushes their terms down.
pub fn level_relations(level: Level) -> Vec<RelationLabel> {
    let (d, n) = level;
    if n < 3 {
        return Vec::new();
    }
    let indices: Vec<usize> = (1..DIM).collect();
    let mut marked = multisets(&indices, n + 1, 3 * d as i32, &[(ALPHA, 4)]);
    marked.sort_by_key(|m| std::cmp::Reverse(m[ALPHA]));
    let mut out = Vec::new();
    for m in marked {
        let alphas = m[ALPHA] as usize;
        let mut others = m;
        others[ALPHA] = 0;
        let mut quads = Vec::new();
        choose(&others, 4 - alphas, &mut [0; DIM], 0, &mut quads);
        for pick in quads {
            let rest: [u16; DIM] = std::array::from_fn(|k| others[k] - pick[k]);
            let mut q = vec![ALPHA; alphas];
            q.extend(InvariantKey::from_counts(0, pick).insertions());
            q.sort();
            let q = [q[0], q[1], q[2], q[3]];
            for swap in [1u8, 2] {
                out.push(RelationLabel { d, q, rest, swap });
            }
        }
    }
    out
}

fn choose(pool: &[u16; DIM], k: usize, cur: &mut [u16; DIM], from: usize, out: &mut Vec<[u16; DIM]>) {
    if k == 0 {
        out.push(*cur);
        return;
    }
    for i in from..DIM {
        if cur[i] < pool[i] {
            cur[i] += 1;
            choose(pool, k - 1, cur, i, out);
            cur[i] -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sub_multiset_weights_count_subsets() {
        let mut s = [0u16; DIM];
        s[6] = 3;
        s[2] = 1;
        let subs = sub_multisets(&s);
        assert_eq!(subs.len(), 8);
        let total: Rational = subs.iter().map(|(_, w)| w.clone()).sum();
        assert_eq!(total, Rational::from_integer(16.into()));
    }

    #[test]
    fn level_one_three_unknowns() {
        let u = level_unknowns((1, 3));
        assert!(!u.is_empty());
        assert!(u.iter().all(|k| k.n() == 3 && k.d == 1 && crate::gw::dimension_admissible(k)));
        assert!(u.windows(2).all(|w| w[0] < w[1]));
    }
}
