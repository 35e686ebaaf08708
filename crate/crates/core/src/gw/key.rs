use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::chow::orb::{is_twisted, DIM, ORB_DEG};

/// Canonical name of one invariant `⟨ξ_{i1}, …, ξ_{in}⟩_d`: the degree and the
/// multiset of basis indices, stored as occupation counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InvariantKey {
    pub d: u32,
    pub counts: [u16; DIM],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed invariant key `{0}`")]
pub struct KeyParseError(pub String);

impl InvariantKey {
    pub fn new(d: u32, insertions: &[usize]) -> Self {
        let mut counts = [0u16; DIM];
        for &i in insertions {
            counts[i] += 1;
        }
        Self { d, counts }
    }

    pub fn from_counts(d: u32, counts: [u16; DIM]) -> Self {
        Self { d, counts }
    }

    /// Sorted insertion list.
    pub fn insertions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n());
        for (i, &c) in self.counts.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, c as usize));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn count(&self, i: usize) -> u16 {
        self.counts[i]
    }

    pub fn twisted_count(&self) -> usize {
        (0..DIM).filter(|&i| is_twisted(i)).map(|i| self.counts[i] as usize).sum()
    }

    pub fn degree_sum(&self) -> u32 {
        (0..DIM).map(|i| ORB_DEG[i] * self.counts[i] as u32).sum()
    }

    /// `(d, n)`, the scheduling level of the key.
    pub fn level(&self) -> (u32, usize) {
        (self.d, self.n())
    }

    pub fn with(&self, i: usize) -> Self {
        let mut k = *self;
        k.counts[i] += 1;
        k
    }

    pub fn without(&self, i: usize) -> Self {
        let mut k = *self;
        k.counts[i] = k.counts[i].checked_sub(1).expect("insertion present");
        k
    }
}

impl Ord for InvariantKey {
    /// Degree first, then the sorted insertion lists lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.d.cmp(&other.d).then_with(|| {
            let (a, b) = (self.insertions(), other.insertions());
            a.cmp(&b)
        })
    }
}

impl PartialOrd for InvariantKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for InvariantKey {
    /// `d|i1,i2,...` with sorted basis indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ins: Vec<String> = self.insertions().iter().map(ToString::to_string).collect();
        write!(f, "{}|{}", self.d, ins.join(","))
    }
}

impl FromStr for InvariantKey {
    type Err = KeyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KeyParseError(s.to_string());
        let (d, rest) = s.split_once('|').ok_or_else(bad)?;
        let d: u32 = d.trim().parse().map_err(|_| bad())?;
        let mut ins = Vec::new();
        if !rest.trim().is_empty() {
            for part in rest.split(',') {
                let i: usize = part.trim().parse().map_err(|_| bad())?;
                if i >= DIM {
                    return Err(bad());
                }
                ins.push(i);
            }
        }
        if ins.windows(2).any(|w| w[0] > w[1]) {
            return Err(bad());
        }
        Ok(Self::new(d, &ins))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_order() {
        let k = InvariantKey::new(1, &[8, 6, 8, 6]);
        assert_eq!(k.to_string(), "1|6,6,8,8");
        assert_eq!("1|6,6,8,8".parse::<InvariantKey>().unwrap(), k);
        assert!("1|8,6".parse::<InvariantKey>().is_err());
        assert!("x|1".parse::<InvariantKey>().is_err());
        let a = InvariantKey::new(1, &[2, 5]);
        let b = InvariantKey::new(1, &[2, 5, 6]);
        let c = InvariantKey::new(1, &[3]);
        assert!(a < b && b < c);
        assert!(c < InvariantKey::new(2, &[0]));
    }
}
