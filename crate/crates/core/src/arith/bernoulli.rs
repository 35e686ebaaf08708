//! Bernoulli numbers, zeta at the non-positive integers, and the
//! negative-order polylogarithms as rational functions of `q`.
//!
//! Convention: `z / (e^z - 1) = Σ B_n z^n / n!`, hence `B_1 = -1/2`.
//! With the other sign convention ζ(0) would come out as +1/2.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{binomial, sign, Rational};
use super::gauss::GaussRational;
use super::poly::Poly;
use super::ratfunc::RatFunc;

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// `B_n`, memoized. Uses `Σ_{k=0}^{n} C(n+1, k) B_k = 0` for `n ≥ 1`.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = BERNOULLI.lock().expect("bernoulli table poisoned");
    if table.is_empty() {
        table.push(Rational::one());
    }
    while table.len() <= n {
        let m = table.len();
        let acc = table
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (k, b)| {
                acc + Rational::from_integer(binomial(m as u64 + 1, k as u64)) * b
            });
        table.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    table[n].clone()
}

/// ζ(−m) = (−1)^m B_{m+1} / (m+1).
pub fn zeta_nonpositive(m: usize) -> Rational {
    sign(m as i64) * bernoulli(m + 1) / Rational::from_integer(BigInt::from(m + 1))
}

/// Eulerian numbers `A(m, k)`, `k = 0..m`, with `A(0, 0) = 1`.
pub fn eulerian_row(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for n in 1..=m {
        let mut next = vec![BigInt::zero(); n];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += BigInt::from(k + 1) * &row[k];
            }
            if k >= 1 {
                *slot += BigInt::from(n - k) * &row[k - 1];
            }
        }
        row = next;
    }
    row
}

/// `Li_{−m}(q) = Σ_{a≥1} a^m q^a = q·A_m(q) / (1−q)^{m+1}` with `A_m` the
/// Eulerian polynomial. `A_m(1) = m!`, so the fraction is already reduced.
pub fn polylog_negative(m: usize) -> RatFunc {
    let mut numer = vec![GaussRational::zero()];
    numer.extend(eulerian_row(m).into_iter().map(|a| GaussRational::real(Rational::from_integer(a))));
    let denom = Poly::from_ints(&[1, -1]).pow(m as u32 + 1);
    RatFunc::from_coprime(Poly::new(numer), denom).expect("nonzero denominator")
}

/// The same series as `polylog_negative`, by applying `q·d/dq` to `q/(1−q)`
/// `m` times. Slower; kept as an independent route.
pub fn polylog_negative_by_theta(m: usize) -> RatFunc {
    (0..m).fold(RatFunc::geometric(), |f, _| f.theta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(zeta_nonpositive(0), rat(-1, 2));
        assert_eq!(zeta_nonpositive(1), rat(-1, 12));
        assert_eq!(zeta_nonpositive(2), rat(0, 1));
    }

    #[test]
    fn polylog_closed_forms() {
        assert_eq!(polylog_negative(0), RatFunc::geometric());
        // q / (1 - q)^2
        let expected = RatFunc::new(Poly::var(), Poly::from_ints(&[1, -2, 1])).unwrap();
        assert_eq!(polylog_negative(1), expected);
        assert_eq!(
            polylog_negative(1).eval_at(&GaussRational::from_int(-1)).unwrap(),
            GaussRational::real(rat(-1, 4))
        );
        // denominator is (q - 1)^{m+1} once made monic
        assert_eq!(eulerian_row(4), [1, 11, 11, 1].map(BigInt::from));
        for m in 0..6 {
            assert_eq!(polylog_negative(m), polylog_negative_by_theta(m));
            let d = polylog_negative(m);
            assert_eq!(d.denom(), &Poly::from_ints(&[-1, 1]).pow(m as u32 + 1));
        }
    }
}
