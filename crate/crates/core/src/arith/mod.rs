//! Exact arithmetic: rationals, Gaussian rationals, polynomials and rational
//! functions in `q`, Bernoulli numbers and small dense linear algebra.

mod bernoulli;
mod bipoly;
mod gauss;
mod laurent;
mod poly;
mod ratfunc;
mod rational;

pub use bernoulli::{bernoulli, eulerian_row, polylog_negative, polylog_negative_by_theta, zeta_nonpositive};
pub use bipoly::BiPoly;
pub use gauss::GaussRational;
pub use laurent::LaurentPoly;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{
    binomial, factorial, format_rational, int, is_integral, is_nonnegative, parse_rational, pow,
    rat, sign, Rational,
};

use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cannot parse number `{0}`")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("singular matrix")]
    Singular,
}

/// The operations dense elimination needs.
pub trait Field: Clone + PartialEq + Zero + One {
    fn field_inv(&self) -> Option<Self>;
    fn field_mul(&self, rhs: &Self) -> Self;
    fn field_add(&self, rhs: &Self) -> Self;
    fn field_sub(&self, rhs: &Self) -> Self;
}

impl Field for Rational {
    fn field_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn field_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn field_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn field_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

impl Field for GaussRational {
    fn field_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn field_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn field_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn field_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

/// Solves `a · X = b` column by column with Gauss-Jordan elimination.
/// `a` is square; `b` has the same number of rows.
pub fn solve_dense<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Result<Vec<Vec<F>>, ArithError> {
    let n = a.len();
    let width = b.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).cloned().collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(ArithError::Singular)?;
        m.swap(col, pivot);
        let inv = m[col][col].field_inv().ok_or(ArithError::Singular)?;
        for x in m[col].iter_mut() {
            *x = x.field_mul(&inv);
        }
        let prow = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x = x.field_sub(&f.field_mul(p));
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..n + width].to_vec()).collect())
}

pub fn identity<F: Field>(n: usize) -> Vec<Vec<F>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

pub fn invert_dense<F: Field>(a: &[Vec<F>]) -> Result<Vec<Vec<F>>, ArithError> {
    solve_dense(a, &identity(a.len()))
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(F::zero(), |acc, k| acc.field_add(&row[k].field_mul(&b[k][j])))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_pairing_block() {
        let g = vec![vec![int(3), int(1)], vec![int(1), rat(1, 2)]];
        let inv = invert_dense(&g).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-2)], vec![int(-2), int(6)]]);
        assert_eq!(mat_mul(&g, &inv), identity::<Rational>(2));
    }

    #[test]
    fn singular_is_reported() {
        let g = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(invert_dense(&g), Err(ArithError::Singular));
    }
}
