use num_traits::Zero;

use crate::arith::{int, rat, GaussRational, Rational};
use crate::chow::{CurveClass, HilbClass};

use super::CrcError;

/// The six tabulated two-point families, classes `aB1 + B2` for `a = 0, 1, 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GraberRow {
    /// `⟨T2², T2⁴⟩`
    T2sqT2quart,
    /// `⟨T2³, T2³⟩`
    T2cubeT2cube,
    /// `⟨(T2−T1)², T2⁴⟩`
    DiffSqT2quart,
    /// `⟨T2²(T2−T1), T2²(T2−T1)⟩`
    MixedMixed,
    /// `⟨T2⁴, T2(T2−T1)⟩`
    T2quartMixed,
    /// `⟨T2³, T2²(T2−T1)⟩`
    T2cubeMixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraberTable {
    pub rows: Vec<(GraberRow, [Rational; 3])>,
}

impl GraberTable {
    pub fn get() -> &'static GraberTable {
        static TABLE: std::sync::OnceLock<GraberTable> = std::sync::OnceLock::new();
        TABLE.get_or_init(|| {
            use GraberRow::*;
            let r = |a: i64, b: i64, c: i64| [int(a), int(b), int(c)];
            GraberTable {
                rows: vec![
                    (T2sqT2quart, r(3, 12, 3)),
                    (T2cubeT2cube, r(9, 27, 9)),
                    (DiffSqT2quart, r(3, -9, -6)),
                    (MixedMixed, r(4, -8, 4)),
                    (T2quartMixed, r(3, 0, -3)),
                    (T2cubeMixed, [rat(1, 2), int(0), rat(-1, 2)]),
                ],
            }
        })
    }

    /// Entry for class `aB1 + B2`; zero outside `0 ≤ a ≤ 2`.
    pub fn entry(&self, row: GraberRow, a: i64) -> Rational {
        if !(0..=2).contains(&a) {
            return Rational::zero();
        }
        self.rows
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, v)| v[a as usize].clone())
            .expect("every row tabulated")
    }
}

/// One-point invariant of `T2(T2−T1)` in class `aB1`.
pub fn one_point_mixed(a: i64) -> Rational {
    rat(-6, a * a)
}

/// One-point invariant of `(T2−T1)²` in class `aB1`.
pub fn one_point_diff_sq(a: i64) -> Rational {
    rat(-9, a * a)
}

// slots in the Hilbert basis
const T1SQ: usize = 3;
const T1T2: usize = 4;
const T2SQ: usize = 5;
const T1SQ_T2: usize = 6;
const T1_T2SQ: usize = 7;
const TOP: usize = 8;

/// Coordinates `(u, t, s)` with `x = u·T2² + t·(T2−T1)² + s·T2(T2−T1)`.
fn split_deg2(x: &HilbClass) -> [GaussRational; 3] {
    let t = x.coeffs[T1SQ].clone();
    let s = -(&x.coeffs[T1T2] + &(&t + &t));
    let u = &(&x.coeffs[T2SQ] - &t) - &s;
    [u, t, s]
}

/// Coordinates `(p, r)` with `x = p·T2³ + r·T2²(T2−T1)`, where `T2³ = 3T1²T2 + 3T1T2²`
/// and `T2²(T2−T1) = 3T1²T2 + 2T1T2²`.
fn split_deg3(x: &HilbClass) -> [GaussRational; 2] {
    let r = &x.coeffs[T1SQ_T2] - &x.coeffs[T1_T2SQ];
    let p = &x.coeffs[T1SQ_T2].scale(&rat(1, 3)) - &r;
    [p, r]
}

fn homogeneous(x: &HilbClass) -> Result<Option<u32>, CrcError> {
    let mut deg = None;
    for (k, _) in x.support() {
        let d = crate::chow::hilb::basis_degree(k);
        if deg.is_some_and(|e| e != d) {
            return Err(CrcError::OutOfTable(format!("inhomogeneous insertion {x}")));
        }
        deg = Some(d);
    }
    Ok(deg)
}

/// Two-point invariant in class `aB1 + B2`: the table extended bilinearly.
/// The virtual dimension forces total insertion degree 6.
fn two_point(x: &HilbClass, y: &HilbClass, a: i64) -> Result<GaussRational, CrcError> {
    use GraberRow::*;
    let (Some(dx), Some(dy)) = (homogeneous(x)?, homogeneous(y)?) else {
        return Ok(GaussRational::zero());
    };
    if dx + dy != 6 {
        return Ok(GaussRational::zero());
    }
    let t = GraberTable::get();
    let e = |row| GaussRational::from(t.entry(row, a));
    let (low, top) = match (dx, dy) {
        (2, 4) => (x, y),
        (4, 2) => (y, x),
        (3, 3) => {
            let [p1, r1] = split_deg3(x);
            let [p2, r2] = split_deg3(y);
            let cube = &(&p1 * &p2) * &e(T2cubeT2cube);
            let cross = &(&(&p1 * &r2) + &(&r1 * &p2)) * &e(T2cubeMixed);
            let mixed = &(&r1 * &r2) * &e(MixedMixed);
            return Ok(&(&cube + &cross) + &mixed);
        }
        _ => return Ok(GaussRational::zero()),
    };
    // c·T1²T2² = (c/12)·T2⁴
    let w = top.coeffs[TOP].scale(&rat(1, 12));
    let [u, tt, s] = split_deg2(low);
    let sum = &(&(&u * &e(T2sqT2quart)) + &(&tt * &e(DiffSqT2quart))) + &(&s * &e(T2quartMixed));
    Ok(&w * &sum)
}

/// One-point invariant in class `aB1`, `a ≥ 1`, for classes in the span of
/// `T2(T2−T1)` and `(T2−T1)²`.
fn one_point(x: &HilbClass, a: i64) -> Result<GaussRational, CrcError> {
    match homogeneous(x)? {
        None => return Ok(GaussRational::zero()),
        Some(2) => {}
        Some(_) => return Ok(GaussRational::zero()),
    }
    let [u, t, s] = split_deg2(x);
    if !u.is_zero() {
        return Err(CrcError::OutOfTable(format!("one-point {x} in class {a}B1")));
    }
    Ok(&(&s * &one_point_mixed(a).into()) + &(&t * &one_point_diff_sq(a).into()))
}

/// Tabulated Hilbert-side invariants: two-point in `aB1 + B2`, one-point in `aB1`.
pub fn graber_value(insertions: &[HilbClass], class: CurveClass) -> Result<GaussRational, CrcError> {
    match (insertions, class.b) {
        ([x, y], 1) => two_point(x, y, class.a),
        ([x], 0) if class.a >= 1 => one_point(x, class.a),
        _ => Err(CrcError::OutOfTable(format!("{} insertions in class {class}", insertions.len()))),
    }
}
