#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use symsq::arith::{int, rat, GaussRational, Rational};
use symsq::chow::orb::{ALPHA, ALPHA2, ALPHA3, ALPHA4, BETA, DIM, GAMMA0, GAMMA1, GAMMA2, ONE};
use symsq::chow::{hilb_graded_dims, orb_graded_dims, verify_ring_axioms, verify_ring_relations, HilbClass, OrbClass, OrbRing};
use symsq::crc::{hilb_monomial_image, l_alpha, l_gamma, orb_monomial, BridgeMap, MONOMIALS};

fn b(i: usize) -> OrbClass {
    OrbClass::basis(i)
}

fn c(n: i64, d: i64) -> GaussRational {
    GaussRational::real(rat(n, d))
}

fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        d *= &m[col][col];
        for r in col + 1..n {
            let f = &m[r][col] / &m[col][col];
            for k in col..n {
                let sub = &f * &m[col][k];
                m[r][k] -= sub;
            }
        }
    }
    d
}

// Products worked out by hand on P² × P² and along the diagonal.
#[test]
fn golden_products() {
    let a4 = |n, d| b(ALPHA4).scale(&c(n, d));
    let cases: Vec<(usize, usize, OrbClass)> = vec![
        (ALPHA, ALPHA, b(ALPHA2)),
        (ALPHA, BETA, b(ALPHA3).scale(&c(1, 3))),
        (ALPHA2, BETA, a4(1, 3)),
        (BETA, BETA, a4(1, 6)),
        (ALPHA2, ALPHA2, b(ALPHA4)),
        (ALPHA, GAMMA0, b(GAMMA1).scale(&c(2, 1))),
        (ALPHA, GAMMA1, b(GAMMA2).scale(&c(2, 1))),
        (ALPHA, GAMMA2, OrbClass::zero()),
        (ALPHA2, GAMMA0, b(GAMMA2).scale(&c(4, 1))),
        (BETA, GAMMA0, b(GAMMA2)),
        (GAMMA0, GAMMA0, &b(ALPHA2) - &b(BETA)),
        (GAMMA0, GAMMA1, b(ALPHA3).scale(&c(1, 3))),
        (GAMMA0, GAMMA2, a4(1, 6)),
        (GAMMA1, GAMMA1, a4(1, 6)),
        (GAMMA1, GAMMA2, OrbClass::zero()),
        (ALPHA4, GAMMA0, OrbClass::zero()),
    ];
    for (i, j, expect) in cases {
        assert_eq!(&b(i) * &b(j), expect, "{i}*{j}");
        assert_eq!(&b(j) * &b(i), expect, "{j}*{i}");
    }
    let g = b(GAMMA0);
    assert_eq!(g.pow(4), a4(1, 2));
    assert!(b(ALPHA).pow(5).is_zero());
    let r1 = &b(ALPHA3).scale(&c(2, 1)) - &(&b(ALPHA) * &g.pow(2)).scale(&c(3, 1));
    let r2 = &(&b(ALPHA2) * &g).scale(&c(3, 1)) - &g.pow(3).scale(&c(4, 1));
    assert!(r1.is_zero() && r2.is_zero());
}

#[test]
fn integrals_and_pairing() {
    assert_eq!(b(ALPHA4).integrate(), c(3, 1));
    assert_eq!(b(BETA).pairing(&b(BETA)), c(1, 2));
    assert_eq!(b(ALPHA2).pairing(&b(BETA)), c(1, 1));
    assert_eq!(b(GAMMA0).pairing(&b(GAMMA2)), c(1, 2));
    assert_eq!(b(GAMMA1).pairing(&b(GAMMA1)), c(1, 2));
    assert!(b(GAMMA2).integrate().is_zero());
    let ring = OrbRing::get();
    let m = ring.pairing_matrix().to_vec();
    for i in 0..DIM {
        for j in 0..DIM {
            assert_eq!(m[i][j], m[j][i]);
            assert_eq!(GaussRational::real(m[i][j].clone()), b(i).pairing(&b(j)));
        }
    }
    assert_eq!(det(m), rat(-81, 16));
    assert_eq!(ring.triple_integral(ONE, ALPHA2, ALPHA2), int(3));
}

#[test]
fn ring_checks_pass() {
    assert!(verify_ring_axioms().all_passed());
    assert!(verify_ring_relations().all_passed());
    assert_eq!(orb_graded_dims(), [1, 2, 3, 2, 1]);
    assert_eq!(hilb_graded_dims(), orb_graded_dims());
}

// Normal form by rewriting T1³ → 0 and T2³ → 3T1T2² + 3T1²T2.
fn hilb_normal_form(a: u32, b: u32) -> BTreeMap<(u32, u32), i64> {
    let mut todo = vec![((a, b), 1i64)];
    let mut out: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    while let Some(((x, y), k)) = todo.pop() {
        if x >= 3 {
            continue;
        }
        if y >= 3 {
            todo.push(((x + 1, y - 1), 3 * k));
            todo.push(((x + 2, y - 2), 3 * k));
            continue;
        }
        *out.entry((x, y)).or_default() += k;
    }
    out.retain(|_, v| *v != 0);
    out
}

#[test]
fn hilbert_normal_forms() {
    for a in 0..7 {
        for bb in 0..7 {
            let mut expect = HilbClass::zero();
            for ((x, y), k) in hilb_normal_form(a, bb) {
                expect = &expect + &HilbClass::monomial(x, y).scale(&c(k, 1));
            }
            assert_eq!(HilbClass::monomial(a, bb), expect, "T1^{a} T2^{bb}");
        }
    }
    assert_eq!(HilbClass::t2().pow(4).integrate(), c(3, 1));
    assert_eq!(HilbClass::monomial(2, 2).integrate(), c(1, 4));
}

#[test]
fn hilbert_pairing_determinant() {
    let m: Vec<Vec<Rational>> = (0..9)
        .map(|i| {
            (0..9)
                .map(|j| HilbClass::basis(i).pairing(&HilbClass::basis(j)).as_real().cloned().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(det(m), rat(1, 262_144));
}

#[test]
fn bridge_map() {
    let l = BridgeMap::get();
    assert!(l.is_invertible() && l.is_degree_preserving());
    // L matches products only in the deformed ring; classically 2α³ = 3αγ² fails on the image.
    assert!(!l.is_ring_map());
    let lhs = l_alpha().pow(3).scale(&c(2, 1));
    let rhs = (&l_alpha() * &l_gamma().pow(2)).scale(&c(3, 1));
    assert_ne!(lhs, rhs);
    assert_eq!(l.apply(&b(ALPHA)), l_alpha());
    assert_eq!(l.apply(&b(GAMMA0)), l_gamma());
    assert_eq!(l_gamma(), (&HilbClass::t2() - &HilbClass::t1()).scale(&GaussRational::i()));
    for &(a, e) in MONOMIALS.iter() {
        assert_eq!(l.apply(&orb_monomial(a, e)), hilb_monomial_image(a, e));
        assert_eq!(l.apply(&orb_monomial(a, e)), &l_alpha().pow(a) * &l_gamma().pow(e));
    }
    for i in 0..DIM {
        assert_eq!(l.apply(&b(i)).integrate(), b(i).integrate());
    }
}
