//! The orbifold Chow ring of [Sym²P²] and the Chow ring of Hilb²P².

pub mod hilb;
pub mod orb;

pub use hilb::{CurveClass, HilbClass};
pub use orb::{is_twisted, OrbClass, OrbRing, ORB_DEG};

use crate::arith::{rat, GaussRational};
use crate::report::CheckReport;

/// Dimensions of the graded pieces in degrees 0..=4.
pub fn orb_graded_dims() -> [usize; 5] {
    let mut dims = [0; 5];
    for d in ORB_DEG {
        dims[d as usize] += 1;
    }
    dims
}

pub fn hilb_graded_dims() -> [usize; 5] {
    let mut dims = [0; 5];
    for k in 0..hilb::DIM {
        dims[hilb::basis_degree(k) as usize] += 1;
    }
    dims
}

/// Commutativity, associativity and `(xy, z) = (x, yz)` over all basis triples.
pub fn verify_ring_axioms() -> CheckReport {
    let b: Vec<OrbClass> = (0..orb::DIM).map(OrbClass::basis).collect();
    let (mut comm, mut assoc, mut frob) = (0usize, 0usize, 0usize);
    for x in &b {
        for y in &b {
            let xy = x * y;
            if xy != y * x {
                comm += 1;
            }
            for z in &b {
                let yz = y * z;
                if &xy * z != x * &yz {
                    assoc += 1;
                }
                if xy.pairing(z) != x.pairing(&yz) {
                    frob += 1;
                }
            }
        }
    }
    let mut report = CheckReport::new();
    report.expect_eq("non-commuting basis pairs", &0, &comm);
    report.expect_eq("non-associative basis triples", &0, &assoc);
    report.expect_eq("triples with (xy, z) != (x, yz)", &0, &frob);
    report.expect_eq("product unit", &b[0], &(&b[0] * &b[0]));
    report
}

/// `R1 = 2α³ − 3αγ²`, `R2 = 3α²γ − 4γ³`, and the top-degree identities.
pub fn verify_ring_relations() -> CheckReport {
    let a = OrbClass::alpha();
    let g = OrbClass::gamma();
    let n = |k: i64| GaussRational::from_int(k);
    let zero = OrbClass::zero();
    let mut report = CheckReport::new();

    let r1 = &a.pow(3).scale(&n(2)) - &(&a * &g.pow(2)).scale(&n(3));
    report.expect_eq("R1 = 2a^3 - 3a*g^2", &zero, &r1);
    let r2 = &(&a.pow(2) * &g).scale(&n(3)) - &g.pow(3).scale(&n(4));
    report.expect_eq("R2 = 3a^2*g - 4g^3", &zero, &r2);
    report.expect_eq("g^4 = a^4/2", &a.pow(4).scale(&rat(1, 2).into()), &g.pow(4));
    report.expect_eq("a^5 = 0", &zero, &a.pow(5));
    report.expect_eq("a^4*g = 0", &zero, &(&a.pow(4) * &g));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold() {
        let r = verify_ring_axioms();
        assert!(r.all_passed(), "{r}");
        let r = verify_ring_relations();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn graded_dimensions_agree() {
        assert_eq!(orb_graded_dims(), [1, 2, 3, 2, 1]);
        assert_eq!(hilb_graded_dims(), orb_graded_dims());
    }
}
