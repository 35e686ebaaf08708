use num_traits::Zero;
use symsq::arith::{polylog_negative, rat, GaussRational, LaurentPoly};
use symsq::chow::{CurveClass, HilbClass, OrbClass};
use symsq::crc::{
    crc_degree_zero, crc_two_point, crc_verify, degree_zero_closed_form, graber_value, orb_monomial, quantum_relation_check,
    DegreeZeroKind, QInvariant,
};
use symsq::gw::{base_value, hodge_key, InvariantQuery};
use symsq::wdvv::Engine;

fn gr(s: &str) -> GaussRational {
    GaussRational::parse(s).unwrap()
}

fn laurent(terms: [&str; 3]) -> LaurentPoly {
    LaurentPoly::from_terms((-1..=1).zip(terms.map(gr)))
}

fn series(q: &QInvariant) -> &LaurentPoly {
    match q {
        QInvariant::Laurent { series, .. } => series,
        QInvariant::Rational { .. } => panic!("expected a Laurent polynomial"),
    }
}

#[test]
fn graber_examples() {
    let t1 = HilbClass::t1();
    let t2 = HilbClass::t2();
    let diff = &t2 - &t1;
    assert_eq!(graber_value(&[t2.pow(2), t2.pow(4)], CurveClass::new(1, 1)).unwrap(), gr("12"));
    assert_eq!(graber_value(&[t2.pow(3), &t2.pow(2) * &diff], CurveClass::new(2, 1)).unwrap(), gr("-1/2"));
    assert_eq!(graber_value(&[diff.pow(2)], CurveClass::new(3, 0)).unwrap(), gr("-1"));
    assert!(graber_value(&[t2.pow(2), t2.pow(4)], CurveClass::new(7, 1)).unwrap().is_zero());
    assert!(graber_value(&[t2.pow(2)], CurveClass::new(1, 1)).is_err());
}

// Two-point series, their values at q = −1 and the orbifold side.
#[test]
fn two_point_series() {
    let m = orb_monomial;
    let cases = [
        (m(4, 0), m(2, 0), ["3", "12", "3"], "6"),
        (m(4, 0), m(0, 2), ["-3", "9", "6"], "6"),
        (m(2, 1), m(2, 1), ["-4", "8", "-4"], "16"),
        (m(4, 0), m(1, 1), ["3i", "0", "-3i"], "0"),
    ];
    let mut e = Engine::new();
    for (p1, p2, coeffs, at_minus_one) in cases {
        let s = crc_two_point(&p1, &p2).unwrap();
        assert_eq!(series(&s), &laurent(coeffs), "{p1} {p2}");
        assert_eq!(s.at_minus_one().unwrap(), gr(at_minus_one));
        assert_eq!(e.compute_query(&InvariantQuery::new(1, vec![p1, p2])).unwrap(), gr(at_minus_one));
    }
    for (p1, p2) in [(m(3, 0), m(3, 0)), (m(3, 0), m(2, 1))] {
        let s = crc_two_point(&p1, &p2).unwrap();
        assert!(series(&s).support().iter().all(|a| (-1..=1).contains(a)));
        assert_eq!(s.at_minus_one().unwrap(), e.compute_query(&InvariantQuery::new(1, vec![p1, p2])).unwrap());
    }
}

#[test]
fn degree_zero_continuation() {
    let g1 = crc_degree_zero(1, DegreeZeroKind::AlphaGamma).unwrap();
    let QInvariant::Rational { series, .. } = &g1 else { panic!() };
    assert_eq!(series, &polylog_negative(1).scale(&gr("6")));
    assert_eq!(g1.at_minus_one().unwrap(), gr("-3/2"));
    for g in 1..=8 {
        let a = crc_degree_zero(g, DegreeZeroKind::AlphaGamma).unwrap();
        let QInvariant::Rational { series, .. } = &a else { panic!() };
        assert_eq!(series, &degree_zero_closed_form(g, DegreeZeroKind::AlphaGamma));
        let orb = base_value(&hodge_key(g)).unwrap() * rat(2, 1);
        assert_eq!(a.at_minus_one().unwrap(), GaussRational::real(orb), "g={g}");
        let b = crc_degree_zero(g, DegreeZeroKind::GammaSquared).unwrap();
        assert!(b.at_minus_one().unwrap().is_zero(), "g={g}");
    }
    assert_eq!(crc_degree_zero(3, DegreeZeroKind::AlphaGamma).unwrap().at_minus_one().unwrap(), gr("-3/2"));
}

#[test]
fn quantum_relations_and_verify() {
    let r = quantum_relation_check();
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    let mut e = Engine::new();
    let v = crc_verify(4, &mut e).unwrap();
    assert!(v.all_passed(), "{:?}", v.failures().collect::<Vec<_>>());
    // total degree 4 < 6: vanishes for dimension reasons
    let low = crc_two_point(&OrbClass::one(), &orb_monomial(4, 0)).unwrap();
    assert!(series(&low).is_zero());
}
