use num_bigint::BigInt;
use num_traits::Zero;
use symsq::arith::{int, rat, GaussRational, Rational};
use symsq::chow::orb::{ALPHA, ALPHA2, ALPHA3, ALPHA4, BETA, GAMMA0, GAMMA1, GAMMA2, ONE};
use symsq::chow::OrbClass;
use symsq::crc::{crc_two_point, orb_monomial, QInvariant};
use symsq::gw::{base_value, convert_notation, hodge_key, reduce, InvariantKey, InvariantQuery, Reason, Reduction};
use symsq::wdvv::{dual_basis, initial_data_fingerprint, CacheError, Engine, InvariantStore};

fn key(d: u32, ins: &[usize]) -> InvariantKey {
    InvariantKey::new(d, ins)
}

fn twisted_pair_key(d: u32, a: usize, b: usize, gammas: usize) -> InvariantKey {
    let mut ins = vec![a, b];
    ins.extend(std::iter::repeat_n(GAMMA0, gammas));
    key(d, &ins)
}

#[test]
fn axioms_and_closed_forms() {
    assert_eq!(reduce(&key(1, &[ALPHA4, ALPHA2])), Reduction::Value(int(6), Reason::TwoPointTable));
    assert_eq!(reduce(&key(5, &[ONE, ALPHA, ALPHA2])), Reduction::Value(int(0), Reason::UnitAxiom));
    assert_eq!(reduce(&key(0, &[ALPHA])), Reduction::Unstable);
    assert_eq!(base_value(&key(1, &[ALPHA4, GAMMA1])), Some(int(0)));
    assert_eq!(base_value(&key(1, &[ALPHA4, ALPHA2, ALPHA])), Some(int(6)));
    assert_eq!(base_value(&key(2, &[ALPHA, ALPHA, ALPHA4, ALPHA4, ALPHA4])), Some(int(0)));
    assert!(matches!(reduce(&key(2, &[ALPHA, ALPHA4, ALPHA4, ALPHA2])), Reduction::Pending(f, k) if f == int(2) && k == key(2, &[ALPHA4, ALPHA4, ALPHA2])));
    assert_eq!(base_value(&key(0, &[ALPHA2, GAMMA0, GAMMA0, GAMMA0, GAMMA0])), Some(int(0)));
    assert_eq!(base_value(&hodge_key(1)), Some(rat(-3, 4)));
    assert_eq!(base_value(&hodge_key(2)), Some(rat(-3, 8)));
    assert_eq!(base_value(&key(0, &[ALPHA2, ALPHA2, ONE])), Some(int(3)));
}

#[test]
fn genus_notation() {
    let g2 = OrbClass::basis(GAMMA2);
    let q = convert_notation(1, 1, &[g2.clone(), g2.clone()]).unwrap().unwrap();
    assert_eq!(q.insertions.len(), 4);
    assert_eq!(q.insertions[2], OrbClass::basis(GAMMA0));
    assert_eq!(convert_notation(1, 0, &[g2.clone(), g2.clone()]).unwrap().unwrap().insertions.len(), 2);
    assert!(convert_notation(1, 0, &[g2.clone(), g2.clone(), g2.clone(), g2.clone()]).unwrap().is_none());
    let mixed = &OrbClass::basis(ALPHA) + &OrbClass::basis(GAMMA1);
    assert!(convert_notation(1, 0, &[mixed]).is_err());
}

#[test]
fn dual_basis_values() {
    let dual = dual_basis();
    assert_eq!(dual.duals[GAMMA0], OrbClass::basis(GAMMA2).scale(&GaussRational::from_int(2)));
    let expect_a2 = &OrbClass::basis(ALPHA2) - &OrbClass::basis(BETA).scale(&GaussRational::from_int(2));
    assert_eq!(dual.duals[ALPHA2], expect_a2);
    for i in 0..9 {
        for j in 0..9 {
            let p = dual.duals[i].pairing(&OrbClass::basis(j));
            assert_eq!(p, GaussRational::from_int(i64::from(i == j)));
        }
    }
}

// Both insertions twisted: ⟨γ2, γ2, γ0^{2g}⟩_1 = (−1)^g/2 from the comb-curve count.
#[test]
fn degree_one_twisted_pair() {
    let mut e = Engine::new();
    for g in 1..=3usize {
        let sign = if g % 2 == 0 { 1 } else { -1 };
        assert_eq!(e.compute_invariant(&twisted_pair_key(1, GAMMA2, GAMMA2, 2 * g)).unwrap(), rat(sign, 2), "g={g}");
    }
}

// Prediction from the Hilbert-scheme side: each L(γ) = i(T2 − T1) meets the
// class (a+1)B1 + B2 in −i·a, so 2g copies multiply the q^a coefficient of the
// two-point series by (−1)^g a^{2g}; then set q = −1.
fn hilbert_side(phi1: &OrbClass, phi2: &OrbClass, g: u32) -> GaussRational {
    let QInvariant::Laurent { series, .. } = crc_two_point(phi1, phi2).unwrap() else {
        panic!("two-point series is a Laurent polynomial")
    };
    let mut total = GaussRational::zero();
    for (a, c) in series.terms() {
        let w = Rational::from_integer(BigInt::from(a).pow(2 * g)) * if (g as i64 + a) % 2 == 0 { int(1) } else { int(-1) };
        total += &c.scale(&w);
    }
    total
}

#[test]
fn degree_one_genus_values_match_hilbert_side() {
    let mut e = Engine::new();
    let m = orb_monomial;
    let shapes = [(m(4, 0), m(2, 0)), (m(4, 0), m(0, 2)), (m(3, 0), m(3, 0)), (m(2, 1), m(2, 1)), (m(4, 0), m(1, 1)), (m(3, 0), m(2, 1))];
    for (p1, p2) in &shapes {
        for g in 1..=2u32 {
            let mut ins = vec![p1.clone(), p2.clone()];
            ins.extend(std::iter::repeat_n(OrbClass::basis(GAMMA0), 2 * g as usize));
            let orb = e.compute_query(&InvariantQuery::new(1, ins)).unwrap();
            assert_eq!(orb, hilbert_side(p1, p2, g), "{p1} {p2} g={g}");
        }
    }
    // ⟨α⁴, β⟩_{(1,0)} = 0 yet ⟨α⁴, β, γ, γ⟩_1 = 3: no (−1)^g rule for untwisted pairs.
    assert_eq!(e.compute_invariant(&twisted_pair_key(1, ALPHA4, BETA, 2)).unwrap(), int(3));
    assert_eq!(e.compute_invariant(&twisted_pair_key(1, ALPHA4, ALPHA2, 2)).unwrap(), int(6));
}

#[test]
fn residuals_vanish_and_levels_are_full_rank() {
    let mut e = Engine::new();
    for n in 3..=5 {
        assert!(e.residuals((1, n)).unwrap().is_empty(), "level (1,{n})");
    }
    for (level, s) in e.stats() {
        assert_eq!(s.rank, s.unknowns, "level {level:?}");
    }
}

#[test]
fn queries_are_multilinear_and_symmetric() {
    let mut e = Engine::new();
    let b = OrbClass::basis;
    let x = &b(ALPHA4).scale(&GaussRational::from_int(3)) + &b(BETA);
    let y = &b(GAMMA2) - &b(GAMMA1);
    let parts = [(b(ALPHA4), int(3)), (b(BETA), int(1))];
    let rest = vec![b(ALPHA3), y.clone(), y.clone()];
    let mut whole = vec![x];
    whole.extend(rest.clone());
    let lhs = e.compute_query(&InvariantQuery::new(1, whole.clone())).unwrap();
    let mut rhs = GaussRational::zero();
    for (p, c) in parts {
        let mut ins = vec![p];
        ins.extend(rest.clone());
        rhs += &e.compute_query(&InvariantQuery::new(1, ins)).unwrap().scale(&c);
    }
    assert_eq!(lhs, rhs);
    whole.reverse();
    assert_eq!(e.compute_query(&InvariantQuery::new(1, whole)).unwrap(), lhs);
}

#[test]
fn engines_agree_and_store_round_trips() {
    let mut a = Engine::new();
    let mut b = Engine::new();
    let k = twisted_pair_key(1, GAMMA2, GAMMA2, 2);
    a.compute_invariant(&k).unwrap();
    b.compute_invariant(&k).unwrap();
    let fp = initial_data_fingerprint();
    let text = a.store().serialize(fp);
    assert_eq!(text, b.store().serialize(fp));
    assert_eq!(&InvariantStore::deserialize(&text, fp).unwrap(), a.store());

    let seeded = Engine::with_store(InvariantStore::deserialize(&text, fp).unwrap());
    assert_eq!(seeded.store().get(&k), Some(&rat(-1, 2)));
}

#[test]
fn store_rejects_stale_and_corrupt() {
    let mut s = InvariantStore::new();
    s.insert(key(1, &[GAMMA2, GAMMA2]), int(1));
    s.mark_solved((1, 2));
    let fp = initial_data_fingerprint();
    let text = s.serialize(fp);
    assert!(matches!(InvariantStore::deserialize(&text, "other"), Err(CacheError::Stale { .. })));
    let tampered = text.replace("= 1\n", "= 2\n");
    assert_ne!(tampered, text);
    assert!(matches!(InvariantStore::deserialize(&tampered, fp), Err(CacheError::Corrupt(_))));
    assert!(matches!(InvariantStore::deserialize("garbage", fp), Err(CacheError::Corrupt(_))));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inv.cache");
    assert!(InvariantStore::load(&path, fp).unwrap().is_empty());
    s.save(&path, fp).unwrap();
    let back = InvariantStore::load(&path, fp).unwrap();
    assert_eq!(back, s);
    assert!(back.is_solved((1, 2)));
}

#[test]
fn store_merge_and_conflicts() {
    let k = key(1, &[GAMMA2, GAMMA2]);
    let mut a = InvariantStore::new();
    a.insert(k, int(1));
    let mut b = InvariantStore::new();
    b.insert(k, int(2));
    b.insert(key(1, &[ALPHA3, ALPHA3]), int(9));
    assert_eq!(a.conflicts(&b), vec![(k, int(1), int(2))]);
    let mut c = InvariantStore::new();
    c.insert(key(1, &[ALPHA3, ALPHA3]), Rational::from_integer(9.into()));
    c.mark_solved((1, 2));
    a.merge(&c);
    assert_eq!(a.len(), 2);
    assert!(a.is_solved((1, 2)));
}
