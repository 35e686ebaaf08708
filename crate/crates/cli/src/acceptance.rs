//! The twelve release criteria. Each one returns its individual checks so the
//! runner can print a single verdict line and, on request, the details.
//!
//! Expected values here are written out independently of the library code
//! that produces them (pairing table entries, published q-series, geometric
//! counts); the library is only asked for the computed side.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use symsq::arith::{bernoulli, int, pow, rat, sign, GaussRational, LaurentPoly, Rational};
use symsq::chow::hilb::{self, HilbClass};
use symsq::chow::orb::{self, OrbClass, OrbRing};
use symsq::chow::{hilb_graded_dims, orb_graded_dims, verify_ring_axioms, verify_ring_relations};
use symsq::crc::{
    bridge_check, crc_degree_zero, crc_two_point, degree_zero_closed_form, monomial_name, orb_monomial,
    quantum_relation_check, DegreeZeroKind, QInvariant, TWO_POINT_SHAPES,
};
use symsq::gw::{base_value, hodge_key, reduce, InvariantKey, InvariantQuery, Reduction};
use symsq::hyperelliptic::{
    conversion_matrix, conversion_matrix_by_enumeration, count_hyperelliptic, e_from_j, incidence_class,
    j_from_e, partition_type_count, visit_set_partitions, OddPartitionType,
};
use symsq::report::CheckReport;
use symsq::wdvv::{initial_data_fingerprint, Engine};

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "ring axioms and relations"),
    (2, "pairing table"),
    (3, "Hilbert scheme ring"),
    (4, "degree-zero closed form vs continuation"),
    (5, "degree-one two-point initial data"),
    (6, "WDVV reconstruction"),
    (7, "relation residuals"),
    (8, "two-point q-series"),
    (9, "quantum relations and L"),
    (10, "partition combinatorics"),
    (11, "end-to-end count"),
    (12, "determinism"),
];

/// Criteria known to fail against the published value.
///
/// 2: the published pairing has (β, β) = 3. In the ring, β² = α⁴/6 and
/// ∫α⁴ = 3, so ∫β·β = 1/2; all other published entries are reproduced.
pub const EXPECTED_RED: &[u8] = &[2];

pub fn budget(id: u8) -> Option<Duration> {
    match id {
        1 | 4 => Some(Duration::from_secs(1)),
        6 => Some(Duration::from_secs(60)),
        10 => Some(Duration::from_secs(30)),
        _ => None,
    }
}

pub fn title(id: u8) -> &'static str {
    CRITERIA.iter().find(|(i, _)| *i == id).map_or("unknown", |(_, t)| t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Outcome {
    fn from_report(id: u8, mut report: CheckReport, elapsed: Duration) -> Self {
        if let Some(limit) = budget(id) {
            report.record(
                "runtime",
                format!("< {} ms", limit.as_millis()),
                format!("{} ms", elapsed.as_millis()),
                elapsed < limit,
            );
        }
        Outcome {
            id,
            title: title(id).to_string(),
            passed: report.all_passed(),
            checks: report
                .checks
                .into_iter()
                .map(|c| CheckLine {
                    name: c.name,
                    expected: c.expected,
                    got: c.got,
                    passed: c.passed,
                })
                .collect(),
            elapsed,
        }
    }

    /// Names the first failing check, or the number of checks that passed.
    pub fn summary(&self) -> String {
        match self.checks.iter().find(|c| !c.passed) {
            Some(c) => format!("{}: expected {}, got {}", c.name, c.expected, c.got),
            None => format!("{} checks", self.checks.len()),
        }
    }

    /// Same as `summary` but leaves out the measured runtime.
    pub fn stable_summary(&self) -> String {
        match self.checks.iter().find(|c| !c.passed) {
            Some(c) if c.name == "runtime" => "over budget".to_string(),
            Some(c) => format!("{}: expected {}, got {}", c.name, c.expected, c.got),
            None => format!("{} checks", self.checks.len()),
        }
    }
}

/// Runs criterion `id` against `engine`; criterion 12 is the caller's job.
pub fn run_criterion(id: u8, engine: &mut Engine) -> Outcome {
    let start = Instant::now();
    let report = match id {
        1 => ring_axioms(),
        2 => pairing_table(),
        3 => hilbert_ring(),
        4 => degree_zero_continuation(),
        5 => two_point_base(engine),
        6 => reconstruction(engine),
        7 => residuals(engine),
        8 => two_point_series(engine),
        9 => quantum_relations(),
        10 => partitions(),
        11 => end_to_end(engine),
        _ => {
            let mut r = CheckReport::new();
            r.record("criterion", "1..=11", id.to_string(), false);
            r
        }
    };
    Outcome::from_report(id, report, start.elapsed())
}

/// Criteria 1 to 11 on a fresh engine; returns the outcomes and the cache the
/// engine would persist.
pub fn run_core(engine: &mut Engine) -> Vec<Outcome> {
    (1..=11).map(|id| run_criterion(id, engine)).collect()
}

/// Criterion 12 in process: two independent runs of 1..=11 must produce the
/// same report text and the same cache bytes.
pub fn determinism() -> Outcome {
    let start = Instant::now();
    let once = || {
        let mut engine = Engine::new();
        let outcomes = run_core(&mut engine);
        let json = serde_json::to_string(&outcomes).expect("outcomes serialize");
        let verdicts: Vec<(u8, bool, String)> = outcomes.iter().map(|o| (o.id, o.passed, o.stable_summary())).collect();
        let cache = engine.store().serialize(initial_data_fingerprint());
        (json, verdicts, cache)
    };
    let (j1, v1, c1) = once();
    let (j2, v2, c2) = once();
    let mut r = CheckReport::new();
    r.expect_eq("verdicts of two runs", &format!("{v1:?}"), &format!("{v2:?}"));
    // runtime lines legitimately differ; compare with them masked
    let mask = |s: &str| -> String {
        let mut v: Vec<Outcome> = serde_json::from_str(s).expect("round trip");
        for o in &mut v {
            for c in &mut o.checks {
                if c.name == "runtime" {
                    c.got = String::new();
                }
            }
        }
        serde_json::to_string(&v).expect("outcomes serialize")
    };
    let (m1, m2) = (mask(&j1), mask(&j2));
    r.record("report bytes", format!("{} bytes", m1.len()), format!("{} bytes, equal: {}", m2.len(), m1 == m2), m1 == m2);
    r.record("cache bytes", format!("{} bytes", c1.len()), format!("{} bytes, equal: {}", c2.len(), c1 == c2), c1 == c2);
    Outcome::from_report(12, r, start.elapsed())
}

fn ring_axioms() -> CheckReport {
    let mut r = verify_ring_axioms();
    r.extend(verify_ring_relations());
    r
}

fn pairing_table() -> CheckReport {
    use orb::{ALPHA, ALPHA2, ALPHA3, ALPHA4, BETA, GAMMA0, GAMMA1, GAMMA2, ONE};
    let published: [((usize, usize), Rational); 7] = [
        ((ONE, ALPHA4), int(3)),
        ((ALPHA, ALPHA3), int(3)),
        ((ALPHA2, ALPHA2), int(3)),
        ((BETA, BETA), int(3)),
        ((ALPHA2, BETA), int(1)),
        ((GAMMA0, GAMMA2), rat(1, 2)),
        ((GAMMA1, GAMMA1), rat(1, 2)),
    ];
    let ring = OrbRing::get();
    let name = |i: usize, j: usize| format!("({}, {})", orb::BASIS_NAMES[i], orb::BASIS_NAMES[j]);
    let mut r = CheckReport::new();
    let mut table = BTreeMap::new();
    for ((i, j), v) in &published {
        table.insert((*i, *j), v.clone());
        table.insert((*j, *i), v.clone());
        r.expect_eq(name(*i, *j), v, ring.pairing_entry(*i, *j));
    }
    let mut off = Vec::new();
    for i in 0..orb::DIM {
        for j in 0..orb::DIM {
            let want = table.get(&(i, j)).cloned().unwrap_or_else(Rational::zero);
            if ring.pairing_entry(i, j) != &want {
                off.push(name(i, j));
            }
        }
    }
    let off: Vec<String> = off.into_iter().filter(|n| !published.iter().any(|((i, j), _)| *n == name(*i, *j) || *n == name(*j, *i))).collect();
    r.record("other entries zero", "none nonzero", format!("{off:?}"), off.is_empty());
    r
}

fn hilbert_ring() -> CheckReport {
    let t1 = HilbClass::t1();
    let t2 = HilbClass::t2();
    let mut r = CheckReport::new();
    let rhs = &(&t1 * &t2.pow(2)).scale(&GaussRational::from_int(3)) + &(&t1.pow(2) * &t2).scale(&GaussRational::from_int(3));
    r.expect_eq("T2^3", &rhs, &t2.pow(3));
    let top = HilbClass::basis(hilb::DIM - 1).scale(&GaussRational::from_int(12));
    r.expect_eq("T2^4", &top, &t2.pow(4));
    r.expect_eq("T1^3", &HilbClass::zero(), &t1.pow(3));
    r.expect_eq("integral of T2^4", &GaussRational::from_int(3), &t2.pow(4).integrate());
    r.expect_eq("Hilbert graded dimensions", &format!("{:?}", [1, 2, 3, 2, 1]), &format!("{:?}", hilb_graded_dims()));
    r.expect_eq("orbifold graded dimensions", &format!("{:?}", hilb_graded_dims()), &format!("{:?}", orb_graded_dims()));
    r
}

/// `(−1)^g (2^{2g} − 1)·3·B_{2g} / (2g)`, written out again from the Bernoulli numbers.
fn hodge_closed_form(g: u32) -> Rational {
    sign(g as i64) * (pow(&int(2), 2 * g) - int(1)) * int(3) * bernoulli(2 * g as usize) / int(2 * g as i64)
}

fn degree_zero_continuation() -> CheckReport {
    let mut r = CheckReport::new();
    let minus_one = GaussRational::from_int(-1);
    let half = GaussRational::from(rat(1, 2));
    for g in 1..=8 {
        let lhs = GaussRational::from(hodge_closed_form(g));
        let closed = degree_zero_closed_form(g, DegreeZeroKind::AlphaGamma);
        match closed.eval_at(&minus_one) {
            Ok(v) => {
                r.expect_eq(format!("g={g}: closed form vs 1/2 Li continuation"), &lhs, &(&half * &v));
            }
            Err(e) => r.record(format!("g={g}: continuation"), lhs.to_string(), e.to_string(), false),
        }
        let engine_side = base_value(&hodge_key(g)).map(GaussRational::from);
        r.record(
            format!("g={g}: degree-zero initial data"),
            lhs.to_string(),
            engine_side.as_ref().map_or("none".into(), ToString::to_string),
            engine_side.as_ref() == Some(&lhs),
        );
        let derived = crc_degree_zero(g, DegreeZeroKind::AlphaGamma).map(|q| q.at_minus_one());
        match derived {
            Ok(Ok(v)) => {
                r.expect_eq(format!("g={g}: table derivation at -1"), &lhs, &(&half * &v));
            }
            other => r.record(format!("g={g}: table derivation"), lhs.to_string(), format!("{other:?}"), false),
        }
        for (label, series) in [
            ("closed", Ok(degree_zero_closed_form(g, DegreeZeroKind::GammaSquared))),
            ("derived", crc_degree_zero(g, DegreeZeroKind::GammaSquared).map(|q| match q {
                QInvariant::Rational { series, .. } => series,
                QInvariant::Laurent { .. } => unreachable!("degree-zero series are rational"),
            })),
        ] {
            let v = series.map_err(|e| e.to_string()).and_then(|s| s.eval_at(&minus_one).map_err(|e| e.to_string()));
            let ok = matches!(&v, Ok(x) if x.is_zero());
            r.record(format!("g={g}: g^2-type {label} continuation at -1"), "0", format!("{v:?}"), ok);
        }
    }
    r
}

fn key(d: u32, ins: &[usize]) -> InvariantKey {
    InvariantKey::new(d, ins)
}

fn engine_value(engine: &mut Engine, k: &InvariantKey) -> String {
    match engine.compute_invariant(k) {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn two_point_base(engine: &mut Engine) -> CheckReport {
    use orb::{ALPHA2, ALPHA3, ALPHA4, BETA, GAMMA2};
    let mut r = CheckReport::new();
    for (ins, want) in [
        ([ALPHA4, ALPHA2], "6"),
        ([ALPHA3, ALPHA3], "9"),
        ([GAMMA2, GAMMA2], "1"),
        ([ALPHA4, BETA], "0"),
    ] {
        let k = key(1, &ins);
        let got = engine_value(engine, &k);
        r.record(format!("<{k}>"), want, got.clone(), got == want);
    }
    r
}

fn reconstruction(engine: &mut Engine) -> CheckReport {
    use orb::{GAMMA0, GAMMA2};
    let mut r = CheckReport::new();
    for (ins, want) in [
        (vec![GAMMA2, GAMMA2, GAMMA0, GAMMA0], "-1/2"),
        (vec![GAMMA2, GAMMA2, GAMMA0, GAMMA0, GAMMA0, GAMMA0], "1/2"),
    ] {
        let k = key(1, &ins);
        let pending = matches!(reduce(&k), Reduction::Pending(_, p) if p == k);
        r.record(format!("<{k}> needs the linear system"), "true", pending.to_string(), pending);
        let got = engine_value(engine, &k);
        r.record(format!("<{k}>"), want, got.clone(), got == want);
        let stored = engine.store().get(&k).map_or("absent".to_string(), ToString::to_string);
        r.record(format!("<{k}> stored by the solve"), want, stored.clone(), stored == want);
    }
    r
}

fn residuals(engine: &mut Engine) -> CheckReport {
    let mut r = CheckReport::new();
    for n in 3..=6 {
        match engine.residuals((1, n)) {
            Ok(bad) => {
                let total = Engine::relation_count((1, n));
                let shown: Vec<String> = bad.iter().take(3).map(|(l, v)| format!("{l}: {v:?}")).collect();
                r.record(
                    format!("level (1,{n}): {total} relations"),
                    "0 nonzero",
                    format!("{} nonzero {shown:?}", bad.len()),
                    bad.is_empty(),
                );
            }
            Err(e) => r.record(format!("level (1,{n})"), "solved", e.to_string(), false),
        }
    }
    r
}

fn gr(s: &str) -> GaussRational {
    GaussRational::parse(s).expect("literal")
}

/// Series as printed: coefficients of q^-1, q^0, q^1.
fn published_series() -> [([&'static str; 3], &'static str); 6] {
    [
        (["3", "12", "3"], "6"),
        (["-3", "9", "6"], "6"),
        (["9", "27", "9"], "9"),
        (["-4", "8", "-4"], "16"),
        (["3i", "0", "-3i"], "0"),
        (["1/2i", "0", "-1/2i"], "0"),
    ]
}

fn two_point_series(engine: &mut Engine) -> CheckReport {
    let mut r = CheckReport::new();
    for (((a, b), (c, e)), (coeffs, orb_value)) in TWO_POINT_SHAPES.into_iter().zip(published_series()) {
        let (p1, p2) = (orb_monomial(a, b), orb_monomial(c, e));
        let name = format!("<{}, {}>", monomial_name(a, b), monomial_name(c, e));
        let want = LaurentPoly::from_terms([(-1, gr(coeffs[0])), (0, gr(coeffs[1])), (1, gr(coeffs[2]))]);
        match crc_two_point(&p1, &p2) {
            Ok(q) => {
                if let QInvariant::Laurent { series, .. } = &q {
                    r.expect_eq(format!("{name} series"), &want, series);
                }
                let at = q.at_minus_one().map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
                r.record(format!("{name} at q=-1"), orb_value, at.clone(), at == orb_value);
            }
            Err(err) => r.record(format!("{name} series"), want.to_string(), err.to_string(), false),
        }
        let orb = engine
            .compute_query(&InvariantQuery::new(1, vec![p1, p2]))
            .map(|v| v.to_string())
            .unwrap_or_else(|e| e.to_string());
        r.record(format!("{name}_1 on the orbifold"), orb_value, orb.clone(), orb == orb_value);
    }
    r
}

fn quantum_relations() -> CheckReport {
    let mut r = quantum_relation_check();
    r.extend(bridge_check());
    r
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-1000..=1000), rng.random_range(1..=97))
}

fn partitions() -> CheckReport {
    let mut r = CheckReport::new();
    for n in (2..=12).step_by(2) {
        let mut tally: BTreeMap<OddPartitionType, u64> = BTreeMap::new();
        visit_set_partitions(n, |blocks| {
            if let Some(t) = OddPartitionType::of_blocks(blocks) {
                *tally.entry(t).or_default() += 1;
            }
        });
        let mut mismatched = Vec::new();
        let mut types = 0;
        for parts in 1..=n {
            for t in OddPartitionType::enumerate(n, parts) {
                types += 1;
                let closed = partition_type_count(n, &t).map(|c| c.to_string()).unwrap_or_else(|e| e.to_string());
                let brute = tally.remove(&t).unwrap_or(0).to_string();
                if closed != brute {
                    mismatched.push(format!("{:?}: {closed} vs {brute}", t.counts));
                }
            }
        }
        // any type the closed form never enumerated
        mismatched.extend(tally.keys().map(|t| format!("{:?} missing", t.counts)));
        r.record(format!("n={n}: {types} odd types"), "all equal", format!("{mismatched:?}"), mismatched.is_empty());
    }
    let closed = conversion_matrix(5);
    let direct = conversion_matrix_by_enumeration(5);
    for g in 0..=5 {
        let row = |m: &symsq::hyperelliptic::ConversionMatrix| m.entries[g].iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        r.expect_eq(format!("conversion row g={g}"), &row(&direct), &row(&closed));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    for big_g in 0..=6usize {
        let m = conversion_matrix(big_g);
        for trial in 0..5 {
            let e: Vec<Rational> = (0..=big_g).map(|_| random_rational(&mut rng)).collect();
            let back = e_from_j(&m, &j_from_e(&m, &e));
            let j: Vec<Rational> = (0..=big_g).map(|_| random_rational(&mut rng)).collect();
            let fwd = j_from_e(&m, &e_from_j(&m, &j));
            let ok = back == e && fwd == j;
            r.record(format!("round trip G={big_g} #{trial}"), "exact", if ok { "exact" } else { "differs" }, ok);
        }
    }
    r
}

fn end_to_end(engine: &mut Engine) -> CheckReport {
    let mut r = CheckReport::new();
    match count_hyperelliptic(engine, 1, 0) {
        Ok(t) => {
            let e = t.rows.first().map(|row| row.e.to_string()).unwrap_or_default();
            r.record("E(1,0): four general points are never collinear", "0", e.clone(), e == "0");
        }
        Err(err) => r.record("E(1,0)", "0", err.to_string(), false),
    }
    let x = incidence_class();
    r.expect_eq("(a^2 - 2b)^2 integrated", &GaussRational::from_int(1), &(&x * &x).integrate());
    r.expect_eq("incidence class", &(&OrbClass::basis(orb::ALPHA2) - &OrbClass::basis(orb::BETA).scale(&GaussRational::from_int(2))), &x);
    r
}
