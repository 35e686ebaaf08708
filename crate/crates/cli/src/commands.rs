use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{json, Value};

use symsq::arith::GaussRational;
use symsq::chow::orb::{self, OrbRing};
use symsq::chow::{orb_graded_dims, verify_ring_axioms, verify_ring_relations, OrbClass};
use symsq::crc::crc_verify;
use symsq::expr::parse_orb_list;
use symsq::gw::{reduce, InvariantQuery, Reduction};
use symsq::hyperelliptic::count_hyperelliptic;
use symsq::report::CheckReport;
use symsq::wdvv::{initial_data_fingerprint, Engine, InvariantStore, Level};

use crate::acceptance::{self, Outcome, EXPECTED_RED};
use crate::cache::{self, Cache};
use crate::envelope::{Envelope, SCHEMA};
use crate::{Cli, CliError, Command, CrcAction, ExportWhat, GlobalOpts, Show};

pub struct Output {
    pub text: String,
    pub code: i32,
}

struct Reply {
    verb: &'static str,
    inputs: Value,
    result: Value,
    provenance: String,
    text: String,
    code: i32,
}

/// Engine seeded from the cache, and what the cache held beforehand.
struct Session {
    cache: Option<Cache>,
    engine: Engine,
    before: (usize, usize),
}

fn footprint(s: &InvariantStore) -> (usize, usize) {
    (s.len(), s.solved_levels().count())
}

impl Session {
    fn open(g: &GlobalOpts) -> Result<Self, CliError> {
        let cache = if g.no_cache {
            None
        } else {
            let path = g.cache.clone().unwrap_or_else(|| cache::DEFAULT_PATH.into());
            let c = Cache::open(&path)?;
            eprintln!("cache {}: {}", c.path().display(), c.status);
            Some(c)
        };
        let store = cache.as_ref().map(|c| c.store.clone()).unwrap_or_default();
        let before = footprint(&store);
        Ok(Session {
            cache,
            engine: Engine::with_store(store),
            before,
        })
    }

    fn changed(&self) -> bool {
        footprint(self.engine.store()) != self.before
    }

    /// Saves newly solved levels.
    fn finish(self) -> Result<(), CliError> {
        if let Some(c) = &self.cache {
            if footprint(self.engine.store()) != self.before {
                c.save(self.engine.store())?;
            }
        }
        Ok(())
    }
}

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let start = Instant::now();
    let g = &cli.global;
    let reply = match &cli.command {
        Command::Ring { show } => ring(*show),
        Command::Invariant { degree, expression } => invariant(g, *degree, expression)?,
        Command::Hyperelliptic { degree, max_genus } => hyperelliptic(g, *degree, *max_genus)?,
        Command::Crc {
            action: CrcAction::Verify { max_genus },
        } => crc(g, *max_genus)?,
        Command::Selftest { quick, details } => selftest(g, *quick, *details)?,
        Command::Export {
            what,
            out,
            max_degree,
            max_points,
        } => export(g, *what, out, *max_degree, *max_points)?,
    };
    let elapsed = start.elapsed().as_millis() as u64;
    let text = if g.json {
        Envelope {
            schema: SCHEMA.to_string(),
            verb: reply.verb.to_string(),
            inputs: reply.inputs,
            result: reply.result,
            provenance: reply.provenance,
            fingerprint: initial_data_fingerprint().to_string(),
            timing_ms: g.timing.then_some(elapsed),
        }
        .to_json()
    } else if g.timing {
        format!("{}elapsed: {elapsed} ms\n", reply.text)
    } else {
        reply.text
    };
    Ok(Output { text, code: reply.code })
}

fn checks_json(r: &CheckReport) -> Value {
    Value::Array(
        r.checks
            .iter()
            .map(|c| json!({"name": c.name, "expected": c.expected, "got": c.got, "passed": c.passed}))
            .collect(),
    )
}

fn ring(show: Show) -> Reply {
    let names: Vec<&str> = orb::BASIS_NAMES.to_vec();
    let mut text = String::new();
    let (result, code) = match show {
        Show::Products => {
            let ring = OrbRing::get();
            let table: Vec<Vec<String>> = (0..orb::DIM)
                .map(|i| (0..orb::DIM).map(|j| ring.basis_product(i, j).to_string()).collect())
                .collect();
            for (i, row) in table.iter().enumerate() {
                for (j, p) in row.iter().enumerate().skip(i) {
                    let _ = writeln!(text, "{} * {} = {p}", names[i], names[j]);
                }
            }
            (json!({"basis": names, "products": table}), 0)
        }
        Show::Pairing => {
            let ring = OrbRing::get();
            let m: Vec<Vec<String>> = (0..orb::DIM)
                .map(|i| (0..orb::DIM).map(|j| ring.pairing_entry(i, j).to_string()).collect())
                .collect();
            let _ = writeln!(text, "{:>4} {}", "", names.iter().map(|n| format!("{n:>5}")).collect::<String>());
            for (i, row) in m.iter().enumerate() {
                let _ = writeln!(text, "{:>4} {}", names[i], row.iter().map(|v| format!("{v:>5}")).collect::<String>());
            }
            (json!({"basis": names, "pairing": m}), 0)
        }
        Show::Relations => {
            let mut r = verify_ring_axioms();
            r.extend(verify_ring_relations());
            let dims = orb_graded_dims();
            let _ = write!(text, "{r}");
            let _ = writeln!(text, "graded dimensions {dims:?}");
            (json!({"checks": checks_json(&r), "graded_dimensions": dims}), i32::from(!r.all_passed()))
        }
    };
    Reply {
        verb: "ring",
        inputs: json!({"show": format!("{show:?}").to_lowercase()}),
        result,
        provenance: "closed-form".into(),
        text,
        code,
    }
}

fn invariant(g: &GlobalOpts, d: u32, expression: &str) -> Result<Reply, CliError> {
    let classes = parse_orb_list(expression).map_err(|e| CliError::Usage(format!("cannot parse \"{expression}\": {e}")))?;
    if classes.is_empty() {
        return Err(CliError::Usage("no insertions given".into()));
    }
    let query = InvariantQuery::new(d, classes.clone());
    let mut s = Session::open(g)?;
    let mut total = GaussRational::default();
    let mut terms = Vec::new();
    let mut reasons = Vec::new();
    let mut stable = 0;
    for (key, c) in query.expand() {
        let (v, reason) = match reduce(&key) {
            Reduction::Unstable => {
                terms.push(json!({"key": key.to_string(), "coefficient": c.to_string(), "value": Value::Null, "reason": "unstable"}));
                continue;
            }
            Reduction::Value(v, r) => (v, r.as_str().to_string()),
            Reduction::Pending(..) => {
                let v = s.engine.compute_invariant(&key).map_err(|e| CliError::Compute(e.to_string()))?;
                (v, "reconstruction".to_string())
            }
        };
        stable += 1;
        total += &c.scale(&v);
        terms.push(json!({"key": key.to_string(), "coefficient": c.to_string(), "value": v.to_string(), "reason": reason}));
        reasons.push(reason);
    }
    if stable == 0 && !terms.is_empty() {
        return Err(CliError::Compute(format!("every term of the degree-{d} bracket is unstable")));
    }
    reasons.dedup();
    let reason = match reasons.as_slice() {
        [] => "zero insertion".to_string(),
        [r] => r.clone(),
        _ if reasons.iter().any(|r| r == "reconstruction") => "reconstruction".to_string(),
        _ => "mixed".to_string(),
    };
    let provenance = if s.changed() {
        "computed"
    } else if reasons.iter().any(|r| r == "reconstruction") {
        "cache"
    } else {
        "closed-form"
    }
    .to_string();
    s.finish()?;
    let shown: Vec<String> = classes.iter().map(OrbClass::to_string).collect();
    let mut text = format!("<{}>_{d} = {total}  ({reason})\n", shown.join(", "));
    if terms.len() > 1 {
        for t in &terms {
            let _ = writeln!(text, "  {} * <{}> = {}  ({})", t["coefficient"].as_str().unwrap_or(""), t["key"].as_str().unwrap_or(""), t["value"].as_str().unwrap_or("absent"), t["reason"].as_str().unwrap_or(""));
        }
    }
    Ok(Reply {
        verb: "invariant",
        inputs: json!({"degree": d, "expression": expression, "insertions": shown}),
        result: json!({"value": total.to_string(), "reason": reason, "terms": terms}),
        provenance,
        text,
        code: 0,
    })
}

fn hyperelliptic(g: &GlobalOpts, d: u32, max_genus: u32) -> Result<Reply, CliError> {
    let mut s = Session::open(g)?;
    let table = count_hyperelliptic(&mut s.engine, d, max_genus).map_err(|e| CliError::Compute(e.to_string()))?;
    let provenance = if s.changed() { "computed" } else { "cache" }.to_string();
    s.finish()?;
    let mut text = format!("degree {d}\n{:>3} {:>20} {:>20}\n", "g", "J(d,g)", "E(d,g)");
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            let flag = if r.integral && r.nonnegative { "" } else { "  (not a nonnegative integer)" };
            let _ = writeln!(text, "{:>3} {:>20} {:>20}{flag}", r.g, r.j.to_string(), r.e.to_string());
            json!({"g": r.g, "j": r.j.to_string(), "e": r.e.to_string(), "integral": r.integral, "nonnegative": r.nonnegative})
        })
        .collect();
    Ok(Reply {
        verb: "hyperelliptic",
        inputs: json!({"degree": d, "max_genus": max_genus}),
        result: json!({"rows": rows}),
        provenance,
        text,
        code: 0,
    })
}

fn crc(g: &GlobalOpts, max_genus: u32) -> Result<Reply, CliError> {
    let mut s = Session::open(g)?;
    let rep = crc_verify(max_genus, &mut s.engine).map_err(|e| CliError::Compute(e.to_string()))?;
    s.finish()?;
    let passed = rep.checks.iter().filter(|c| c.passed).count();
    let text = format!("{rep}{passed}/{} identities hold\n", rep.checks.len());
    Ok(Reply {
        verb: "crc verify",
        inputs: json!({"max_genus": max_genus}),
        result: json!({"checks": checks_json(&rep), "passed": passed, "total": rep.checks.len()}),
        provenance: "computed".into(),
        text,
        code: i32::from(!rep.all_passed()),
    })
}

/// Levels solved by the degree-two extension of the self-test.
fn extended_levels() -> Vec<Level> {
    (2..=9).map(|n| (2, n)).collect()
}

fn extended(engine: &mut Engine) -> CheckReport {
    let mut r = CheckReport::new();
    match count_hyperelliptic(engine, 2, 0) {
        Ok(t) => {
            let e = t.rows[0].e.to_string();
            r.record("E(2,0): seven general points never lie on a conic", "0", e.clone(), e == "0");
        }
        Err(err) => r.record("E(2,0)", "0", err.to_string(), false),
    }
    for n in 3..=5 {
        match engine.residuals((2, n)) {
            Ok(bad) => r.record(format!("residuals at level (2,{n})"), "0 nonzero", format!("{} nonzero", bad.len()), bad.is_empty()),
            Err(e) => r.record(format!("residuals at level (2,{n})"), "solved", e.to_string(), false),
        }
    }
    r
}

fn outcome_json(o: &Outcome, timing: bool) -> Value {
    let checks: Vec<Value> = o
        .checks
        .iter()
        .map(|c| {
            let got = if c.name == "runtime" && !timing {
                if c.passed { "within budget" } else { "over budget" }.to_string()
            } else {
                c.got.clone()
            };
            json!({"name": c.name, "expected": c.expected, "got": got, "passed": c.passed})
        })
        .collect();
    json!({"id": o.id, "title": o.title, "passed": o.passed, "expected_red": EXPECTED_RED.contains(&o.id), "checks": checks})
}

fn selftest(g: &GlobalOpts, quick: bool, details: bool) -> Result<Reply, CliError> {
    let cache = if g.no_cache {
        None
    } else {
        let path = g.cache.clone().unwrap_or_else(|| cache::DEFAULT_PATH.into());
        let c = Cache::open(&path)?;
        eprintln!("cache {}: {}", c.path().display(), c.status);
        Some(c)
    };
    // recompute everything from the initial data; the cache is only compared
    let mut engine = Engine::new();
    let mut outcomes = acceptance::run_core(&mut engine);
    outcomes.push(acceptance::determinism());
    let ext = (!quick).then(|| extended(&mut engine));

    let mut code = 0;
    if let Some(c) = &cache {
        let conflicts = c.store.conflicts(engine.store());
        if conflicts.is_empty() {
            let mut merged = c.store.clone();
            merged.merge(engine.store());
            c.save(&merged)?;
        } else {
            for (k, old, new) in conflicts.iter().take(5) {
                eprintln!("cache disagrees with recomputation: {k} cached {old}, computed {new}");
            }
            code = 1;
        }
    }

    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if !failed.is_empty() || ext.as_ref().is_some_and(|r| !r.all_passed()) {
        code = 1;
    }
    let mut text = String::new();
    for o in &outcomes {
        let verdict = if o.passed { "ok  " } else { "FAIL" };
        let note = if !o.passed && EXPECTED_RED.contains(&o.id) { " [known]" } else { "" };
        let summary = if g.timing { o.summary() } else { o.stable_summary() };
        let _ = writeln!(text, "criterion {:>2} {verdict} {}{note}: {summary}", o.id, o.title);
        if details {
            for c in &o.checks {
                let _ = writeln!(text, "      {} {}: expected {}, got {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.expected, c.got);
            }
        }
    }
    let skipped = extended_levels().len();
    match &ext {
        Some(r) => {
            let _ = write!(text, "degree-two extension:\n{r}");
        }
        None => {
            let _ = writeln!(text, "degree-two extension skipped ({skipped} levels with d >= 2)");
        }
    }
    let _ = writeln!(text, "{}/{} criteria pass", outcomes.len() - failed.len(), outcomes.len());

    let result = json!({
        "criteria": outcomes.iter().map(|o| outcome_json(o, g.timing)).collect::<Vec<_>>(),
        "passed": outcomes.len() - failed.len(),
        "failed": failed,
        "expected_red": EXPECTED_RED,
        "extension": match &ext {
            Some(r) => json!({"checks": checks_json(r), "passed": r.all_passed()}),
            None => json!({"skipped_levels": skipped}),
        },
    });
    Ok(Reply {
        verb: "selftest",
        inputs: json!({"quick": quick}),
        result,
        provenance: "computed".into(),
        text,
        code,
    })
}

fn export(g: &GlobalOpts, what: ExportWhat, out: &std::path::Path, max_degree: u32, max_points: usize) -> Result<Reply, CliError> {
    let ExportWhat::Invariants = what;
    let mut s = Session::open(g)?;
    for d in 1..=max_degree {
        for n in 2..=max_points {
            s.engine.ensure_level((d, n)).map_err(|e| CliError::Compute(e.to_string()))?;
        }
    }
    let provenance = if s.changed() { "computed" } else { "cache" }.to_string();
    let rows: Vec<Value> = s
        .engine
        .store()
        .values()
        .iter()
        .filter(|(k, _)| k.d <= max_degree && k.n() <= max_points)
        .map(|(k, v)| {
            let names: Vec<&str> = k.insertions().iter().map(|&i| orb::BASIS_NAMES[i]).collect();
            json!({"key": k.to_string(), "degree": k.d, "insertions": names, "value": v.to_string()})
        })
        .collect();
    let count = rows.len();
    let doc = json!({
        "schema": "symsq.invariants/1",
        "fingerprint": initial_data_fingerprint(),
        "max_degree": max_degree,
        "max_points": max_points,
        "invariants": rows,
    });
    let mut body = serde_json::to_string_pretty(&doc).expect("table serializes");
    body.push('\n');
    std::fs::write(out, body).map_err(|e| CliError::Compute(format!("writing {}: {e}", out.display())))?;
    s.finish()?;
    Ok(Reply {
        verb: "export",
        inputs: json!({"what": "invariants", "out": out.display().to_string(), "max_degree": max_degree, "max_points": max_points}),
        result: json!({"count": count}),
        provenance,
        text: format!("wrote {count} invariants to {}\n", out.display()),
        code: 0,
    })
}
