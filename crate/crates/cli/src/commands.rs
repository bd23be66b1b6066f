//! One function per subcommand.

use aperylike::asymptotics::{analyze, closed_forms, relative_error, PrecisionConfig};
use aperylike::catalog::{self, Modular};
use aperylike::congruence::{self, check_conjecture, conjectures, lucas_scan, Coverage};
use aperylike::qmodular::{identity_names, verify_identity};
use aperylike::{Error, Result};
use serde_json::{json, Value};

use crate::sweep::{self, all_passed, Check};
use crate::{Outcome, RunReport, SeqRef};

/// `T(0..=n_max)` as strings.
pub fn term_strings(seq: &SeqRef, n_max: usize) -> Result<Vec<String>> {
    Ok(seq.recurrence()?.generate(n_max)?.iter().map(|t| t.to_natural()).collect())
}

pub fn terms(seq: &SeqRef, n_max: usize) -> Result<RunReport> {
    let terms = term_strings(seq, n_max)?;
    let payload = json!({"seq": seq.name, "ring": seq.def.ring, "n_max": n_max, "terms": terms});
    Ok(RunReport::new("terms", Outcome::Data, payload).param("seq", &seq.name).param("n_max", n_max))
}

/// CSV with header `n,T(n)`.
pub fn terms_csv(seq: &SeqRef, n_max: usize) -> Result<String> {
    let mut s = String::from("n,T(n)\n");
    for (n, t) in term_strings(seq, n_max)?.iter().enumerate() {
        s.push_str(&format!("{n},{t}\n"));
    }
    Ok(s)
}

fn modular_kind(m: &Option<Modular>) -> &'static str {
    match m {
        Some(Modular::WeightOne(_)) => "weight-one",
        Some(Modular::WeightTwo(_)) => "weight-two",
        Some(Modular::Level(_)) => "level",
        None => "none",
    }
}

fn entry_summary(e: &catalog::CatalogEntry) -> Value {
    json!({
        "key": e.key,
        "kind": e.kind,
        "ring": e.ring.to_string(),
        "level": e.level,
        "oeis": e.oeis,
        "oracle": e.oracle.is_some(),
        "modular": modular_kind(&e.modular),
    })
}

pub fn catalog_list() -> RunReport {
    let rows: Vec<Value> = catalog::all_entries().iter().map(entry_summary).collect();
    RunReport::new("catalog list", Outcome::Data, Value::Array(rows))
}

/// CSV with one line per entry.
pub fn catalog_list_csv() -> String {
    let mut s = String::from("key,kind,ring,level,oeis\n");
    for e in catalog::all_entries() {
        let kind = serde_json::to_value(e.kind).unwrap();
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            e.key,
            kind.as_str().unwrap_or(""),
            e.ring,
            e.level.as_deref().unwrap_or(""),
            e.oeis.unwrap_or("")
        ));
    }
    s
}

pub fn catalog_show(key: &str) -> Result<RunReport> {
    let e = catalog::get_entry(key)?;
    let mut v = entry_summary(e);
    v["definition"] = serde_json::to_value(e.to_def()).unwrap();
    v["note"] = json!(e.note);
    Ok(RunReport::new("catalog show", Outcome::Data, v).param("key", key))
}

/// Every entry as a sequence definition, as a JSON array.
pub fn catalog_export() -> String {
    let defs: Vec<_> = catalog::all_entries().iter().map(|e| e.to_def()).collect();
    serde_json::to_string_pretty(&defs).expect("definitions serialise")
}

fn checks_report(command: &str, checks: Vec<Check>) -> RunReport {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let payload = json!({"checks": checks.len(), "failed": failed, "results": checks});
    RunReport::new(command, Outcome::from_pass(all_passed(&checks)), payload)
}

/// Which rows `verify-qseries` covers.
pub enum QSeriesTarget<'a> {
    Entry(&'a str),
    Def(&'a SeqRef),
    /// Every catalog row with modular data.
    Catalog,
    /// Catalog, identity bank, Clausen-type identities and generating functions.
    All,
}

pub fn verify_qseries(target: QSeriesTarget, order: usize) -> Result<RunReport> {
    let (what, checks) = match target {
        QSeriesTarget::Entry(k) => (k.to_string(), sweep::entry_checks(catalog::get_entry(k)?, order)),
        QSeriesTarget::Def(s) => (s.name.clone(), sweep::def_checks(&s.def, order)?),
        QSeriesTarget::Catalog => ("catalog".into(), sweep::catalog_checks(order)),
        QSeriesTarget::All => ("all".into(), sweep::full_sweep(order)),
    };
    if checks.is_empty() {
        return Err(Error::Invalid(format!("{what} has no modular data to check")));
    }
    Ok(checks_report("verify-qseries", checks).param("target", what).param("order", order))
}

pub fn verify_identities(name: Option<&str>, order: usize) -> Result<RunReport> {
    let checks = match name {
        Some(n) => {
            if !identity_names().iter().any(|x| x == n) {
                return Err(Error::Invalid(format!("unknown identity {n:?}")));
            }
            vec![match verify_identity(n, order) {
                Ok(r) if r.passed => Check { row: n.into(), check: "identity".into(), passed: true, detail: None },
                Ok(r) => Check {
                    row: n.into(),
                    check: "identity".into(),
                    passed: false,
                    detail: Some(format!("first mismatch at q^{:?}", r.first_mismatch.map(|q| q.to_string()))),
                },
                Err(e) => Check { row: n.into(), check: "identity".into(), passed: false, detail: Some(e.to_string()) },
            }]
        }
        None => sweep::identity_checks(order),
    };
    Ok(checks_report("verify-identities", checks).param("name", name.unwrap_or("all")).param("order", order))
}

pub fn lucas(seq: &SeqRef, primes: &[u64], n_max: usize) -> Result<RunReport> {
    let spec = seq.recurrence()?;
    let reports = lucas_scan(&seq.name, &spec, primes, n_max)?;
    let ok = reports.iter().all(|r| r.violations.is_empty());
    let payload = if reports.len() == 1 { serde_json::to_value(&reports[0]) } else { serde_json::to_value(&reports) };
    let primes_s = primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
    Ok(RunReport::new("lucas", Outcome::from_pass(ok), payload.unwrap())
        .param("seq", &seq.name)
        .param("primes", primes_s)
        .param("n_max", n_max))
}

/// Names accepted by `supercong --pattern`.
pub fn pattern_names() -> Vec<String> {
    conjectures().into_iter().map(|c| c.name).collect()
}

pub fn supercong(seq: &SeqRef, p: Option<u64>, e: Option<u32>, n_max: usize, pattern: Option<&str>) -> Result<RunReport> {
    let (report, strict) = match pattern {
        Some(name) => {
            let c = conjectures()
                .into_iter()
                .find(|c| c.name == name)
                .ok_or_else(|| Error::Invalid(format!("unknown pattern {name:?}; known: {}", pattern_names().join(", "))))?;
            let canonical = catalog::get_entry(&c.seq)?.key.clone();
            if canonical != seq.name || p.is_some_and(|p| p != c.p) || e.is_some_and(|e| e != c.e) {
                return Err(Error::Invalid(format!("pattern {name} is stated for {} with p = {}, e = {}", c.seq, c.p, c.e)));
            }
            (check_conjecture(&c, n_max)?, c.strict)
        }
        None => {
            let p = p.ok_or_else(|| Error::Invalid("--prime is required without --pattern".into()))?;
            let e = e.unwrap_or(2);
            let table = congruence::residue_table(&seq.recurrence()?, p, e, Coverage::Multiples(n_max))?;
            (congruence::supercongruence_check(&seq.name, &table, n_max, None)?, false)
        }
    };
    let ok = report.holds(strict);
    let (p, e) = (report.p, report.e);
    Ok(RunReport::new("supercong", Outcome::from_pass(ok), serde_json::to_value(report).unwrap())
        .param("seq", &seq.name)
        .param("p", p)
        .param("e", e)
        .param("n_max", n_max)
        .param("pattern", pattern.unwrap_or("none")))
}

pub fn scan(seq: &SeqRef, primes: &[u64], n_max: usize) -> Result<RunReport> {
    let counts = congruence::scan_c_counts(&seq.recurrence()?, primes, n_max)?;
    let rows: Vec<Value> = counts.iter().map(|(p, c)| json!({"p": p, "c": c})).collect();
    let payload = json!({"seq": seq.name, "n_max": n_max, "counts": rows});
    Ok(RunReport::new("scan", Outcome::Data, payload).param("seq", &seq.name).param("n_max", n_max))
}

pub fn scan_csv(seq: &SeqRef, primes: &[u64], n_max: usize) -> Result<String> {
    let counts = congruence::scan_c_counts(&seq.recurrence()?, primes, n_max)?;
    let mut s = String::from("p,c\n");
    for (p, c) in counts {
        s.push_str(&format!("{p},{c}\n"));
    }
    Ok(s)
}

pub fn asymptotics(seq: &SeqRef, cfg: &PrecisionConfig) -> Result<RunReport> {
    cfg.validate()?;
    let (g, h) = seq.def.gh()?.ok_or_else(|| Error::Invalid(format!("{} has no G and H", seq.name)))?;
    let (p, c) = analyze(&g, &h, &seq.recurrence()?, cfg)?;
    let digits = cfg.digits.min(40);
    let mut payload = json!({
        "seq": seq.name,
        "R": p.r.to_decimal(digits),
        "R_exact": p.r_exact.as_ref().map(|x| x.to_natural()),
        "alpha": p.alpha.to_decimal(digits),
        "alpha_exact": p.alpha_exact.map(|(a, b)| format!("{a}/{b}")),
        "b1": p.b1.to_decimal(digits),
        "b1_exact": p.b1_exact.as_ref().map(|x| x.to_natural()),
        "C": c.value.to_decimal(digits),
        "C_error": c.error.to_sci(3),
        "certificates": p.certificate,
    });
    if let Some(cf) = catalog::get_entry(&seq.name).ok().and_then(|e| closed_forms(&e.key, cfg.bits())) {
        payload["closed_form"] = json!({
            "R": cf.r.to_decimal(digits),
            "b1": cf.b1.to_decimal(digits),
            "C": cf.c.to_decimal(digits),
            "relative_error": {
                "R": format!("{:.1e}", relative_error(&p.r, &cf.r)),
                "b1": format!("{:.1e}", relative_error(&p.b1, &cf.b1)),
                "C": format!("{:.1e}", relative_error(&c.value, &cf.c)),
            },
        });
    }
    Ok(RunReport::new("asymptotics", Outcome::Data, payload)
        .param("seq", &seq.name)
        .param("terms", cfg.terms)
        .param("diffs", cfg.diffs)
        .param("digits", cfg.digits))
}
