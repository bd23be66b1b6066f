//! Verification sweeps over the catalog.

use aperylike::catalog::{self, CatalogEntry, Modular, SequenceDef};
use aperylike::powerseries::{verify_asz, verify_ctyz, verify_gf_independence, SeriesCheck};
use aperylike::qmodular::{
    build_xz, expansion_coefficients, identity_names, verify_diff_formula, verify_identity, verify_ode,
    verify_weight_one, verify_weight_two, IdentityCheck, LevelModular,
};
use aperylike::{Poly, RecurrenceSpec, Result};
use rayon::prelude::*;
use serde::Serialize;

/// One named check on one row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub row: String,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn ok(row: &str, check: &str) -> Self {
        Check { row: row.into(), check: check.into(), passed: true, detail: None }
    }

    fn fail(row: &str, check: &str, detail: String) -> Self {
        Check { row: row.into(), check: check.into(), passed: false, detail: Some(detail) }
    }

    fn from_identity(row: &str, check: &str, r: Result<IdentityCheck>) -> Self {
        match r {
            Ok(c) if c.passed => Check::ok(row, check),
            Ok(c) => Check::fail(row, check, format!("first mismatch at q^{}", c.first_mismatch.map(|q| q.to_string()).unwrap_or_default())),
            Err(e) => Check::fail(row, check, e.to_string()),
        }
    }

    fn from_series(row: &str, check: &str, r: Result<SeriesCheck>) -> Self {
        match r {
            Ok(c) if c.passed => Check::ok(row, check),
            Ok(c) => Check::fail(row, check, format!("first mismatch at x^{}", c.first_mismatch.unwrap_or_default())),
            Err(e) => Check::fail(row, check, e.to_string()),
        }
    }
}

/// `(X, Z)` expansion, recurrence terms, differential formula and ODE for one level row.
pub fn level_checks(row: &str, g: &Poly, h: &Poly, spec: &RecurrenceSpec, m: &LevelModular, order: usize) -> Vec<Check> {
    let (x, z) = match build_xz(m, order) {
        Ok(v) => v,
        Err(e) => return vec![Check::fail(row, "xz", e.to_string())],
    };
    let mut out = vec![Check::ok(row, "xz")];
    let terms = match (expansion_coefficients(&z, &x, order), spec.generate(order)) {
        (Ok(c), Ok(t)) => match c.iter().zip(&t).position(|(a, b)| a != b) {
            None => Check::ok(row, "terms"),
            Some(n) => Check::fail(row, "terms", format!("T({n}) = {} but the q-series gives {}", t[n], c[n])),
        },
        (Err(e), _) | (_, Err(e)) => Check::fail(row, "terms", e.to_string()),
    };
    out.push(terms);
    out.push(Check::from_identity(row, "diff", verify_diff_formula(g, &x, &z, order)));
    out.push(Check::from_identity(row, "ode", verify_ode(h, &x, &z, order)));
    out
}

/// Checks appropriate to a catalog entry's modular data.
pub fn entry_checks(e: &CatalogEntry, order: usize) -> Vec<Check> {
    let row = e.key.as_str();
    let spec = e.recurrence();
    match &e.modular {
        Some(Modular::Level(m)) => {
            let (g, h) = e.gh.as_ref().expect("level rows carry G and H");
            level_checks(row, g, h, &spec, m, order)
        }
        Some(Modular::WeightOne(m)) => {
            let [a, _, c] = e.abc.as_ref().expect("weight-one rows carry a triple");
            let r = spec.generate(order).and_then(|t| verify_weight_one(m, &t, a, c, order));
            vec![Check::from_identity(row, "weight-one", r)]
        }
        Some(Modular::WeightTwo(m)) => {
            let r = spec.generate(order).and_then(|t| verify_weight_two(m, &t, order));
            vec![Check::from_identity(row, "weight-two", r)]
        }
        None => Vec::new(),
    }
}

/// Checks a user definition against the modular data of the catalog row it names.
///
/// The row is the definition's `name` when that is a catalog key, else `level<level>`.
pub fn def_checks(def: &SequenceDef, order: usize) -> Result<Vec<Check>> {
    let entry = catalog::get_entry(&def.name).or_else(|e| match &def.level {
        Some(l) => catalog::get_entry(&format!("level{l}")),
        None => Err(e),
    })?;
    let Some(Modular::Level(m)) = &entry.modular else {
        return Err(aperylike::Error::Invalid(format!("{} has no (X, Z) data", entry.key)));
    };
    let (g, h) = def
        .gh()?
        .ok_or_else(|| aperylike::Error::Invalid("definition needs G and H".into()))?;
    let spec = def.to_recurrence()?;
    Ok(level_checks(&def.name, &g, &h, &spec, m, order))
}

/// Every catalog entry with modular data.
pub fn catalog_checks(order: usize) -> Vec<Check> {
    let entries: Vec<&CatalogEntry> = catalog::all_entries().iter().filter(|e| e.modular.is_some()).collect();
    entries.par_iter().map(|e| entry_checks(e, order)).collect::<Vec<_>>().concat()
}

/// The identity bank.
pub fn identity_checks(order: usize) -> Vec<Check> {
    identity_names()
        .par_iter()
        .map(|n| Check::from_identity(n, "identity", verify_identity(n, order)))
        .collect()
}

/// ASZ and CTYZ identities for the sporadic triples.
pub fn clausen_checks(n: usize) -> Vec<Check> {
    catalog::all_entries()
        .iter()
        .filter(|e| e.kind == catalog::EntryKind::Weight1)
        .flat_map(|e| {
            let [a, b, c] = e.abc.as_ref().unwrap();
            [
                Check::from_series(&e.key, "asz", verify_asz(a, b, c, n)),
                Check::from_series(&e.key, "ctyz", verify_ctyz(a, b, c, n)),
            ]
        })
        .collect()
}

/// Independence of the generating function from the special parameter values.
pub fn gf_checks(n: usize) -> Vec<Check> {
    [14, 15]
        .iter()
        .map(|&level| {
            let row = format!("level{level}-family");
            match verify_gf_independence(level, n) {
                Ok(r) if r.passed => Check::ok(&row, "gf"),
                Ok(r) => Check::fail(&row, "gf", format!("mismatch {:?}", r.first_mismatch)),
                Err(e) => Check::fail(&row, "gf", e.to_string()),
            }
        })
        .collect()
}

/// Everything: catalog rows, identity bank, Clausen-type identities, generating functions.
pub fn full_sweep(order: usize) -> Vec<Check> {
    let mut v = catalog_checks(order);
    v.extend(identity_checks(order));
    v.extend(clausen_checks(order));
    v.extend(gf_checks(order));
    v
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
