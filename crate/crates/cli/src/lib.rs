//! Command implementations behind the `aperylike` binary.
//!
//! Every command returns a [`RunReport`]; the binary only parses arguments,
//! prints the report and maps its outcome to an exit code.

pub mod commands;
pub mod report;
pub mod reproduce;
pub mod sweep;

use aperylike::catalog::{get_entry, SequenceDef};
use aperylike::{Error, RecurrenceSpec, Result};

pub use report::{Outcome, RunReport};

/// Environment variable holding the default working precision in digits.
pub const DIGITS_ENV: &str = "APERY_DIGITS";

/// Working precision from [`DIGITS_ENV`], else the library default.
pub fn default_digits() -> usize {
    std::env::var(DIGITS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(aperylike::bigfloat::DEFAULT_DIGITS)
}

/// A sequence named by catalog key or loaded from a definition file.
#[derive(Clone, Debug)]
pub struct SeqRef {
    pub name: String,
    pub def: SequenceDef,
}

impl SeqRef {
    pub fn from_key(key: &str) -> Result<Self> {
        let e = get_entry(key)?;
        Ok(SeqRef { name: e.key.clone(), def: e.to_def() })
    }

    pub fn from_file(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
        let def = SequenceDef::from_json(&text)?;
        Ok(SeqRef { name: def.name.clone(), def })
    }

    /// Exactly one of `key` and `file` must be given.
    pub fn resolve(key: Option<&str>, file: Option<&str>) -> Result<Self> {
        match (key, file) {
            (Some(k), None) => SeqRef::from_key(k),
            (None, Some(f)) => SeqRef::from_file(f),
            _ => Err(Error::Invalid("give exactly one of --seq and --def".into())),
        }
    }

    pub fn recurrence(&self) -> Result<RecurrenceSpec> {
        self.def.to_recurrence()
    }
}

/// Parses `"2,3,5"` or an inclusive range `"2..101"` into the primes it names.
pub fn parse_primes(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::Parse(format!("bad prime list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        return Ok(aperylike::congruence::primes_in(a, b + 1));
    }
    let v: Vec<u64> = s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
    if v.iter().any(|&p| aperylike::congruence::primes_in(p, p + 1).is_empty()) {
        return Err(Error::Parse(format!("{s:?} contains a non-prime")));
    }
    Ok(v)
}

/// Runs `f` on a pool with `jobs` threads, or on the global pool.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().expect("thread pool").install(f),
        None => f(),
    }
}
