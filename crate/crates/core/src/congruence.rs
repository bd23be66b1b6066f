//! Lucas congruences, supercongruences and exception patterns.
//!
//! Residues are taken from exact terms. Elements of `Z[sqrt d]` are reduced
//! componentwise, so `a + b sqrt(d) = 0 mod m` means `m | a` and `m | b`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::recurrence::RecurrenceSpec;
use crate::rings::{RingElement, RingTag};

/// Residue `a + b sqrt(d)` modulo `m`, components in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Residue {
    pub a: u64,
    pub b: u64,
}

impl Residue {
    pub const ZERO: Residue = Residue { a: 0, b: 0 };
    pub const ONE: Residue = Residue { a: 1, b: 0 };

    pub fn new(a: i64, b: i64, m: u64) -> Self {
        Residue { a: a.rem_euclid(m as i64) as u64, b: b.rem_euclid(m as i64) as u64 }
    }
}

/// Arithmetic in `Z[sqrt d] / (m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    pub modulus: u64,
    pub d: i64,
}

impl ResidueRing {
    pub fn add(&self, x: Residue, y: Residue) -> Residue {
        let m = self.modulus as u128;
        Residue { a: ((x.a as u128 + y.a as u128) % m) as u64, b: ((x.b as u128 + y.b as u128) % m) as u64 }
    }

    pub fn sub(&self, x: Residue, y: Residue) -> Residue {
        let m = self.modulus as u128;
        Residue {
            a: ((x.a as u128 + m - y.a as u128) % m) as u64,
            b: ((x.b as u128 + m - y.b as u128) % m) as u64,
        }
    }

    pub fn mul(&self, x: Residue, y: Residue) -> Residue {
        let m = self.modulus as u128;
        let d = (self.d.rem_euclid(self.modulus as i64)) as u128;
        let bb = (x.b as u128 * y.b as u128) % m;
        let a = (x.a as u128 * y.a as u128 + d * bb) % m;
        let b = (x.a as u128 * y.b as u128 + x.b as u128 * y.a as u128) % m;
        Residue { a: a as u64, b: b as u64 }
    }
}

fn reduce_big(x: &BigInt, m: &BigInt) -> u64 {
    x.mod_floor(m).to_u64().expect("residue fits in u64")
}

/// Residue of an exact term; rationals must be `m`-integral.
pub fn reduce(x: &RingElement, m: u64) -> Result<Residue> {
    let mb = BigInt::from(m);
    match x {
        RingElement::Int(v) => Ok(Residue { a: reduce_big(v, &mb), b: 0 }),
        RingElement::Quad(q) if q.a.is_integer() && q.b.is_integer() => {
            Ok(Residue { a: reduce_big(q.a.numer(), &mb), b: reduce_big(q.b.numer(), &mb) })
        }
        _ => {
            let (a, b) = x.reduce_mod(&mb)?;
            Ok(Residue { a: a.to_u64().unwrap(), b: b.to_u64().unwrap() })
        }
    }
}

/// Residues of `T(n)` modulo `p^e` at a set of indices.
#[derive(Clone, Debug)]
pub struct ResidueTable {
    pub p: u64,
    pub e: u32,
    pub ring: ResidueRing,
    residues: BTreeMap<usize, Residue>,
}

/// Indices whose residues a table keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    /// `0..=n`.
    Range(usize),
    /// `0..=n` together with `p k` for `k <= n`.
    Multiples(usize),
}

impl Coverage {
    fn top(&self, p: u64) -> usize {
        match *self {
            Coverage::Range(n) => n,
            Coverage::Multiples(n) => n * p as usize,
        }
    }

    fn wants(&self, i: usize, p: u64) -> bool {
        match *self {
            Coverage::Range(n) => i <= n,
            Coverage::Multiples(n) => i <= n || i % p as usize == 0,
        }
    }
}

impl ResidueTable {
    pub fn modulus(&self) -> u64 {
        self.ring.modulus
    }

    pub fn get(&self, n: usize) -> Result<Residue> {
        self.residues
            .get(&n)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("residue of T({n}) mod {}^{} not in table", self.p, self.e)))
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

fn field_d(ring: RingTag) -> i64 {
    match ring {
        RingTag::Quad(d) => d,
        _ => 0,
    }
}

/// Builds several residue tables from one exact term stream.
pub fn residue_tables(spec: &RecurrenceSpec, requests: &[(u64, u32, Coverage)]) -> Result<Vec<ResidueTable>> {
    let d = field_d(spec.ring);
    let mut tables: Vec<ResidueTable> = requests
        .iter()
        .map(|&(p, e, _)| {
            let modulus = p.checked_pow(e).filter(|&m| m < 1 << 62).expect("modulus fits in 62 bits");
            ResidueTable { p, e, ring: ResidueRing { modulus, d }, residues: BTreeMap::new() }
        })
        .collect();
    let top = requests.iter().map(|(p, _, c)| c.top(*p)).max().unwrap_or(0);
    for (i, t) in spec.terms().take(top + 1).enumerate() {
        let t = t?;
        for (tab, (p, _, cov)) in tables.iter_mut().zip(requests) {
            if cov.wants(i, *p) {
                tab.residues.insert(i, reduce(&t, tab.ring.modulus)?);
            }
        }
    }
    Ok(tables)
}

pub fn residue_table(spec: &RecurrenceSpec, p: u64, e: u32, coverage: Coverage) -> Result<ResidueTable> {
    Ok(residue_tables(spec, &[(p, e, coverage)])?.remove(0))
}

/// Outcome of a congruence scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub seq: String,
    pub p: u64,
    pub e: u32,
    pub n_max: usize,
    /// Indices where the congruence holds, excluding pattern members.
    pub passes: usize,
    /// Indices outside the exception pattern where it fails.
    pub violations: Vec<usize>,
    /// Pattern members that fail, as the pattern predicts.
    pub pattern_hits: Vec<usize>,
    /// Pattern members that hold anyway.
    pub unexpected_passes: Vec<usize>,
}

impl CongruenceReport {
    fn new(seq: &str, p: u64, e: u32, n_max: usize) -> Self {
        CongruenceReport {
            seq: seq.to_string(),
            p,
            e,
            n_max,
            passes: 0,
            violations: Vec::new(),
            pattern_hits: Vec::new(),
            unexpected_passes: Vec::new(),
        }
    }

    /// No violations; with `strict` also no pattern member passing.
    pub fn holds(&self, strict: bool) -> bool {
        self.violations.is_empty() && (!strict || self.unexpected_passes.is_empty())
    }
}

/// Base-`p` digits of `n`, least significant first.
pub fn digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut v = Vec::new();
    while n > 0 {
        v.push(n % p);
        n /= p;
    }
    v
}

/// `T(n) = prod T(n_i) mod p` over the base-`p` digits, for `0 <= n <= n_max`.
pub fn lucas_check(seq: &str, table: &ResidueTable, n_max: usize) -> Result<CongruenceReport> {
    if table.e != 1 {
        return Err(Error::Invalid("Lucas check needs a table modulo p".into()));
    }
    let mut rep = CongruenceReport::new(seq, table.p, 1, n_max);
    let r = table.ring;
    for n in 0..=n_max {
        let lhs = table.get(n)?;
        let mut rhs = Residue::ONE;
        for dgt in digits(n as u64, table.p) {
            rhs = r.mul(rhs, table.get(dgt as usize)?);
        }
        if lhs == rhs {
            rep.passes += 1;
        } else {
            rep.violations.push(n);
        }
    }
    Ok(rep)
}

/// One family of exceptional indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PatternAtom {
    Fixed(u64),
    /// `offset + mult * base^j` for `j >= min_exp`.
    Power { offset: u64, mult: u64, base: u64, min_exp: u32 },
    /// `n - shift` has every base-`base` digit in `allowed`.
    Digits { shift: u64, base: u64, allowed: Vec<u64> },
    /// `n mod modulus` lies in `classes`.
    Classes { modulus: u64, classes: Vec<u64> },
}

impl PatternAtom {
    pub fn contains(&self, n: u64) -> bool {
        match self {
            PatternAtom::Fixed(k) => *k == n,
            PatternAtom::Power { offset, mult, base, min_exp } => {
                if n < *offset || *mult == 0 {
                    return false;
                }
                let r = n - offset;
                if r % mult != 0 {
                    return false;
                }
                let mut v = r / mult;
                let mut j = 0;
                while v > 1 && v % base == 0 {
                    v /= base;
                    j += 1;
                }
                v == 1 && j >= *min_exp
            }
            PatternAtom::Digits { shift, base, allowed } => {
                n >= *shift && digits(n - shift, *base).iter().all(|d| allowed.contains(d))
            }
            PatternAtom::Classes { modulus, classes } => classes.contains(&(n % modulus)),
        }
    }
}

/// Union of [`PatternAtom`]s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionPattern {
    pub name: String,
    pub atoms: Vec<PatternAtom>,
}

impl ExceptionPattern {
    pub fn new(name: &str, atoms: Vec<PatternAtom>) -> Self {
        ExceptionPattern { name: name.to_string(), atoms }
    }

    pub fn contains(&self, n: u64) -> bool {
        self.atoms.iter().any(|a| a.contains(n))
    }
}

/// Expected value of `T(pn) - T(n)` modulo `p^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Expected {
    Zero,
    /// Offsets by class of `n` modulo `modulus`; unlisted classes expect zero.
    ByClass { modulus: u64, map: Vec<(Vec<u64>, Residue)> },
    /// `c n`.
    Linear(i64),
}

impl Expected {
    pub fn at(&self, n: u64, r: &ResidueRing) -> Residue {
        match self {
            Expected::Zero => Residue::ZERO,
            Expected::ByClass { modulus, map } => map
                .iter()
                .find(|(cls, _)| cls.contains(&(n % modulus)))
                .map(|(_, v)| *v)
                .unwrap_or(Residue::ZERO),
            Expected::Linear(c) => {
                let m = r.modulus as i128;
                Residue { a: ((*c as i128 * n as i128).rem_euclid(m)) as u64, b: 0 }
            }
        }
    }
}

/// Checks `T(pn) - T(n) = expected(n) mod p^e` for `1 <= n <= n_max`, skipping pattern members.
pub fn structured_congruence_check(
    seq: &str,
    table: &ResidueTable,
    n_max: usize,
    expected: &Expected,
    pattern: Option<&ExceptionPattern>,
) -> Result<CongruenceReport> {
    let mut rep = CongruenceReport::new(seq, table.p, table.e, n_max);
    let r = table.ring;
    for n in 1..=n_max {
        let diff = r.sub(table.get(table.p as usize * n)?, table.get(n)?);
        let ok = diff == expected.at(n as u64, &r);
        let member = pattern.is_some_and(|pt| pt.contains(n as u64));
        match (member, ok) {
            (false, true) => rep.passes += 1,
            (false, false) => rep.violations.push(n),
            (true, false) => rep.pattern_hits.push(n),
            (true, true) => rep.unexpected_passes.push(n),
        }
    }
    Ok(rep)
}

/// Checks `T(pn) = T(n) mod p^e` for `1 <= n <= n_max`, skipping pattern members.
pub fn supercongruence_check(
    seq: &str,
    table: &ResidueTable,
    n_max: usize,
    pattern: Option<&ExceptionPattern>,
) -> Result<CongruenceReport> {
    structured_congruence_check(seq, table, n_max, &Expected::Zero, pattern)
}

/// `c(p) = #{1 <= n <= n_max : T(pn) = T(n) mod p^2}` for each prime, from one shared stream.
pub fn scan_c_counts(spec: &RecurrenceSpec, primes: &[u64], n_max: usize) -> Result<Vec<(u64, usize)>> {
    let requests: Vec<(u64, u32, Coverage)> = primes.iter().map(|&p| (p, 2, Coverage::Multiples(n_max))).collect();
    let tables = residue_tables(spec, &requests)?;
    tables
        .par_iter()
        .map(|t| Ok((t.p, supercongruence_check("", t, n_max, None)?.passes)))
        .collect()
}

/// A congruence statement for a catalog sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture {
    pub name: String,
    pub seq: String,
    pub p: u64,
    pub e: u32,
    pub expected: Expected,
    pub pattern: Option<ExceptionPattern>,
    /// Pattern members are claimed to fail ("if and only if" statements).
    pub strict: bool,
}

fn pow_atom(offset: u64, mult: u64, base: u64, min_exp: u32) -> PatternAtom {
    PatternAtom::Power { offset, mult, base, min_exp }
}

fn classes(modulus: u64, c: &[u64]) -> PatternAtom {
    PatternAtom::Classes { modulus, classes: c.to_vec() }
}

fn by_class(modulus: u64, m: u64, map: &[(&[u64], i64, i64)]) -> Expected {
    Expected::ByClass {
        modulus,
        map: map.iter().map(|(c, a, b)| (c.to_vec(), Residue::new(*a, *b, m))).collect(),
    }
}

/// The supercongruence statements for levels 11, 14, 15 and 24.
pub fn conjectures() -> Vec<Conjecture> {
    use PatternAtom::Fixed;
    let c = |name: &str, seq: &str, p: u64, e: u32, expected: Expected, pattern: Option<ExceptionPattern>, strict| {
        Conjecture { name: name.into(), seq: seq.into(), p, e, expected, pattern, strict }
    };
    let pat = |name: &str, atoms| Some(ExceptionPattern::new(name, atoms));
    let mut v = Vec::new();
    for p in [2, 59] {
        v.push(c(&format!("level11-p{p}"), "level11", p, 2, Expected::Zero, None, false));
    }
    v.push(c(
        "level11-2^6",
        "level11",
        2,
        6,
        Expected::Zero,
        pat("1, 1+2^j, 1+3*2^j (j >= 1)", vec![Fixed(1), pow_atom(1, 1, 2, 0), pow_atom(1, 3, 2, 1)]),
        true,
    ));
    v.push(c("level11-3^2", "level11", 3, 2, Expected::Linear(3), None, false));
    v.push(c("level11-5^2", "level11", 5, 2, Expected::Zero, pat("5 does not divide n", vec![classes(5, &[1, 2, 3, 4])]), true));
    for p in [2, 17] {
        v.push(c(&format!("14A-p{p}"), "14A", p, 2, Expected::Zero, None, false));
    }
    for p in [2, 7, 17] {
        v.push(c(&format!("14B-p{p}"), "14B", p, 2, Expected::Zero, None, false));
    }
    v.push(c("14A-2^4", "14A", 2, 4, by_class(4, 16, &[(&[1, 2], 8, 0)]), None, false));
    v.push(c("14B-2^4", "14B", 2, 4, by_class(2, 16, &[(&[1], 12, 0)]), None, false));
    for s in ["14C", "14Cbar"] {
        v.push(c(
            &format!("{s}-2^6"),
            s,
            2,
            6,
            Expected::Zero,
            pat("1, 2, 3, 3*2^j+1", vec![Fixed(1), Fixed(2), Fixed(3), pow_atom(1, 3, 2, 0)]),
            true,
        ));
    }
    v.push(c("14A-7^2", "14A", 7, 2, Expected::Zero, pat("n = 1, 2, 3 mod 7", vec![classes(7, &[1, 2, 3])]), false));
    v.push(c("15A-2^3", "15A", 2, 3, by_class(2, 8, &[(&[1], 4, 0)]), None, false));
    v.push(c("15B-2^5", "15B", 2, 5, by_class(4, 32, &[(&[2], 16, 0)]), None, false));
    v.push(c("15C-2^3", "15C", 2, 3, Expected::Zero, pat("1, 1+2^j", vec![Fixed(1), pow_atom(1, 1, 2, 0)]), true));
    v.push(c(
        "15A-3^3",
        "15A",
        3,
        3,
        Expected::Zero,
        pat("1, 2, 1+3^j, 1+2*3^j (j >= 1)", vec![Fixed(1), Fixed(2), pow_atom(1, 1, 3, 1), pow_atom(1, 2, 3, 1)]),
        true,
    ));
    v.push(c(
        "15B-3^3",
        "15B",
        3,
        3,
        Expected::Zero,
        pat("1, 1+3^j, 1+2*3^j (j >= 1)", vec![Fixed(1), pow_atom(1, 1, 3, 1), pow_atom(1, 2, 3, 1)]),
        true,
    ));
    v.push(c("15C-3", "15C", 3, 1, by_class(8, 3, &[(&[3, 5, 6], 0, 1), (&[1, 2, 7], 0, 2)]), None, false));
    v.push(c("15B-5^2", "15B", 5, 2, Expected::Zero, None, false));
    let digits01 = || pat("base-5 digits of n-1 in {0, 1}", vec![PatternAtom::Digits { shift: 1, base: 5, allowed: vec![0, 1] }]);
    v.push(c("15A-5^2", "15A", 5, 2, Expected::Zero, digits01(), false));
    v.push(c("15C-5^2", "15C", 5, 2, Expected::Zero, digits01(), false));
    for p in [2, 89] {
        v.push(c(&format!("24-p{p}"), "24", p, 2, Expected::Zero, None, false));
    }
    v.push(c("24-2^5", "24", 2, 5, Expected::Zero, pat("1, 1+2^j", vec![Fixed(1), pow_atom(1, 1, 2, 0)]), true));
    v.push(c("24-3^2", "24", 3, 2, by_class(6, 9, &[(&[4, 5], 3, 0), (&[1, 2], 6, 0)]), None, false));
    v
}

/// Runs a statement against exact terms for `1 <= n <= n_max`.
pub fn check_conjecture(c: &Conjecture, n_max: usize) -> Result<CongruenceReport> {
    let spec = crate::catalog::get_entry(&c.seq)?.recurrence();
    let table = residue_table(&spec, c.p, c.e, Coverage::Multiples(n_max))?;
    let mut rep = structured_congruence_check(&c.seq, &table, n_max, &c.expected, c.pattern.as_ref())?;
    rep.seq = c.seq.clone();
    Ok(rep)
}

/// Primes `lo <= p < hi`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..hi).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

/// Lucas checks for several primes from one stream, run for `0 <= n <= n_max`.
pub fn lucas_scan(seq: &str, spec: &RecurrenceSpec, primes: &[u64], n_max: usize) -> Result<Vec<CongruenceReport>> {
    let requests: Vec<(u64, u32, Coverage)> = primes.iter().map(|&p| (p, 1, Coverage::Range(n_max))).collect();
    let tables = residue_tables(spec, &requests)?;
    tables.par_iter().map(|t| lucas_check(seq, t, n_max)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_entry;

    #[test]
    fn patterns() {
        let p = ExceptionPattern::new("x", vec![PatternAtom::Fixed(1), pow_atom(1, 1, 2, 0), pow_atom(1, 3, 2, 1)]);
        let members: Vec<u64> = (1..30).filter(|&n| p.contains(n)).collect();
        assert_eq!(members, vec![1, 2, 3, 5, 7, 9, 13, 17, 25]);
        let d = PatternAtom::Digits { shift: 1, base: 5, allowed: vec![0, 1] };
        assert!(d.contains(1) && d.contains(2) && d.contains(7) && !d.contains(3));
    }

    #[test]
    fn small_cases() {
        let spec = get_entry("level11").unwrap().recurrence();
        let t = residue_table(&spec, 5, 1, Coverage::Range(7)).unwrap();
        assert_eq!(t.get(7).unwrap(), Residue { a: 2, b: 0 });
        let rep = lucas_check("level11", &t, 7).unwrap();
        assert!(rep.violations.is_empty());
        let t = residue_table(&spec, 2, 2, Coverage::Multiples(1)).unwrap();
        assert!(supercongruence_check("level11", &t, 1, None).unwrap().violations.is_empty());
        let t = residue_table(&spec, 2, 6, Coverage::Multiples(1)).unwrap();
        assert_eq!(supercongruence_check("level11", &t, 1, None).unwrap().violations, vec![1]);
        let a = get_entry("apery").unwrap().recurrence();
        let t = residue_table(&a, 5, 3, Coverage::Multiples(1)).unwrap();
        assert!(supercongruence_check("apery", &t, 1, None).unwrap().violations.is_empty());
    }

    #[test]
    fn quadratic_residues() {
        let r = ResidueRing { modulus: 7, d: 2 };
        let x = reduce(&RingElement::quad(2, -4, 4), 7).unwrap();
        assert_eq!(x, Residue { a: 3, b: 4 });
        // (-4 + 4 sqrt 2)^2 = 48 - 32 sqrt 2
        let sq = reduce(&RingElement::quad(2, 48, -32), 7).unwrap();
        assert_eq!(r.mul(x, x), sq);
    }
}
