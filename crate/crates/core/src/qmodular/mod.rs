//! Truncated q-expansions of eta quotients, theta series and Eisenstein
//! series, and the `(X, Z)` parametrisations built from them.
//!
//! A [`QExpansion`] is `q^offset (c_0 + c_1 q + ... + c_{L-1} q^{L-1}) + O(q^{offset + L})`
//! with `c_0 != 0` unless the series is zero. Precision is tracked as the
//! absolute exponent of the error term.

mod identities;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rings::RingElement;

pub use identities::{identity_names, verify_identity};

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn lattice_gap(hi: &BigRational, lo: &BigRational) -> Result<usize> {
    let d = hi - lo;
    if !d.is_integer() || d.is_negative() {
        return Err(Error::QSeries(format!("exponents {hi} and {lo} are not on a common lattice")));
    }
    d.to_integer().to_usize().ok_or_else(|| Error::QSeries("exponent gap too large".into()))
}

/// Truncated Laurent-Puiseux series in `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion {
    offset: BigRational,
    coeffs: Vec<RingElement>,
}

impl QExpansion {
    /// Builds `q^offset * sum coeffs[i] q^i`, known to `O(q^{offset + len})`.
    pub fn new(offset: BigRational, coeffs: Vec<RingElement>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        let offset = offset + BigRational::from_integer(lead.into());
        let coeffs = coeffs.into_iter().skip(lead).map(RingElement::normalized).collect();
        QExpansion { offset, coeffs }
    }

    pub fn from_ints(offset: BigRational, c: &[i64]) -> Self {
        Self::new(offset, c.iter().map(|&x| RingElement::from(x)).collect())
    }

    /// `O(q^prec)`.
    pub fn zero(prec: BigRational) -> Self {
        QExpansion { offset: prec, coeffs: Vec::new() }
    }

    /// The constant `c`, known to `O(q^prec)`.
    pub fn constant(c: RingElement, prec: usize) -> Self {
        let mut v = vec![RingElement::zero(); prec];
        if prec > 0 {
            v[0] = c;
        }
        Self::new(BigRational::zero(), v)
    }

    /// Exponent of the leading term (the precision when the series is zero).
    pub fn offset(&self) -> &BigRational {
        &self.offset
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&RingElement> {
        self.coeffs.first()
    }

    /// Exponent of the error term.
    pub fn precision(&self) -> BigRational {
        &self.offset + BigRational::from_integer(self.coeffs.len().into())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^e`; `None` at or beyond the precision.
    pub fn coeff_at(&self, e: &BigRational) -> Option<RingElement> {
        if *e >= self.precision() {
            return None;
        }
        if e < &self.offset {
            return Some(RingElement::zero());
        }
        let d = e - &self.offset;
        if !d.is_integer() {
            return Some(RingElement::zero());
        }
        Some(self.coeffs[d.to_integer().to_usize()?].clone())
    }

    /// Coefficient of `q^k` for an integer exponent.
    pub fn coeff(&self, k: i64) -> Option<RingElement> {
        self.coeff_at(&BigRational::from_integer(k.into()))
    }

    /// Drops every term at or beyond `q^prec`.
    pub fn truncate(&self, prec: &BigRational) -> Self {
        if *prec >= self.precision() {
            return self.clone();
        }
        if *prec <= self.offset {
            return Self::zero(prec.clone());
        }
        let len = (prec - &self.offset).ceil().to_integer().to_usize().unwrap_or(0);
        Self::new(self.offset.clone(), self.coeffs[..len].to_vec())
    }

    fn combine(&self, other: &Self, sign: bool) -> Result<Self> {
        let prec = self.precision().min(other.precision());
        let base = self.offset.clone().min(other.offset.clone());
        let len = lattice_gap(&prec, &base)?;
        let da = lattice_gap(&self.offset, &base)?;
        let db = lattice_gap(&other.offset, &base)?;
        let get = |s: &Self, d: usize, i: usize| -> RingElement {
            i.checked_sub(d).and_then(|k| s.coeffs.get(k)).cloned().unwrap_or_else(RingElement::zero)
        };
        let out = (0..len)
            .map(|i| {
                let a = get(self, da, i);
                let b = get(other, db, i);
                if sign {
                    &a + &b
                } else {
                    &a - &b
                }
            })
            .collect();
        Ok(Self::new(base, out))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.precision() + &other.offset).min(other.precision() + &self.offset);
        let offset = &self.offset + &other.offset;
        let len = (&prec - &offset).to_integer().to_usize().unwrap_or(0);
        let mut out = vec![RingElement::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(offset, out)
    }

    pub fn scale(&self, c: &RingElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision());
        }
        Self::new(self.offset.clone(), self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.offset.clone(), self.coeffs.iter().map(|a| -a).collect())
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: &BigRational) -> Self {
        QExpansion { offset: &self.offset + e, coeffs: self.coeffs.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        let c0 = self.leading().ok_or(Error::DivisionByZero)?;
        let b0 = RingElement::one().try_div(c0)?;
        let len = self.coeffs.len();
        let mut out: Vec<RingElement> = Vec::with_capacity(len);
        out.push(b0.clone());
        for n in 1..len {
            let mut s = RingElement::zero();
            for k in 1..=n {
                let ck = &self.coeffs[k];
                if !ck.is_zero() {
                    s = &s + &(ck * &out[n - k]);
                }
            }
            out.push(-(&s * &b0));
        }
        Ok(Self::new(-self.offset.clone(), out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow_int(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::constant(RingElement::one(), base.coeffs.len().max(1));
        let mut b = base;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { b.clone() } else { acc.mul(&b) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// `f^r` for rational `r`; non-integer powers need leading coefficient 1.
    pub fn pow_rational(&self, r: &BigRational) -> Result<Self> {
        if r.is_integer() {
            let e = r.to_integer().to_i64().ok_or_else(|| Error::QSeries("exponent too large".into()))?;
            return self.pow_int(e);
        }
        match self.leading() {
            Some(c) if c.is_one() => {}
            _ => return Err(Error::QSeries("fractional power needs leading coefficient 1".into())),
        }
        let len = self.coeffs.len();
        let rr = RingElement::from(r.clone());
        let r1 = &rr + &RingElement::one();
        let mut h: Vec<RingElement> = Vec::with_capacity(len);
        h.push(RingElement::one());
        for n in 1..len {
            let mut s = RingElement::zero();
            for k in 1..=n {
                let fk = &self.coeffs[k];
                if fk.is_zero() {
                    continue;
                }
                let w = &r1.mul_int(&BigInt::from(k)) - &RingElement::from(n as i64);
                s = &s + &(&(&w * fk) * &h[n - k]);
            }
            h.push(s.div_int(&BigInt::from(n)));
        }
        Ok(Self::new(&self.offset * r, h))
    }

    /// `q d/dq`.
    pub fn q_deriv(&self) -> Self {
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = &self.offset + BigRational::from_integer(i.into());
                c * &RingElement::from(e)
            })
            .collect();
        let mut s = Self::new(self.offset.clone(), out);
        if s.is_zero() {
            s.offset = self.precision();
        }
        s
    }

    /// Substitutes `q -> q^k`.
    pub fn sub_q(&self, k: usize) -> Self {
        let len = self.coeffs.len() * k;
        let mut out = vec![RingElement::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        let off = &self.offset * BigRational::from_integer(k.into());
        if self.is_zero() {
            return Self::zero(off);
        }
        Self::new(off, out)
    }

    /// Substitutes `q -> -q`; needs an integer offset.
    pub fn negate_q(&self) -> Result<Self> {
        if !self.offset.is_integer() {
            return Err(Error::QSeries("q -> -q needs an integer offset".into()));
        }
        let o = self.offset.to_integer();
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (&o + BigInt::from(i)).is_odd() { -c } else { c.clone() })
            .collect();
        Ok(Self::new(self.offset.clone(), out))
    }

    /// `p(self)`; the argument must have a nonnegative integer offset.
    pub fn compose_poly(&self, p: &Poly) -> Result<Self> {
        if !self.offset.is_integer() || self.offset.is_negative() {
            return Err(Error::QSeries("polynomial argument needs a nonnegative integer offset".into()));
        }
        let prec = self.precision().to_integer().to_usize().unwrap_or(0);
        let mut acc = Self::zero(BigRational::from_integer(prec.into()));
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::constant(c.clone(), prec))?;
        }
        Ok(acc)
    }

    /// `sum_n terms[n] self^n`; exact up to `O(q^{offset * terms.len()})` beyond the series precision.
    pub fn compose_series(&self, terms: &[RingElement]) -> Result<Self> {
        self.compose_poly(&Poly::new(terms.to_vec()))
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &self.offset + BigRational::from_integer(i.into());
            parts.push(if e.is_zero() { format!("{c}") } else { format!("({c})*q^{e}") });
        }
        parts.push(format!("O(q^{})", self.precision()));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Result of comparing two expansions.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub passed: bool,
    /// Both sides were compared up to `O(q^checked_to)`.
    pub checked_to: BigRational,
    pub first_mismatch: Option<BigRational>,
}

/// Compares `a` and `b` to `O(q^order)`; errors if either side is less precise.
pub fn check_equal(a: &QExpansion, b: &QExpansion, order: usize) -> Result<IdentityCheck> {
    let m = BigRational::from_integer(order.into());
    for s in [a, b] {
        if s.precision() < m {
            return Err(Error::QSeries(format!("expansion known only to O(q^{})", s.precision())));
        }
    }
    let d = a.truncate(&m).sub(&b.truncate(&m))?;
    Ok(IdentityCheck {
        passed: d.is_zero(),
        checked_to: m,
        first_mismatch: if d.is_zero() { None } else { Some(d.offset().clone()) },
    })
}

/// `(q^a; q^step)_inf^exp = prod_{j >= 0} (1 - q^{a + j step})^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochFactor {
    pub a: u32,
    pub step: u32,
    pub exp: i32,
}

/// `q^q_power` times a product of [`PochFactor`]s.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaProduct {
    pub q_power: BigRational,
    pub factors: Vec<PochFactor>,
}

impl EtaProduct {
    /// `prod eta_N^e` over the given `(N, e)` pairs.
    pub fn eta(parts: &[(u32, i32)]) -> Self {
        let mut q_power = BigRational::zero();
        let mut factors = Vec::new();
        for &(n, e) in parts {
            q_power += rat(n as i64 * e as i64, 24);
            factors.push(PochFactor { a: n, step: n, exp: e });
        }
        EtaProduct { q_power, factors }
    }

    pub fn new(q_power: BigRational, factors: Vec<PochFactor>) -> Self {
        EtaProduct { q_power, factors }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        EtaProduct { q_power: &self.q_power + &other.q_power, factors }
    }

    pub fn pow(&self, e: i32) -> Self {
        EtaProduct {
            q_power: &self.q_power * BigRational::from_integer(e.into()),
            factors: self.factors.iter().map(|f| PochFactor { exp: f.exp * e, ..*f }).collect(),
        }
    }

    /// Expansion known to `O(q^prec)`.
    pub fn expand(&self, prec: &BigRational) -> QExpansion {
        if *prec <= self.q_power {
            return QExpansion::zero(prec.clone());
        }
        let len = (prec - &self.q_power).ceil().to_integer().to_usize().unwrap_or(0);
        QExpansion::new(self.q_power.clone(), product_coeffs(&self.factors, len).into_iter().map(RingElement::Int).collect())
    }
}

fn product_coeffs(factors: &[PochFactor], len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); len];
    if len == 0 {
        return c;
    }
    c[0] = BigInt::one();
    for f in factors {
        assert!(f.a > 0 && f.step > 0, "Pochhammer factor needs positive exponents");
        let mut m = f.a as usize;
        while m < len {
            for _ in 0..f.exp.unsigned_abs() {
                if f.exp > 0 {
                    for i in (m..len).rev() {
                        let t = c[i - m].clone();
                        c[i] -= t;
                    }
                } else {
                    for i in m..len {
                        let t = c[i - m].clone();
                        c[i] += t;
                    }
                }
            }
            m += f.step as usize;
        }
    }
    c
}

/// `eta_N = q^{N/24} prod (1 - q^{jN})`, relative coefficients `c_0..c_M`.
pub fn eta_expand(n: u32, order: usize) -> QExpansion {
    let e = EtaProduct::eta(&[(n, 1)]);
    let prec = &e.q_power + BigRational::from_integer((order + 1).into());
    e.expand(&prec)
}

/// Positive definite binary quadratic form `a j^2 + b j k + c k^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ThetaSpec {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 || 4 * a * c - b * b <= 0 {
            return Err(Error::QSeries(format!("form ({a},{b},{c}) is not positive definite")));
        }
        Ok(ThetaSpec { a, b, c })
    }

    /// `sum q^{a j^2 + b j k + c k^2}` through `q^order`.
    pub fn expand(&self, order: usize) -> QExpansion {
        let (a, b, c) = (self.a, self.b, self.c);
        let disc = (4 * a * c - b * b) as f64;
        let m = order as i64;
        let jb = ((4.0 * c as f64 * m as f64) / disc).sqrt() as i64 + 1;
        let kb = ((4.0 * a as f64 * m as f64) / disc).sqrt() as i64 + 1;
        let mut counts = vec![0i64; order + 1];
        for j in -jb..=jb {
            for k in -kb..=kb {
                let v = a * j * j + b * j * k + c * k * k;
                if v <= m {
                    counts[v as usize] += 1;
                }
            }
        }
        QExpansion::from_ints(BigRational::zero(), &counts)
    }
}

/// Theta series of a form, through `q^order`.
pub fn theta_expand(spec: ThetaSpec, order: usize) -> Result<QExpansion> {
    ThetaSpec::new(spec.a, spec.b, spec.c).map(|s| s.expand(order))
}

/// `phi(q) = sum_j q^{j^2}` through `q^order`.
pub fn phi(order: usize) -> QExpansion {
    let mut c = vec![0i64; order + 1];
    let mut j: i64 = 0;
    while (j * j) as usize <= order {
        c[(j * j) as usize] += if j == 0 { 1 } else { 2 };
        j += 1;
    }
    QExpansion::from_ints(BigRational::zero(), &c)
}

/// `psi(q) = sum_{j >= 0} q^{j(j+1)/2}` through `q^order`.
pub fn psi(order: usize) -> QExpansion {
    let mut c = vec![0i64; order + 1];
    let mut j: usize = 0;
    while j * (j + 1) / 2 <= order {
        c[j * (j + 1) / 2] += 1;
        j += 1;
    }
    QExpansion::from_ints(BigRational::zero(), &c)
}

/// Eisenstein-type series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EisensteinKind {
    /// `1 - 24 sum sigma_1(n) q^n`
    P,
    /// `1 + 240 sum sigma_3(n) q^n`
    Q,
    /// `1 - 504 sum sigma_5(n) q^n`
    R,
    /// `1 - sum_n (sum_{d | n} (d/13) d) q^n`
    U13,
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let r = BigInt::from(a).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Eisenstein series through `q^order`.
pub fn eisenstein_expand(kind: EisensteinKind, order: usize) -> QExpansion {
    let (c0, mult, weight): (i64, i64, Box<dyn Fn(i64) -> BigInt>) = match kind {
        EisensteinKind::P => (1, -24, Box::new(|d: i64| BigInt::from(d))),
        EisensteinKind::Q => (1, 240, Box::new(|d: i64| BigInt::from(d).pow(3))),
        EisensteinKind::R => (1, -504, Box::new(|d: i64| BigInt::from(d).pow(5))),
        EisensteinKind::U13 => (1, -1, Box::new(|d: i64| BigInt::from(legendre(d, 13) * d))),
    };
    let mut c = vec![RingElement::Int(BigInt::from(c0))];
    for n in 1..=order as i64 {
        let s: BigInt = (1..=n).filter(|d| n % d == 0).map(&weight).sum();
        c.push(RingElement::Int(s * mult));
    }
    QExpansion::new(BigRational::zero(), c)
}

/// Hauptmodul `w` feeding a level's `X`.
#[derive(Clone, Debug, PartialEq)]
pub enum WSpec {
    Eta(EtaProduct),
    /// `(1/432) (Q^{3/2} - R) / (Q^{3/2} + R)`
    Level1,
}

impl WSpec {
    pub fn expand(&self, prec: usize) -> Result<QExpansion> {
        match self {
            WSpec::Eta(e) => Ok(e.expand(&BigRational::from_integer(prec.into()))),
            WSpec::Level1 => {
                let q = eisenstein_expand(EisensteinKind::Q, prec - 1);
                let r = eisenstein_expand(EisensteinKind::R, prec - 1);
                let q32 = q.pow_rational(&rat(3, 2))?;
                let num = q32.sub(&r)?;
                let den = q32.add(&r)?;
                Ok(num.div(&den)?.scale(&RingElement::rational(1, 432)))
            }
        }
    }
}

/// Definition of `X` for a level.
#[derive(Clone, Debug, PartialEq)]
pub enum XSpec {
    /// `X = w / den(w)`
    Hauptmodul { w: WSpec, den: Poly },
    /// `X = (coeff * numer / sum thetas)^power`
    ThetaQuotient { numer: EtaProduct, coeff: i64, thetas: Vec<ThetaSpec>, power: u32 },
}

/// `Z = numer / X^x_power`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSpec {
    pub numer: EtaProduct,
    pub x_power: BigRational,
}

/// Modular data of a level row.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelModular {
    pub x: XSpec,
    pub z: ZSpec,
}

/// Expands `X` to `O(q^prec)`.
pub fn build_x(spec: &XSpec, prec: usize) -> Result<QExpansion> {
    match spec {
        XSpec::Hauptmodul { w, den } => {
            let w = w.expand(prec)?;
            w.div(&w.compose_poly(den)?)
        }
        XSpec::ThetaQuotient { numer, coeff, thetas, power } => {
            let num = numer.expand(&BigRational::from_integer(prec.into())).scale(&RingElement::from(*coeff));
            let mut den = QExpansion::zero(BigRational::from_integer(prec.into()));
            for t in thetas {
                den = den.add(&t.expand(prec - 1))?;
            }
            num.div(&den)?.pow_int(*power as i64)
        }
    }
}

/// Expands `(X, Z)` through `q^order`.
///
/// `X` must come out as `q + O(q^2)` and `Z` as `1 + O(q)`.
pub fn build_xz(m: &LevelModular, order: usize) -> Result<(QExpansion, QExpansion)> {
    let extra = m.z.x_power.ceil().to_integer().to_usize().unwrap_or(0) + 2;
    let prec = order + 1 + extra;
    let x = build_x(&m.x, prec)?;
    if x.offset() != &BigRational::one() || !x.leading().is_some_and(|c| c.is_one()) {
        return Err(Error::QSeries(format!("definition inconsistent: X = {}", x.truncate(&rat(4, 1)))));
    }
    let num = m.z.numer.expand(&BigRational::from_integer(prec.into()));
    let z = num.div(&x.pow_rational(&m.z.x_power)?)?;
    if !z.offset().is_zero() || !z.leading().is_some_and(|c| c.is_one()) {
        return Err(Error::QSeries(format!("definition inconsistent: Z = {}", z.truncate(&rat(3, 1)))));
    }
    let p = BigRational::from_integer((order + 1).into());
    let (x, z) = (x.truncate(&p), z.truncate(&p));
    if x.precision() < p || z.precision() < p {
        return Err(Error::QSeries("lost precision building X and Z".into()));
    }
    Ok((x, z))
}

/// Coefficients `T(0..=n_max)` of `Z = sum T(n) X^n`.
pub fn expansion_coefficients(z: &QExpansion, x: &QExpansion, n_max: usize) -> Result<Vec<RingElement>> {
    if x.offset() != &BigRational::one() {
        return Err(Error::QSeries("X must have valuation 1".into()));
    }
    if z.is_zero() || !z.offset().is_integer() || z.offset().is_negative() {
        return Err(Error::QSeries("Z must be a power series in q".into()));
    }
    let need = BigRational::from_integer((n_max + 1).into());
    if z.precision() < need {
        return Err(Error::QSeries(format!("Z known only to O(q^{})", z.precision())));
    }
    let x0 = x.leading().unwrap().clone();
    let mut rest = z.truncate(&need);
    let mut xn = QExpansion::constant(RingElement::one(), n_max + 1);
    let mut x0n = RingElement::one();
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let c = rest.coeff(n as i64).unwrap_or_else(RingElement::zero);
        let t = c.try_div(&x0n)?;
        if !t.is_zero() {
            rest = rest.sub(&xn.scale(&t))?;
        }
        out.push(t);
        xn = xn.mul(x);
        x0n = &x0n * &x0;
    }
    Ok(out)
}

/// Checks `(q dX/dq)^2 = Z^2 X^2 G(X)` to `O(q^order)`.
pub fn verify_diff_formula(g: &Poly, x: &QExpansion, z: &QExpansion, order: usize) -> Result<IdentityCheck> {
    let d = x.q_deriv();
    let lhs = d.mul(&d);
    let zx = z.mul(x);
    let rhs = zx.mul(&zx).mul(&x.compose_poly(g)?);
    check_equal(&lhs, &rhs, order)
}

/// Checks `h_den(X) (D^2 Z - (DZ)^2 / (2Z)) = h_num(X) Z` with `D = (1/Z) q d/dq`.
pub fn verify_ode_rational(
    h_num: &Poly,
    h_den: &Poly,
    x: &QExpansion,
    z: &QExpansion,
    order: usize,
) -> Result<IdentityCheck> {
    let dz = z.q_deriv().div(z)?;
    let d2z = dz.q_deriv().div(z)?;
    let corr = dz.mul(&dz).div(&z.scale(&RingElement::from(2)))?;
    let lhs = d2z.sub(&corr)?.mul(&x.compose_poly(h_den)?);
    let rhs = x.compose_poly(h_num)?.mul(z);
    check_equal(&lhs, &rhs, order)
}

/// Checks `D^2 Z - (DZ)^2 / (2Z) = H(X) Z` to `O(q^order)`.
pub fn verify_ode(h: &Poly, x: &QExpansion, z: &QExpansion, order: usize) -> Result<IdentityCheck> {
    verify_ode_rational(h, &Poly::one(), x, z, order)
}

/// Weight-one data `x`, `z` of a sporadic triple.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightOneModular {
    pub x: EtaProduct,
    pub z: EtaProduct,
}

/// Weight-two data `w`, `y` of a sporadic triple.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightTwoModular {
    pub w: EtaProduct,
    pub y: EtaProduct,
}

/// Checks `z = sum t(n) x^n` and `q dx/dq = z^2 x (1 - alpha x - gamma x^2)` to `O(q^order)`.
pub fn verify_weight_one(
    m: &WeightOneModular,
    t: &[RingElement],
    alpha: &RingElement,
    gamma: &RingElement,
    order: usize,
) -> Result<IdentityCheck> {
    let p = BigRational::from_integer((order + 1).into());
    let x = m.x.expand(&p);
    let z = m.z.expand(&p);
    if t.len() < order {
        return Err(Error::QSeries("not enough terms".into()));
    }
    let series = x.compose_series(&t[..order])?;
    let first = check_equal(&z, &series, order)?;
    if !first.passed {
        return Ok(first);
    }
    let poly = Poly::new(vec![RingElement::one(), -alpha, -gamma]);
    let rhs = z.mul(&z).mul(&x).mul(&x.compose_poly(&poly)?);
    check_equal(&x.q_deriv(), &rhs, order)
}

/// Checks `y = sum s(n) w^n` to `O(q^order)`.
pub fn verify_weight_two(m: &WeightTwoModular, s: &[RingElement], order: usize) -> Result<IdentityCheck> {
    let p = BigRational::from_integer((order + 1).into());
    let w = m.w.expand(&p);
    let y = m.y.expand(&p);
    if s.len() < order {
        return Err(Error::QSeries("not enough terms".into()));
    }
    check_equal(&y, &w.compose_series(&s[..order])?, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QExpansion) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.as_integer().unwrap().to_i64().unwrap()).collect()
    }

    #[test]
    fn eta_one() {
        let e = eta_expand(1, 7);
        assert_eq!(e.offset(), &rat(1, 24));
        assert_eq!(ints(&e), vec![1, -1, -1, 0, 0, 1, 0, 1]);
        let e2 = eta_expand(2, 4);
        assert_eq!(e2.offset(), &rat(1, 12));
        assert_eq!(ints(&e2), vec![1, 0, -1, 0, -1]);
        assert_eq!(EtaProduct::eta(&[(1, 24)]).q_power, rat(1, 1));
    }

    #[test]
    fn theta_counts() {
        let t = theta_expand(ThetaSpec { a: 1, b: 1, c: 3 }, 5).unwrap();
        // r(4): (+-2, 0); r(5): (1, 1), (-2, 1), (2, -1), (-1, -1).
        assert_eq!(ints(&t), vec![1, 2, 0, 4, 2, 4]);
        let t = theta_expand(ThetaSpec { a: 1, b: 0, c: 1 }, 2).unwrap();
        assert_eq!(ints(&t), vec![1, 4, 4]);
        assert_eq!(ints(&theta_expand(ThetaSpec { a: 2, b: 1, c: 3 }, 0).unwrap()), vec![1]);
        assert!(theta_expand(ThetaSpec { a: 1, b: 3, c: 1 }, 3).is_err());
    }

    #[test]
    fn eisenstein_heads() {
        assert_eq!(ints(&eisenstein_expand(EisensteinKind::P, 2)), vec![1, -24, -72]);
        assert_eq!(ints(&eisenstein_expand(EisensteinKind::Q, 1)), vec![1, 240]);
        assert_eq!(ints(&eisenstein_expand(EisensteinKind::R, 1)), vec![1, -504]);
    }

    #[test]
    fn rational_powers() {
        let f = QExpansion::from_ints(BigRational::zero(), &[1, 1, 0, 0]);
        let h = f.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(h.coeffs()[1], RingElement::rational(1, 2));
        assert_eq!(h.coeffs()[2], RingElement::rational(-1, 8));
        let one = f.pow_rational(&BigRational::zero()).unwrap();
        assert_eq!(one.coeffs()[0], RingElement::one());
        assert!(one.coeffs()[1..].iter().all(|c| c.is_zero()));
        let g = QExpansion::from_ints(BigRational::zero(), &[2, 1]);
        assert!(g.pow_rational(&rat(1, 2)).is_err());
    }

    #[test]
    fn precision_tracking() {
        let a = QExpansion::from_ints(rat(1, 1), &[1, 2, 3]);
        let b = QExpansion::from_ints(BigRational::zero(), &[1, 1, 1, 1, 1]);
        let p = a.mul(&b);
        assert_eq!(p.precision(), rat(4, 1));
        let d = a.sub(&a).unwrap();
        assert!(d.is_zero());
        assert_eq!(d.precision(), rat(4, 1));
        let inv = b.inv().unwrap();
        assert_eq!(ints(&inv), vec![1, -1, 0, 0, 0]);
    }

    #[test]
    fn trivial_expansion() {
        let z = QExpansion::constant(RingElement::one(), 6);
        let x = QExpansion::from_ints(rat(1, 1), &[1, 3, -2, 7, 1]);
        let t = expansion_coefficients(&z, &x, 4).unwrap();
        assert_eq!(t[0], RingElement::one());
        assert!(t[1..].iter().all(|c| c.is_zero()));
    }
}
