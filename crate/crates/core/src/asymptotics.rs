//! Asymptotics `T(n) ~ C n^alpha R^n (1 + b1/n)` from `(G, H)`.
//!
//! `R` and `b1` come from the smallest root of `G`; `alpha` is re-derived
//! from the recurrence; `C` is estimated from the terms by forward
//! differences. Exact values are returned whenever the smallest root lies in
//! a quadratic field that the coefficients of `G` live in.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::bigfloat::{bits_for_digits, Complex, Real, DEFAULT_DIGITS};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::recurrence::RecurrenceSpec;
use crate::rings::{sqrt_rational, RingElement};

/// Working precision and extrapolation settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionConfig {
    /// Decimal digits.
    pub digits: usize,
    /// Root iterations stop once corrections fall below `10^-tol_digits`.
    pub tol_digits: usize,
    /// Last term used by the extrapolation.
    pub terms: usize,
    /// Forward-difference order.
    pub diffs: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { digits: DEFAULT_DIGITS, tol_digits: DEFAULT_DIGITS - 10, terms: 2000, diffs: 8 }
    }
}

impl PrecisionConfig {
    pub fn with_digits(digits: usize) -> Self {
        PrecisionConfig { digits, tol_digits: digits.saturating_sub(10), ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.digits < 30 {
            return Err(Error::Asymptotics(format!("precision {} < 30 digits", self.digits)));
        }
        if self.terms <= 10 * self.diffs {
            return Err(Error::Asymptotics(format!("need N > 10 k, got N = {}, k = {}", self.terms, self.diffs)));
        }
        Ok(())
    }

    pub fn bits(&self) -> usize {
        bits_for_digits(self.digits)
    }

    fn tolerance(&self) -> Real {
        ten_to_minus(self.tol_digits, self.bits())
    }
}

fn ten_to_minus(k: usize, bits: usize) -> Real {
    Real::one(bits).div(&Real::from_i64(10, bits).powi(k))
}

fn c_poly(p: &Poly, bits: usize) -> Vec<Complex> {
    p.coeffs().iter().map(|c| Complex::from_ring(c, bits)).collect()
}

fn horner(c: &[Complex], z: &Complex) -> (Complex, Complex) {
    let bits = z.precision();
    let mut v = Complex::zero(bits);
    let mut d = Complex::zero(bits);
    for a in c.iter().rev() {
        d = d.mul(z).add(&v);
        v = v.mul(z).add(a);
    }
    (v, d)
}

/// All complex roots of `p` by Aberth iteration.
pub fn all_roots(p: &Poly, cfg: &PrecisionConfig) -> Result<Vec<Complex>> {
    let deg = p.degree().ok_or_else(|| Error::Asymptotics("zero polynomial".into()))?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let bits = cfg.bits();
    let c = c_poly(p, bits);
    let lead = c[deg].clone();
    // radius bound 1 + max |a_i / a_deg|
    let bound = c[..deg]
        .iter()
        .map(|a| a.abs().div(&lead.abs()).to_f64())
        .fold(0.0f64, f64::max)
        + 1.0;
    let mut z: Vec<Complex> = (0..deg)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            let r = bound * (0.5 + 0.3 * k as f64 / deg as f64);
            Complex::from_f64(r * t.cos(), r * t.sin(), bits)
        })
        .collect();
    let tol = cfg.tolerance();
    for _ in 0..2000 {
        let mut worst = Real::zero(bits);
        for k in 0..deg {
            let (v, d) = horner(&c, &z[k]);
            if v.is_zero() {
                continue;
            }
            let ratio = v.div(&d);
            let mut s = Complex::zero(bits);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    s = s.add(&z[k].sub(zj).inv());
                }
            }
            let w = ratio.div(&Complex::one(bits).sub(&ratio.mul(&s)));
            let scale = z[k].abs().to_f64().max(1.0);
            let rel = w.abs().div(&Real::from_f64(scale, bits));
            if rel.cmp(&worst).is_gt() {
                worst = rel;
            }
            z[k] = z[k].sub(&w);
        }
        if worst.cmp(&tol).is_lt() {
            return Ok(z);
        }
    }
    Err(Error::Asymptotics("root iteration did not converge".into()))
}

/// Margins that make the smallest root unique and simple.
#[derive(Clone, Debug, Serialize)]
pub struct RootCertificate {
    /// Roots as decimal strings, by increasing modulus.
    pub roots: Vec<String>,
    /// `|r_1| - |r_0|` for the two smallest moduli.
    pub modulus_gap: String,
    /// Distance from `r_0` to the nearest other root.
    pub separation: String,
    /// `|G(r_0)|`.
    pub residual: String,
}

/// Root of smallest modulus with its certificate.
pub fn smallest_root(g: &Poly, cfg: &PrecisionConfig) -> Result<(Complex, RootCertificate)> {
    if g.degree().unwrap_or(0) < 1 {
        return Err(Error::Asymptotics("G must have degree at least 1".into()));
    }
    if !g.coeff(0).is_one() {
        return Err(Error::Asymptotics("G(0) must be 1".into()));
    }
    let mut roots = all_roots(g, cfg)?;
    roots.sort_by(|a, b| a.abs().cmp(&b.abs()));
    let bits = cfg.bits();
    let tol = ten_to_minus(cfg.tol_digits / 2, bits);
    let r0 = roots[0].clone();
    let sep = roots[1..].iter().map(|r| r.sub(&r0).abs()).min_by(|a, b| a.cmp(b));
    let gap = roots.get(1).map(|r| r.abs().sub(&r0.abs()));
    if let Some(s) = &sep {
        if s.cmp(&tol).is_lt() {
            return Err(Error::Asymptotics("multiple root".into()));
        }
    }
    if let Some(gp) = &gap {
        if gp.cmp(&tol).is_lt() {
            return Err(Error::Asymptotics("non-unique minimal root".into()));
        }
    }
    let (res, _) = horner(&c_poly(g, bits), &r0);
    let cert = RootCertificate {
        roots: roots.iter().map(|r| r.to_decimal(25)).collect(),
        modulus_gap: gap.map(|x| x.to_sci(10)).unwrap_or_else(|| "inf".into()),
        separation: sep.map(|x| x.to_sci(10)).unwrap_or_else(|| "inf".into()),
        residual: res.abs().to_sci(5),
    };
    Ok((r0, cert))
}

/// Nearby fraction with denominator at most `max_den`, by continued fractions.
fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() <= 1e-11 * x.abs().max(1.0) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let f = y - a as f64;
        if f.abs() < 1e-300 {
            return None;
        }
        y = 1.0 / f;
    }
    None
}

fn try_eval(p: &Poly, x: &RingElement) -> Result<RingElement> {
    let mut acc = RingElement::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.try_mul(x)?.try_add(c)?;
    }
    Ok(acc)
}

fn is_exact_root(g: &Poly, x: &RingElement) -> bool {
    try_eval(g, x).map(|v| v.is_zero()).unwrap_or(false)
}

fn near(x: &RingElement, z: &Complex) -> bool {
    let (a, b) = x.to_f64_pair();
    let (c, d) = z.to_f64_pair();
    ((a - c).powi(2) + (b - d).powi(2)).sqrt() <= 1e-9 * (c.abs() + d.abs()).max(1e-3)
}

fn field_d(p: &Poly) -> Option<i64> {
    p.coeffs().iter().find_map(|c| c.parts().2)
}

/// Exact form of a numerically known root of `g`, when it is quadratic over `Q`.
pub fn recognize_root(g: &Poly, r0: &Complex, cfg: &PrecisionConfig) -> Option<RingElement> {
    let (re, im) = r0.to_f64_pair();
    let base = field_d(g);
    // rational, or rational over Q(i)
    if let (Some(a), true) = (rationalize(re, 1 << 24), im.abs() < 1e-12) {
        let x = RingElement::Rat(a).normalized();
        if is_exact_root(g, &x) {
            return Some(x);
        }
    }
    if let Some(d) = base.filter(|&d| d < 0) {
        let b = im / ((-d) as f64).sqrt();
        if let (Some(a), Some(b)) = (rationalize(re, 1 << 24), rationalize(b, 1 << 24)) {
            let x = RingElement::Quad(crate::rings::QuadElem::new(d, a, b)).normalized();
            if is_exact_root(g, &x) {
                return Some(x);
            }
        }
    }
    // pair r0 with a conjugate root of g or of its Galois conjugate
    let mut others = all_roots(g, cfg).ok()?;
    if base.is_some() {
        others.extend(all_roots(&g.conj(), cfg).ok()?);
    }
    for r1 in &others {
        let (s_re, s_im) = r0.add(r1).to_f64_pair();
        let (t_re, t_im) = r0.mul(r1).to_f64_pair();
        if s_im.abs() > 1e-12 || t_im.abs() > 1e-12 {
            continue;
        }
        let (Some(s), Some(t)) = (rationalize(s_re, 1 << 24), rationalize(t_re, 1 << 24)) else { continue };
        let disc = &s * &s - BigRational::from_integer(4.into()) * &t;
        if disc.numer().bits() + disc.denom().bits() > 60 {
            continue;
        }
        let sq = sqrt_rational(&disc);
        let s = RingElement::Rat(s).normalized();
        for cand in [s.try_add(&sq), s.try_sub(&sq)] {
            let Ok(c) = cand else { continue };
            let x = c.div_int(&BigInt::from(2));
            if near(&x, r0) && is_exact_root(g, &x) {
                return Some(x);
            }
        }
    }
    None
}

/// `R`, `alpha`, `b1` and the root data behind them.
#[derive(Clone, Debug)]
pub struct AsymptoticParams {
    pub r0: Complex,
    pub r: Complex,
    pub r_exact: Option<RingElement>,
    /// `alpha` from the `n^-1` balance of the recurrence.
    pub alpha: Complex,
    /// `-3/2` once `alpha` is confirmed to working precision.
    pub alpha_exact: Option<(i64, i64)>,
    pub b1: Complex,
    pub b1_exact: Option<RingElement>,
    pub certificate: RootCertificate,
}

/// Theta-operator data `(G*, G**)`.
fn theta_pair(g: &Poly) -> (Poly, Poly) {
    let g1 = g.theta();
    let g2 = g1.theta();
    (g1, g2)
}

/// `b1 = (16 H(r0) - G**(r0)) / (8 G*(r0))`.
fn b1_numeric(g: &Poly, h: &Poly, r0: &Complex) -> Result<Complex> {
    let bits = r0.precision();
    let (g1, g2) = theta_pair(g);
    let (gs, _) = horner(&c_poly(&g1, bits), r0);
    let (gss, _) = horner(&c_poly(&g2, bits), r0);
    let (hv, _) = horner(&c_poly(h, bits), r0);
    if gs.abs().to_f64() < 1e-30 {
        return Err(Error::Asymptotics("G*(r0) vanishes".into()));
    }
    Ok(hv.mul_i64(16).sub(&gss).div(&gs.mul_i64(8)))
}

fn b1_exact(g: &Poly, h: &Poly, r0: &RingElement) -> Option<RingElement> {
    let (g1, g2) = theta_pair(g);
    let num = try_eval(h, r0).ok()?.mul_int(&BigInt::from(16)).try_sub(&try_eval(&g2, r0).ok()?).ok()?;
    let den = try_eval(&g1, r0).ok()?.mul_int(&BigInt::from(8));
    num.try_div(&den).ok()
}

/// `alpha` from the recurrence: with `m = n + 1` and `T(m-j)/T(m) = r0^j (1 - alpha j/m + ...)`,
/// the top two powers of `m` give `sum A_j r0^j = 0` and `alpha = sum B_j r0^j / sum j A_j r0^j`.
pub fn derive_alpha(spec: &RecurrenceSpec, r0: &Complex) -> Result<(Complex, Real)> {
    let bits = r0.precision();
    let minus_one = RingElement::from(-1);
    let mut polys = vec![spec.leading.clone()];
    polys.extend(spec.rhs.iter().map(|p| p.neg()));
    let deg = spec.leading.degree().unwrap_or(0);
    if deg == 0 {
        return Err(Error::Asymptotics("constant leading coefficient".into()));
    }
    let mut top = Complex::zero(bits);
    let mut num = Complex::zero(bits);
    let mut den = Complex::zero(bits);
    let mut pw = Complex::one(bits);
    for (j, p) in polys.iter().enumerate() {
        let q = p.shift(&minus_one);
        let a = Complex::from_ring(&q.coeff(deg), bits).mul(&pw);
        let b = Complex::from_ring(&q.coeff(deg - 1), bits).mul(&pw);
        top = top.add(&a);
        num = num.add(&b);
        den = den.add(&a.mul_i64(j as i64));
        pw = pw.mul(r0);
    }
    Ok((num.div(&den), top.abs()))
}

/// `R`, `alpha` and `b1` for the sequence with data `(G, H)`.
pub fn asymptotic_params(g: &Poly, h: &Poly, cfg: &PrecisionConfig) -> Result<AsymptoticParams> {
    let (r0, certificate) = smallest_root(g, cfg)?;
    let bits = cfg.bits();
    let r = Complex::one(bits).div(&r0);
    let b1 = b1_numeric(g, h, &r0)?;
    let exact = recognize_root(g, &r0, cfg);
    let r_exact = exact.as_ref().and_then(|x| RingElement::one().try_div(x).ok());
    let b1_exact = exact.as_ref().and_then(|x| b1_exact(g, h, x));
    let ring = field_d(g).map(crate::rings::RingTag::Quad).unwrap_or(crate::rings::RingTag::Q);
    let spec = RecurrenceSpec::from_gh(g, h, ring)?;
    let (alpha, _) = derive_alpha(&spec, &r0)?;
    let tol = ten_to_minus(cfg.tol_digits / 2, bits);
    let alpha_exact = alpha.sub(&Complex::from_f64(-1.5, 0.0, bits)).abs().cmp(&tol).is_lt().then_some((-3, 2));
    Ok(AsymptoticParams { r0, r, r_exact, alpha, alpha_exact, b1, b1_exact, certificate })
}

/// Limit of `s_n = L + c_1/n + c_2/n^2 + ...` from `k`-th forward differences of `n^k s_n`.
///
/// `vals[i]` is `s_{n0 + i}`; uses the last `k + 1` values.
pub fn forward_difference_limit(vals: &[Complex], n0: usize, k: usize) -> Complex {
    let bits = vals[0].precision();
    let start = vals.len() - 1 - k;
    let mut acc = Complex::zero(bits);
    let mut binom = BigInt::from(1);
    for i in 0..=k {
        let n = Real::from_i64((n0 + start + i) as i64, bits);
        let w = n.powi(k).mul(&Real::from_bigint(&binom, bits));
        let term = vals[start + i].mul_real(&w);
        acc = if (k - i) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        binom = binom * (k - i) / (i + 1);
    }
    let fact: BigInt = (1..=k as u64).product();
    acc.div_real(&Real::from_bigint(&fact, bits))
}

/// Limit estimate with an error bound from orders `k` and `k - 1`.
pub fn extrapolate(vals: &[Complex], n0: usize, k: usize) -> (Complex, Real) {
    let hi = forward_difference_limit(vals, n0, k);
    let lo = forward_difference_limit(vals, n0, k - 1);
    let err = hi.sub(&lo).abs();
    (hi, err)
}

/// Estimate of `C` with an error bound.
#[derive(Clone, Debug)]
pub struct CEstimate {
    pub value: Complex,
    pub error: Real,
}

/// `u_n = T(n) n^{3/2} R^{-n} / (1 + b1/n)` for `n0 <= n <= n1`.
pub fn normalized_terms(terms: &[RingElement], params: &AsymptoticParams, n0: usize, n1: usize) -> Vec<Complex> {
    let bits = params.r0.precision();
    let mut pw = params.r0.powi(n0);
    let mut out = Vec::with_capacity(n1 + 1 - n0);
    for (n, t) in terms.iter().enumerate().take(n1 + 1).skip(n0) {
        let nr = Real::from_i64(n as i64, bits);
        let corr = Complex::one(bits).add(&params.b1.div_real(&nr));
        let u = Complex::from_ring(t, bits).mul(&pw).mul_real(&nr.mul(&nr.sqrt())).div(&corr);
        out.push(u);
        pw = pw.mul(&params.r0);
    }
    out
}

/// `C` from terms `T(0..=N)` by forward differences of order `k`.
pub fn estimate_c(terms: &[RingElement], params: &AsymptoticParams, cfg: &PrecisionConfig) -> Result<CEstimate> {
    cfg.validate()?;
    let n = cfg.terms;
    if terms.len() <= n {
        return Err(Error::Asymptotics(format!("need terms up to {n}, have {}", terms.len().saturating_sub(1))));
    }
    let k = cfg.diffs;
    let n0 = n - k - 1;
    let u = normalized_terms(terms, params, n0, n);
    let (value, error) = extrapolate(&u, n0, k);
    Ok(CEstimate { value, error })
}

/// Generates `T(0..=N)` and runs the full pipeline.
pub fn analyze(g: &Poly, h: &Poly, spec: &RecurrenceSpec, cfg: &PrecisionConfig) -> Result<(AsymptoticParams, CEstimate)> {
    let params = asymptotic_params(g, h, cfg)?;
    let terms = spec.generate(cfg.terms)?;
    let c = estimate_c(&terms, &params, cfg)?;
    Ok((params, c))
}

/// Limit of `T(n+1)/T(n)`; an estimate of `R` that does not use `G`.
pub fn empirical_ratio_limit(terms: &[RingElement], k: usize, bits: usize) -> (Complex, Real) {
    let n1 = terms.len() - 2;
    let n0 = n1 - k - 1;
    let vals: Vec<Complex> = (n0..=n1)
        .map(|n| Complex::from_ring(&terms[n + 1], bits).div(&Complex::from_ring(&terms[n], bits)))
        .collect();
    extrapolate(&vals, n0, k)
}

/// Limit of `n (T(n) n^{3/2} R^{-n} / C - 1)`, an empirical `b1`.
pub fn empirical_b1(terms: &[RingElement], r0: &Complex, c: &Complex, k: usize) -> (Complex, Real) {
    let bits = r0.precision();
    let n1 = terms.len() - 1;
    let n0 = n1 - k - 1;
    let mut pw = r0.powi(n0);
    let mut vals = Vec::new();
    for n in n0..=n1 {
        let nr = Real::from_i64(n as i64, bits);
        let u = Complex::from_ring(&terms[n], bits).mul(&pw).mul_real(&nr.mul(&nr.sqrt())).div(c);
        vals.push(u.sub(&Complex::one(bits)).mul_real(&nr));
        pw = pw.mul(r0);
    }
    extrapolate(&vals, n0, k)
}

/// `max n |T(n+1)/T(n) - R|` and `max n^2 |u_n/C - 1 - b1/n|` over `lo <= n < terms.len() - 1`.
pub fn ansatz_residuals(terms: &[RingElement], params: &AsymptoticParams, c: &Complex, lo: usize) -> (f64, f64) {
    let bits = params.r0.precision();
    let mut pw = params.r0.powi(lo);
    let (mut first, mut second) = (0.0f64, 0.0f64);
    let mut prev = Complex::from_ring(&terms[lo], bits);
    for n in lo..terms.len() - 1 {
        let nr = Real::from_i64(n as i64, bits);
        let next = Complex::from_ring(&terms[n + 1], bits);
        let ratio = next.div(&prev).sub(&params.r);
        first = first.max(ratio.abs().to_f64() * n as f64);
        let u = prev.mul(&pw).mul_real(&nr.mul(&nr.sqrt())).div(c);
        let rem = u.sub(&Complex::one(bits)).sub(&params.b1.div_real(&nr));
        second = second.max(rem.abs().to_f64() * (n as f64).powi(2));
        pw = pw.mul(&params.r0);
        prev = next;
    }
    (first, second)
}

/// Partial sum `(72 sqrt15 - 160 sqrt3) sum_{n < N} A(n) (1/2 - 3 sqrt5/20 + n) x^n`
/// with `x = ((1 - sqrt5)/2)^12` and Apery numbers `A(n)`; tends to `1/pi`.
pub fn sato_series(n_terms: usize, digits: usize) -> Result<Real> {
    let bits = bits_for_digits(digits);
    let r = |k: i64| Real::from_i64(k, bits);
    let s5 = r(5).sqrt();
    let x = r(1).sub(&s5).div_i64(2).powi(12);
    let lin0 = r(1).div_i64(2).sub(&s5.mul_i64(3).div_i64(20));
    let pre = r(15).sqrt().mul_i64(72).sub(&r(3).sqrt().mul_i64(160));
    let apery = crate::catalog::get_entry("apery")?.recurrence();
    let mut sum = Real::zero(bits);
    let mut xp = r(1);
    for (n, a) in apery.terms().take(n_terms).enumerate() {
        let a = Real::from_bigint(&a?.as_integer().expect("Apery numbers are integers"), bits);
        sum = sum.add(&a.mul(&lin0.add(&r(n as i64))).mul(&xp));
        xp = xp.mul(&x);
    }
    Ok(pre.mul(&sum))
}

/// `(1 + sqrt2)^2 / (2^{9/4} pi^{3/2})`, the Apery constant.
pub fn apery_constant(bits: usize) -> Real {
    let r = |k: i64| Real::from_i64(k, bits);
    let num = r(1).add(&r(2).sqrt()).powi(2);
    num.div(&r(2).powf(&r(9).div_i64(4))).div(&pi_three_halves(bits))
}

/// The variant with `1 + 2 sqrt2` in place of `1 + sqrt2`.
pub fn apery_constant_variant(bits: usize) -> Real {
    let r = |k: i64| Real::from_i64(k, bits);
    let num = r(1).add(&r(2).sqrt().mul_i64(2)).powi(2);
    num.div(&r(2).powf(&r(9).div_i64(4))).div(&pi_three_halves(bits))
}

fn pi_three_halves(bits: usize) -> Real {
    let pi = Real::pi(bits);
    pi.mul(&pi.sqrt())
}

/// Closed forms of `R`, `b1` and the conjectured `C` for one sequence.
#[derive(Clone, Debug)]
pub struct ClosedForms {
    pub r: Complex,
    pub b1: Complex,
    pub c: Complex,
}

/// Sequences with tabulated closed forms.
pub const CLOSED_FORM_KEYS: [&str; 12] =
    ["level11", "14A", "14B", "14C", "14Cbar", "15A", "15B", "15C", "15Cbar", "24", "level7", "apery"];

/// Positive root of `f` near `x0` by Newton's method; `f` returns value and derivative.
fn newton(x0: f64, bits: usize, f: impl Fn(&Real) -> (Real, Real)) -> Real {
    let mut x = Real::from_f64(x0, bits);
    for _ in 0..200 {
        let (v, d) = f(&x);
        let step = v.div(&d);
        x = x.sub(&step);
        if step.is_zero() || step.abs().exponent() < x.abs().exponent() - bits as i64 + 8 {
            break;
        }
    }
    x
}

/// Tabulated values for `key` (canonical catalog key or alias), at `bits` precision.
pub fn closed_forms(key: &str, bits: usize) -> Option<ClosedForms> {
    let r = |k: i64| Real::from_i64(k, bits);
    let q = |a: i64, b: i64| r(a).div_i64(b);
    let s2 = r(2).sqrt();
    let re = Complex::real;
    let pi32 = pi_three_halves(bits);
    let key = crate::catalog::get_entry(key).ok()?.key.as_str();
    let one_2s2_sq = r(1).add(&s2.mul_i64(2)).powi(2);
    let out = match key {
        "level11" => {
            let big_r = newton(16.8275, bits, |x| {
                let v = x.powi(3).sub(&x.powi(2).mul_i64(20)).add(&x.mul_i64(56)).sub(&r(44));
                let d = x.powi(2).mul_i64(3).sub(&x.mul_i64(40)).add(&r(56));
                (v, d)
            });
            let ri = r(1).div(&big_r);
            let num = ri.powi(2).mul_i64(275).sub(&ri.mul_i64(184)).add(&r(21));
            let den = ri.powi(2).mul_i64(33).sub(&ri.mul_i64(28)).add(&r(5));
            let b1 = num.div(&den).div_i64(8).neg();
            // x^2 = y with 2^10 11 y^3 + 2^5 29 y - 11 = 0
            let y = newton(0.0118, bits, |y| {
                let v = y.powi(3).mul_i64(11264).add(&y.mul_i64(928)).sub(&r(11));
                let d = y.powi(2).mul_i64(33792).add(&r(928));
                (v, d)
            });
            let c = y.sqrt().mul(&big_r).div(&pi32);
            ClosedForms { r: re(big_r), b1: re(b1), c: re(c) }
        }
        "level14A" => {
            let big_r = r(5).add(&s2.mul_i64(4));
            let b1 = q(-223, 196).add(&s2.mul_i64(1025).div_i64(3136));
            let c = big_r.div(&pi32.mul_i64(4)).mul(&s2.mul_i64(9).sub(&r(8)).div_i64(14).sqrt());
            ClosedForms { r: re(big_r), b1: re(b1), c: re(c) }
        }
        "level14B" => {
            let b1 = q(-7, 4).add(&s2.mul_i64(69).div_i64(64));
            let c = one_2s2_sq.div(&pi32.mul_i64(4)).mul(&r(8).sub(&s2.mul_i64(5)).div_i64(2).sqrt());
            ClosedForms { r: re(one_2s2_sq), b1: re(b1), c: re(c) }
        }
        "14C" => {
            let b1 = q(443, 392).sub(&s2.mul_i64(60).div_i64(49));
            let c = r(8).div(&pi32).mul(&s2.mul_i64(8).sub(&r(11)).div_i64(7).sqrt());
            ClosedForms { r: re(s2.mul_i64(8)), b1: re(b1), c: re(c) }
        }
        "14Cbar" => {
            let b1 = q(339, 784).add(&s2.mul_i64(201).div_i64(196));
            let c = one_2s2_sq.div(&pi32).mul(&r(14).sqrt().div_i64(7).add(&r(7).sqrt().div_i64(14)));
            ClosedForms { r: re(one_2s2_sq.neg()), b1: re(b1), c: re(c) }
        }
        "level15A" => ClosedForms { r: re(r(12)), b1: re(q(-489, 1000)), c: re(r(3).sqrt().mul_i64(6).div(&pi32.mul_i64(5))) },
        "level15B" => ClosedForms { r: re(r(-12)), b1: re(q(3, 8)), c: re(r(3).sqrt().mul_i64(12).div(&pi32)) },
        "15C" | "15Cbar" => {
            let sgn = if key == "15C" { 1 } else { -1 };
            let big_r = Complex::new(r(11), r(2 * sgn));
            let b1 = Complex::new(q(-1209, 2000), q(231 * sgn, 1000));
            let c = big_r.powf(&q(3, 2)).div_real(&pi32.mul_i64(20));
            ClosedForms { r: big_r, b1, c }
        }
        "level24" => ClosedForms { r: re(r(8)), b1: re(q(-3, 8)), c: re(r(8).sqrt().div(&pi32)) },
        "level7" => ClosedForms { r: re(r(27)), b1: re(q(-65, 144)), c: re(r(27).sqrt().div(&pi32.mul_i64(4))) },
        "apery6A" => {
            let big_r = r(17).add(&s2.mul_i64(12));
            let b1 = q(-3, 4).add(&s2.mul_i64(15).div_i64(64));
            ClosedForms { r: re(big_r), b1: re(b1), c: re(apery_constant(bits)) }
        }
        _ => return None,
    };
    Some(out)
}

/// `|a - b| / |b|`.
pub fn relative_error(a: &Complex, b: &Complex) -> f64 {
    a.sub(b).abs().div(&b.abs()).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_entry;

    fn gh(key: &str) -> (Poly, Poly) {
        get_entry(key).unwrap().gh.clone().unwrap()
    }

    #[test]
    fn level7_exact() {
        let (g, h) = gh("level7");
        let p = asymptotic_params(&g, &h, &PrecisionConfig::default()).unwrap();
        assert_eq!(p.r_exact, Some(RingElement::from(27)));
        assert_eq!(p.b1_exact, Some(RingElement::rational(-65, 144)));
        assert_eq!(p.alpha_exact, Some((-3, 2)));
    }

    #[test]
    fn apery_exact() {
        let (g, h) = gh("apery");
        let p = asymptotic_params(&g, &h, &PrecisionConfig::default()).unwrap();
        assert_eq!(p.r_exact, Some(RingElement::quad(2, 17, 12)));
        let want: RingElement = "-3/4+15/64*sqrt(2)".parse().unwrap();
        assert_eq!(p.b1_exact, Some(want));
    }

    #[test]
    fn ties_are_rejected() {
        // (1 - 4x^2) has roots +-1/2
        let g = Poly::from_ints(&[1, 0, -4]);
        let err = smallest_root(&g, &PrecisionConfig::default()).unwrap_err();
        assert!(err.to_string().contains("non-unique"));
        let g = Poly::from_ints(&[1, -2, 1]);
        let err = smallest_root(&g, &PrecisionConfig::default()).unwrap_err();
        assert!(err.to_string().contains("multiple"));
    }

    #[test]
    fn sato() {
        let pi_inv = Real::one(bits_for_digits(60)).div(&Real::pi(bits_for_digits(60)));
        let s15 = sato_series(15, 60).unwrap();
        assert!(s15.sub(&pi_inv).abs().to_f64() < 1e-12);
        // the first term alone is off by about 0.034
        let errs: Vec<f64> = (1..=15).map(|n| sato_series(n, 60).unwrap().sub(&pi_inv).abs().to_f64()).collect();
        assert!(errs[0] < 0.035 && errs[0] > 0.03);
        assert!(errs.windows(2).all(|w| w[1] < w[0] / 5.0));
    }

    #[test]
    fn config_validation() {
        assert!(PrecisionConfig { terms: 50, ..Default::default() }.validate().is_err());
        assert!(PrecisionConfig::with_digits(20).validate().is_err());
    }
}
