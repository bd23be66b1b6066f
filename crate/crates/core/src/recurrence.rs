//! Linear recurrences with polynomial coefficients and exact term streams.
//!
//! A [`RecurrenceSpec`] encodes
//! `P_0(n) T(n+1) = sum_{j=1..k} P_j(n) T(n+1-j)`
//! with `T(m) = 0` for `m < 0` and `T(0) = 1`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rings::{RingElement, RingTag};

/// Coefficient data of a recurrence, normalised so `leading` has unit top coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceSpec {
    /// Coefficient of `T(n+1)`; `(n+1)^3` for relations built from `(G, H)`.
    pub leading: Poly,
    /// `rhs[j-1]` multiplies `T(n+1-j)`.
    pub rhs: Vec<Poly>,
    pub ring: RingTag,
}

fn n_plus(c: RingElement) -> Poly {
    Poly::new(vec![c, RingElement::one()])
}

fn n_poly() -> Poly {
    Poly::x()
}

fn c(v: &RingElement) -> Poly {
    Poly::constant(v.clone())
}

/// `a n^2 + a n + b`.
fn quad_form(a: &RingElement, b: &RingElement) -> Poly {
    Poly::new(vec![b.clone(), a.clone(), a.clone()])
}

impl RecurrenceSpec {
    /// Number of previous terms referenced.
    pub fn order(&self) -> usize {
        self.rhs.len()
    }

    /// Recurrence attached to `Z = sum T(n) X^n` with `q dX/dq = Z X B` and `B^2 = G`.
    pub fn from_gh(g: &Poly, h: &Poly, ring: RingTag) -> Result<Self> {
        if !g.coeff(0).is_one() {
            return Err(Error::Invalid("G must have constant term 1".into()));
        }
        if !h.coeff(0).is_zero() {
            return Err(Error::Invalid("H must have constant term 0".into()));
        }
        let k = g.degree().unwrap_or(0).max(h.degree().unwrap_or(0));
        let one = RingElement::one();
        let leading = n_plus(one.clone()).pow(3);
        let mut rhs = Vec::with_capacity(k);
        for j in 1..=k {
            let gj = g.coeff(j);
            let hj = h.coeff(j);
            let half_j = RingElement::rational(j as i64, 2);
            // n + 1 - j/2 and n + 1 - j
            let mid = n_plus(&one - &half_j);
            let low = n_plus(&one - &RingElement::from(j as i64));
            let term = n_plus(one.clone())
                .mul(&c(&gj))
                .mul(&mid)
                .mul(&low)
                .sub(&c(&hj.mul_int(&BigInt::from(2))).mul(&mid));
            rhs.push(term.neg());
        }
        Ok(RecurrenceSpec { leading, rhs, ring })
    }

    /// Weight-one relation `(n+1)^2 t(n+1) = (a n^2 + a n + b) t(n) + c n^2 t(n-1)`.
    pub fn weight_one(a: &RingElement, b: &RingElement, cc: &RingElement, ring: RingTag) -> Self {
        RecurrenceSpec {
            leading: n_plus(RingElement::one()).pow(2),
            rhs: vec![quad_form(a, b), n_poly().pow(2).mul(&c(cc))],
            ring,
        }
    }

    /// Weight-two companion: `(n+1)^3 s(n+1) = -(2n+1)(a n^2 + a n + a - 2b) s(n) - (a^2 + 4c) n^3 s(n-1)`.
    pub fn asz(a: &RingElement, b: &RingElement, cc: &RingElement, ring: RingTag) -> Self {
        let two_n1 = Poly::from_ints(&[1, 2]);
        let inner = quad_form(a, &(a - &b.mul_int(&BigInt::from(2))));
        let disc = &(a * a) + &cc.mul_int(&BigInt::from(4));
        RecurrenceSpec {
            leading: n_plus(RingElement::one()).pow(3),
            rhs: vec![two_n1.mul(&inner).neg(), n_poly().pow(3).mul(&c(&disc)).neg()],
            ring,
        }
    }

    /// Relation for `C(2n, n) t(n)`:
    /// `(n+1)^3 T(n+1) = 2(2n+1)(a n^2 + a n + b) T(n) + 4c n (4n^2 - 1) T(n-1)`.
    pub fn ctyz(a: &RingElement, b: &RingElement, cc: &RingElement, ring: RingTag) -> Self {
        let two_n1 = Poly::from_ints(&[2, 4]);
        let last = Poly::from_ints(&[0, -1, 0, 4]).mul(&c(&cc.mul_int(&BigInt::from(4))));
        RecurrenceSpec {
            leading: n_plus(RingElement::one()).pow(3),
            rhs: vec![two_n1.mul(&quad_form(a, b)), last],
            ring,
        }
    }

    /// `(n+1)^3 T(n+1) = (2n+1)(a n^2 + a n + b) T(n) + n(c n^2 + d) T(n-1)`.
    pub fn three_term(
        a: &RingElement,
        b: &RingElement,
        cc: &RingElement,
        d: &RingElement,
        ring: RingTag,
    ) -> Self {
        let second = n_poly().mul(&Poly::new(vec![d.clone(), RingElement::zero(), cc.clone()]));
        RecurrenceSpec {
            leading: n_plus(RingElement::one()).pow(3),
            rhs: vec![Poly::from_ints(&[1, 2]).mul(&quad_form(a, b)), second],
            ring,
        }
    }

    /// Three-term relation plus `e n (2n-1)(n-1) T(n-2)`.
    pub fn four_term(params: &FourTermParams, ring: RingTag) -> Self {
        let mut spec = Self::three_term(&params.a, &params.b, &params.c, &params.d, ring);
        let cubic = Poly::from_ints(&[0, 1, -3, 2]);
        spec.rhs.push(cubic.mul(&c(&params.e)));
        spec
    }

    /// Same relation with the variable scaled: terms become `lambda^n T(n)`.
    pub fn scaled(&self, lambda: &RingElement) -> Self {
        let mut pw = RingElement::one();
        let rhs = self
            .rhs
            .iter()
            .map(|p| {
                pw = &pw * lambda;
                p.scale(&pw)
            })
            .collect();
        RecurrenceSpec { leading: self.leading.clone(), rhs, ring: self.ring }
    }

    /// Checks that every negative-index coefficient vanishes where it is used.
    pub fn self_starting(&self) -> SelfStarting {
        for (idx, p) in self.rhs.iter().enumerate().skip(1) {
            let j = idx + 1;
            for n in 0..=(j - 2) {
                if !p.eval_int(n as i64).is_zero() {
                    return SelfStarting { self_starting: false, witness: Some((j, n)) };
                }
            }
        }
        SelfStarting { self_starting: true, witness: None }
    }

    pub fn is_self_starting(&self) -> bool {
        self.self_starting().self_starting
    }

    /// Stream of `T(0), T(1), ...` with zero padding at negative indices.
    pub fn terms(&self) -> TermStream {
        TermStream::new(self.clone(), false)
    }

    /// Stream that refuses to read negative-index terms through a nonzero coefficient.
    pub fn terms_strict(&self) -> TermStream {
        TermStream::new(self.clone(), true)
    }

    /// First `n_max + 1` terms.
    pub fn generate(&self, n_max: usize) -> Result<Vec<RingElement>> {
        self.terms().take(n_max + 1).collect()
    }

    /// Checks `P_0(n) T(n+1) = sum P_j(n) T(n+1-j)` on a slice of terms.
    pub fn residual_ok(&self, terms: &[RingElement]) -> bool {
        (0..terms.len().saturating_sub(1)).all(|n| {
            let lhs = &self.leading.eval_int(n as i64) * &terms[n + 1];
            let mut rhs = RingElement::zero();
            for (i, p) in self.rhs.iter().enumerate() {
                if let Some(t) = n.checked_sub(i) {
                    rhs = &rhs + &(&p.eval_int(n as i64) * &terms[t]);
                }
            }
            lhs == rhs
        })
    }
}

/// Outcome of [`RecurrenceSpec::self_starting`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfStarting {
    pub self_starting: bool,
    /// First `(j, n)` with a nonzero coefficient of `T(n+1-j)` at a negative index.
    pub witness: Option<(usize, usize)>,
}

/// Parameters of the four-term family.
#[derive(Clone, Debug, PartialEq)]
pub struct FourTermParams {
    pub a: RingElement,
    pub b: RingElement,
    pub c: RingElement,
    pub d: RingElement,
    pub e: RingElement,
}

impl FourTermParams {
    pub fn as_array(&self) -> [&RingElement; 5] {
        [&self.a, &self.b, &self.c, &self.d, &self.e]
    }
}

/// `(a, b, c, d, e)` for cubic `G`, `H` with `g3 = -h3`.
pub fn fourterm_params(g: &Poly, h: &Poly) -> Result<FourTermParams> {
    if g.degree() != Some(3) || h.degree() != Some(3) {
        return Err(Error::NotFourTerm(format!(
            "degrees are {:?} and {:?}",
            g.degree(),
            h.degree()
        )));
    }
    if g.coeff(3) != -h.coeff(3) {
        return Err(Error::NotFourTerm("not self-starting form".into()));
    }
    let half = RingElement::rational(1, 2);
    let two = BigInt::from(2);
    Ok(FourTermParams {
        a: -(&g.coeff(1) * &half),
        b: h.coeff(1),
        c: -g.coeff(2),
        d: &g.coeff(2) + &h.coeff(2).mul_int(&two),
        e: -(&g.coeff(3) * &half),
    })
}

enum Coeffs {
    /// Integer polynomials, all-`Z` fast path.
    Int { leading: Vec<BigInt>, rhs: Vec<Vec<BigInt>> },
    General { leading: Poly, rhs: Vec<Poly> },
}

fn eval_big(p: &[BigInt], n: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * n + c;
    }
    acc
}

/// Exact term generator keeping only the last `k` terms.
pub struct TermStream {
    spec: RecurrenceSpec,
    coeffs: Coeffs,
    /// `window[0] = T(next - 1)`, `window[1] = T(next - 2)`, ...
    window: VecDeque<RingElement>,
    next: usize,
    strict: bool,
    failed: bool,
}

impl TermStream {
    fn new(spec: RecurrenceSpec, strict: bool) -> Self {
        let all: Vec<&Poly> = std::iter::once(&spec.leading).chain(spec.rhs.iter()).collect();
        let mut den = BigInt::one();
        for p in &all {
            for c in p.coeffs() {
                den = den.lcm(&c.denominator());
            }
        }
        let scale = RingElement::Int(den);
        let leading = spec.leading.scale(&scale);
        let rhs: Vec<Poly> = spec.rhs.iter().map(|p| p.scale(&scale)).collect();
        let all_int = std::iter::once(&leading)
            .chain(rhs.iter())
            .all(|p| p.coeffs().iter().all(|c| c.as_integer().is_some()));
        let coeffs = if all_int && spec.ring == RingTag::Z {
            let conv = |p: &Poly| p.coeffs().iter().map(|c| c.as_integer().unwrap()).collect();
            Coeffs::Int { leading: conv(&leading), rhs: rhs.iter().map(conv).collect() }
        } else {
            Coeffs::General { leading, rhs }
        };
        let k = spec.rhs.len();
        TermStream { spec, coeffs, window: VecDeque::with_capacity(k + 1), next: 0, strict, failed: false }
    }

    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    /// Index of the next term to be produced.
    pub fn index(&self) -> usize {
        self.next
    }

    fn step(&mut self) -> Result<RingElement> {
        let ring = self.spec.ring;
        if self.next == 0 {
            return Ok(ring.one());
        }
        let n = self.next - 1;
        let nb = BigInt::from(n);
        let k = self.spec.rhs.len();
        match &self.coeffs {
            Coeffs::Int { leading, rhs } if ring == RingTag::Z => {
                let mut acc = BigInt::zero();
                for j in 1..=k {
                    let cj = eval_big(&rhs[j - 1], &nb);
                    match self.window.get(j - 1) {
                        Some(RingElement::Int(t)) => {
                            if !cj.is_zero() {
                                acc += cj * t;
                            }
                        }
                        Some(_) => unreachable!("integer stream holds integers"),
                        None => {
                            if self.strict && !cj.is_zero() {
                                return Err(Error::NotSelfStarting { j, n });
                            }
                        }
                    }
                }
                let lead = eval_big(leading, &nb);
                if lead.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let (q, r) = acc.div_rem(&lead);
                if !r.is_zero() {
                    return Err(Error::InexactDivision { index: self.next });
                }
                Ok(RingElement::Int(q))
            }
            Coeffs::Int { .. } => unreachable!("integer coefficients only for Z streams"),
            Coeffs::General { leading, rhs } => {
                let nr = RingElement::from(n as i64);
                let mut acc = RingElement::zero();
                for j in 1..=k {
                    let cj = rhs[j - 1].eval(&nr);
                    match self.window.get(j - 1) {
                        Some(t) => {
                            if !cj.is_zero() {
                                acc = acc.try_add(&cj.try_mul(t)?)?;
                            }
                        }
                        None => {
                            if self.strict && !cj.is_zero() {
                                return Err(Error::NotSelfStarting { j, n });
                            }
                        }
                    }
                }
                let lead = leading.eval(&nr);
                let t = match lead.as_integer() {
                    Some(l) if !l.is_zero() => acc.div_int(&l),
                    _ => acc.try_div(&lead)?,
                };
                match ring {
                    RingTag::Z => {
                        t.into_ring(RingTag::Z).map_err(|_| Error::InexactDivision { index: self.next })
                    }
                    RingTag::Q => Ok(t.normalized()),
                    RingTag::Quad(_) => t.into_ring(ring),
                }
            }
        }
    }
}

impl Iterator for TermStream {
    type Item = Result<RingElement>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match self.step() {
            Ok(t) => {
                let k = self.spec.rhs.len();
                if k > 0 {
                    if self.window.len() == k {
                        self.window.pop_back();
                    }
                    self.window.push_front(t.clone());
                }
                self.next += 1;
                Some(Ok(t))
            }
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

/// Result of [`scaled_integrality_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    pub base: BigInt,
    pub n_max: usize,
    pub passed: bool,
    pub first_failure: Option<usize>,
    /// `base^n T(n)` for the checked range (integers only up to the first failure).
    pub scaled: Vec<BigInt>,
}

/// Verifies `base^n T(n)` is an integer for `n <= n_max`.
pub fn scaled_integrality_check(spec: &RecurrenceSpec, base: i64, n_max: usize) -> Result<IntegralityReport> {
    let base_b = BigInt::from(base);
    let mut pw = BigInt::one();
    let mut scaled = Vec::new();
    for (n, t) in spec.terms().take(n_max + 1).enumerate() {
        let v = t?.mul_int(&pw);
        match v.as_integer() {
            Some(i) => scaled.push(i),
            None => {
                return Ok(IntegralityReport {
                    base: base_b,
                    n_max,
                    passed: false,
                    first_failure: Some(n),
                    scaled,
                })
            }
        }
        pw *= &base_b;
    }
    Ok(IntegralityReport { base: base_b, n_max, passed: true, first_failure: None, scaled })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[RingElement]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x.as_integer().unwrap()).unwrap()).collect()
    }

    #[test]
    fn level4_is_single_term() {
        let g = Poly::from_ints(&[1, -64]);
        let h = Poly::from_ints(&[0, 8]);
        let spec = RecurrenceSpec::from_gh(&g, &h, RingTag::Z).unwrap();
        assert_eq!(spec.order(), 1);
        // 8 (2n+1)^3
        assert_eq!(spec.rhs[0], Poly::from_ints(&[8, 48, 96, 64]));
    }

    #[test]
    fn apery_from_asz() {
        let f = |x: i64| RingElement::from(x);
        let spec = RecurrenceSpec::asz(&f(-17), &f(-6), &f(-72), RingTag::Z);
        assert_eq!(ints(&spec.generate(5).unwrap()), vec![1, 5, 73, 1445, 33001, 819005]);
    }

    #[test]
    fn degenerate_quadratic() {
        let z = RingElement::zero();
        let spec = RecurrenceSpec::weight_one(&z, &z, &z, RingTag::Z);
        assert_eq!(ints(&spec.generate(3).unwrap()), vec![1, 0, 0, 0]);
    }

    #[test]
    fn inexact_division_is_reported() {
        let f = |x: i64| RingElement::from(x);
        let spec = RecurrenceSpec::weight_one(&f(0), &f(1), &f(0), RingTag::Z);
        let err = spec.generate(3).unwrap_err();
        assert_eq!(err, Error::InexactDivision { index: 2 });
    }

    #[test]
    fn strict_stream_rejects_non_self_starting() {
        // level 20
        let g = Poly::from_ints(&[1, -4]).mul(&Poly::from_ints(&[1, -12, 16]));
        let h = Poly::from_ints(&[0, 4, -40, 72]);
        let spec = RecurrenceSpec::from_gh(&g, &h, RingTag::Q).unwrap();
        assert!(!spec.is_self_starting());
        assert!(spec.terms_strict().take(3).any(|t| t.is_err()));
    }
}
