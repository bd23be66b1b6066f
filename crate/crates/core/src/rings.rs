//! Coefficient rings: integers, rationals and quadratic fields `Q(sqrt d)`.
//!
//! [`RingElement`] is a tagged value that promotes on mixed arithmetic
//! (`Int` < `Rat` < `Quad`). Two quadratic elements over different fields can
//! only be combined when one of them is actually rational.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ring a sequence lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingTag {
    Z,
    Q,
    /// `Q(sqrt d)` with `d` squarefree and not 1.
    Quad(i64),
}

impl RingTag {
    /// Smallest ring containing both.
    pub fn join(self, other: RingTag) -> Result<RingTag> {
        use RingTag::*;
        Ok(match (self, other) {
            (Quad(a), Quad(b)) if a != b => {
                return Err(Error::FieldMismatch(a, b));
            }
            (Quad(a), _) | (_, Quad(a)) => Quad(a),
            (Q, _) | (_, Q) => Q,
            (Z, Z) => Z,
        })
    }

    pub fn one(self) -> RingElement {
        match self {
            RingTag::Z => RingElement::from(1),
            RingTag::Q => RingElement::Rat(BigRational::one()),
            RingTag::Quad(d) => RingElement::Quad(QuadElem::from_rational(d, BigRational::one())),
        }
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Z => write!(f, "Z"),
            RingTag::Q => write!(f, "Q"),
            RingTag::Quad(d) => write!(f, "quad:{d}"),
        }
    }
}

impl FromStr for RingTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(RingTag::Z),
            "Q" => Ok(RingTag::Q),
            other => {
                let d = other
                    .strip_prefix("quad:")
                    .and_then(|d| d.parse::<i64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown ring tag {other:?}")))?;
                if squarefree_part(d) != d || d == 1 || d == 0 {
                    return Err(Error::Parse(format!("quad:{d} is not a squarefree discriminant")));
                }
                Ok(RingTag::Quad(d))
            }
        }
    }
}

/// `a + b sqrt(d)` with rational `a`, `b`.
#[derive(Clone, Debug)]
pub struct QuadElem {
    pub d: i64,
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadElem {
    pub fn new(d: i64, a: BigRational, b: BigRational) -> Self {
        QuadElem { d, a, b }
    }

    pub fn from_rational(d: i64, a: BigRational) -> Self {
        QuadElem { d, a, b: BigRational::zero() }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(d: i64) -> Self {
        QuadElem { d, a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn conj(&self) -> Self {
        QuadElem { d: self.d, a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn compatible(&self, other: &QuadElem) -> Result<i64> {
        if self.d == other.d || other.b.is_zero() {
            Ok(self.d)
        } else if self.b.is_zero() {
            Ok(other.d)
        } else {
            Err(Error::FieldMismatch(self.d, other.d))
        }
    }

    pub fn try_add(&self, other: &QuadElem) -> Result<QuadElem> {
        let d = self.compatible(other)?;
        Ok(QuadElem { d, a: &self.a + &other.a, b: &self.b + &other.b })
    }

    pub fn try_sub(&self, other: &QuadElem) -> Result<QuadElem> {
        let d = self.compatible(other)?;
        Ok(QuadElem { d, a: &self.a - &other.a, b: &self.b - &other.b })
    }

    pub fn try_mul(&self, other: &QuadElem) -> Result<QuadElem> {
        let d = self.compatible(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        Ok(QuadElem {
            d,
            a: &self.a * &other.a + &self.b * &other.b * dd,
            b: &self.a * &other.b + &self.b * &other.a,
        })
    }

    pub fn try_div(&self, other: &QuadElem) -> Result<QuadElem> {
        let n = other.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.try_mul(&other.conj())?;
        Ok(QuadElem { d: num.d, a: num.a / &n, b: num.b / &n })
    }
}

/// Exact ring element.
#[derive(Clone, Debug)]
pub enum RingElement {
    Int(BigInt),
    Rat(BigRational),
    Quad(QuadElem),
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::Int(BigInt::zero())
    }

    pub fn one() -> Self {
        RingElement::Int(BigInt::one())
    }

    pub fn rational(n: i64, d: i64) -> Self {
        RingElement::Rat(BigRational::new(n.into(), d.into())).normalized()
    }

    /// `a + b sqrt(d)` from integers.
    pub fn quad(d: i64, a: i64, b: i64) -> Self {
        RingElement::Quad(QuadElem::new(
            d,
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        ))
    }

    pub fn tag(&self) -> RingTag {
        match self {
            RingElement::Int(_) => RingTag::Z,
            RingElement::Rat(_) => RingTag::Q,
            RingElement::Quad(q) => RingTag::Quad(q.d),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Int(x) => x.is_zero(),
            RingElement::Rat(x) => x.is_zero(),
            RingElement::Quad(q) => q.a.is_zero() && q.b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElement::Int(x) => x.is_one(),
            RingElement::Rat(x) => x.is_one(),
            RingElement::Quad(q) => q.a.is_one() && q.b.is_zero(),
        }
    }

    /// Rational and irrational parts; `None` for the field when rational.
    pub fn parts(&self) -> (BigRational, BigRational, Option<i64>) {
        match self {
            RingElement::Int(x) => (BigRational::from_integer(x.clone()), BigRational::zero(), None),
            RingElement::Rat(x) => (x.clone(), BigRational::zero(), None),
            RingElement::Quad(q) => {
                let d = if q.b.is_zero() { None } else { Some(q.d) };
                (q.a.clone(), q.b.clone(), d)
            }
        }
    }

    /// Rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.parts() {
            (a, _, None) => Some(a),
            _ => None,
        }
    }

    /// Integer value, if the element is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            RingElement::Int(x) => Some(x.clone()),
            _ => self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer()),
        }
    }

    /// True when every component has denominator 1.
    pub fn is_integral(&self) -> bool {
        match self {
            RingElement::Int(_) => true,
            RingElement::Rat(r) => r.is_integer(),
            RingElement::Quad(q) => q.a.is_integer() && q.b.is_integer(),
        }
    }

    /// Lowers `Rat` with denominator 1 to `Int`. Quadratic elements keep their tag.
    pub fn normalized(self) -> Self {
        match self {
            RingElement::Rat(r) if r.is_integer() => RingElement::Int(r.to_integer()),
            other => other,
        }
    }

    /// Casts into the given ring; fails when the value does not belong to it.
    pub fn into_ring(self, tag: RingTag) -> Result<RingElement> {
        match tag {
            RingTag::Z => self.as_integer().map(RingElement::Int).ok_or(Error::NotInRing(tag)),
            RingTag::Q => self.as_rational().map(RingElement::Rat).ok_or(Error::NotInRing(tag)),
            RingTag::Quad(d) => {
                let (a, b, f) = self.parts();
                match f {
                    Some(e) if e != d => Err(Error::FieldMismatch(d, e)),
                    _ => Ok(RingElement::Quad(QuadElem::new(d, a, b))),
                }
            }
        }
    }

    /// Galois conjugate (identity on rationals).
    pub fn conj(&self) -> Self {
        match self {
            RingElement::Quad(q) => RingElement::Quad(q.conj()),
            other => other.clone(),
        }
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        match self {
            RingElement::Quad(q) => q.norm(),
            other => {
                let r = other.as_rational().expect("rational");
                &r * &r
            }
        }
    }

    fn as_quad(&self, d: i64) -> QuadElem {
        match self {
            RingElement::Int(x) => QuadElem::from_rational(d, BigRational::from_integer(x.clone())),
            RingElement::Rat(x) => QuadElem::from_rational(d, x.clone()),
            RingElement::Quad(q) => q.clone(),
        }
    }

    fn as_rat(&self) -> BigRational {
        match self {
            RingElement::Int(x) => BigRational::from_integer(x.clone()),
            RingElement::Rat(x) => x.clone(),
            RingElement::Quad(_) => unreachable!("quadratic element in rational context"),
        }
    }

    fn quad_field(a: &RingElement, b: &RingElement) -> Option<i64> {
        match (a, b) {
            (RingElement::Quad(x), RingElement::Quad(y)) => Some(if x.b.is_zero() { y.d } else { x.d }),
            (RingElement::Quad(x), _) | (_, RingElement::Quad(x)) => Some(x.d),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement> {
        use RingElement::*;
        Ok(match (self, other) {
            (Int(a), Int(b)) => Int(a + b),
            _ => match Self::quad_field(self, other) {
                Some(d) => Quad(self.as_quad(d).try_add(&other.as_quad(d))?),
                None => Rat(self.as_rat() + other.as_rat()),
            },
        })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement> {
        use RingElement::*;
        Ok(match (self, other) {
            (Int(a), Int(b)) => Int(a - b),
            _ => match Self::quad_field(self, other) {
                Some(d) => Quad(self.as_quad(d).try_sub(&other.as_quad(d))?),
                None => Rat(self.as_rat() - other.as_rat()),
            },
        })
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement> {
        use RingElement::*;
        Ok(match (self, other) {
            (Int(a), Int(b)) => Int(a * b),
            (Int(a), Quad(q)) | (Quad(q), Int(a)) => {
                Quad(QuadElem::new(q.d, &q.a * a, &q.b * a))
            }
            _ => match Self::quad_field(self, other) {
                Some(d) => Quad(self.as_quad(d).try_mul(&other.as_quad(d))?),
                None => Rat(self.as_rat() * other.as_rat()),
            },
        })
    }

    /// Field division. `Int / Int` yields a rational (lowered to `Int` when exact).
    pub fn try_div(&self, other: &RingElement) -> Result<RingElement> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        use RingElement::*;
        Ok(match (self, other) {
            (Quad(q), Int(n)) => {
                let n = BigRational::from_integer(n.clone());
                Quad(QuadElem::new(q.d, &q.a / &n, &q.b / &n))
            }
            _ => match Self::quad_field(self, other) {
                Some(d) => Quad(self.as_quad(d).try_div(&other.as_quad(d))?),
                None => Rat(self.as_rat() / other.as_rat()).normalized(),
            },
        })
    }

    /// Exact division by a nonzero integer, keeping the ring tag.
    pub fn div_int(&self, n: &BigInt) -> RingElement {
        match self {
            RingElement::Int(x) => {
                let (q, r) = x.div_rem(n);
                if r.is_zero() {
                    RingElement::Int(q)
                } else {
                    RingElement::Rat(BigRational::new(x.clone(), n.clone()))
                }
            }
            RingElement::Rat(x) => RingElement::Rat(x / BigRational::from_integer(n.clone())),
            RingElement::Quad(q) => {
                let n = BigRational::from_integer(n.clone());
                RingElement::Quad(QuadElem::new(q.d, &q.a / &n, &q.b / &n))
            }
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> RingElement {
        match self {
            RingElement::Int(x) => RingElement::Int(x * n),
            RingElement::Rat(x) => RingElement::Rat(x * BigRational::from_integer(n.clone())),
            RingElement::Quad(q) => RingElement::Quad(QuadElem::new(q.d, &q.a * n, &q.b * n)),
        }
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = RingElement::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least common denominator of all components.
    pub fn denominator(&self) -> BigInt {
        match self {
            RingElement::Int(_) => BigInt::one(),
            RingElement::Rat(r) => r.denom().clone(),
            RingElement::Quad(q) => q.a.denom().lcm(q.b.denom()),
        }
    }

    /// Reduces the components modulo `m`, returning `(a mod m, b mod m)` in `[0, m)`.
    ///
    /// Components must be `m`-integral: their denominators have to be units mod `m`.
    pub fn reduce_mod(&self, m: &BigInt) -> Result<(BigInt, BigInt)> {
        let (a, b, _) = self.parts();
        Ok((reduce_rational(&a, m)?, reduce_rational(&b, m)?))
    }

    /// Approximate value as `(re, im)` doubles; for diagnostics only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let (a, b, d) = self.parts();
        let fa = rat_to_f64(&a);
        let fb = rat_to_f64(&b);
        match d {
            None => (fa, 0.0),
            Some(d) if d > 0 => (fa + fb * (d as f64).sqrt(), 0.0),
            Some(d) => (fa, fb * ((-d) as f64).sqrt()),
        }
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn reduce_rational(r: &BigRational, m: &BigInt) -> Result<BigInt> {
    let num = r.numer().mod_floor(m);
    if r.denom().is_one() {
        return Ok(num);
    }
    let inv = mod_inverse(&r.denom().mod_floor(m), m).ok_or(Error::NotIntegral(m.to_string()))?;
    Ok((num * inv).mod_floor(m))
}

/// Inverse of `a` modulo `m` when it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else if m.is_one() {
        Some(BigInt::zero())
    } else {
        None
    }
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(d: i64) -> i64 {
    let sign = d.signum();
    let mut n = d.unsigned_abs();
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        if k % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    sign * (out * n) as i64
}

/// Exact square root of a rational, as an element of `Q` or `Q(sqrt d)`.
pub fn sqrt_rational(r: &BigRational) -> RingElement {
    if r.is_zero() {
        return RingElement::zero();
    }
    // sqrt(n/m) = sqrt(n m) / m
    let nm = r.numer() * r.denom();
    let nm_i = nm.to_i64().expect("sqrt of a small rational");
    let d = squarefree_part(nm_i);
    let k = ((nm_i / d) as f64).sqrt().round() as i64;
    debug_assert_eq!(k * k * d, nm_i);
    let coeff = BigRational::new(BigInt::from(k), r.denom().clone());
    if d == 1 {
        RingElement::Rat(coeff).normalized()
    } else {
        RingElement::Quad(QuadElem::new(d, BigRational::zero(), coeff))
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RingElement::Int(a), RingElement::Int(b)) => a == b,
            _ => {
                let (a1, b1, d1) = self.parts();
                let (a2, b2, d2) = other.parts();
                a1 == a2 && b1 == b2 && (d1.is_none() || d2.is_none() || d1 == d2)
            }
        }
    }
}

impl Eq for RingElement {}

impl From<i64> for RingElement {
    fn from(n: i64) -> Self {
        RingElement::Int(BigInt::from(n))
    }
}

impl From<i32> for RingElement {
    fn from(n: i32) -> Self {
        RingElement::Int(BigInt::from(n))
    }
}

impl From<BigInt> for RingElement {
    fn from(n: BigInt) -> Self {
        RingElement::Int(n)
    }
}

impl From<BigRational> for RingElement {
    fn from(r: BigRational) -> Self {
        RingElement::Rat(r).normalized()
    }
}

impl From<QuadElem> for RingElement {
    fn from(q: QuadElem) -> Self {
        RingElement::Quad(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a> $tr<&'a RingElement> for &'a RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &'a RingElement) -> RingElement {
                self.$try(rhs).expect(concat!("ring ", stringify!($method)))
            }
        }
        impl $tr<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$try(&rhs).expect(concat!("ring ", stringify!($method)))
            }
        }
        impl<'a> $tr<&'a RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &'a RingElement) -> RingElement {
                (&self).$try(rhs).expect(concat!("ring ", stringify!($method)))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        match self {
            RingElement::Int(x) => RingElement::Int(-x),
            RingElement::Rat(x) => RingElement::Rat(-x),
            RingElement::Quad(q) => RingElement::Quad(QuadElem::new(q.d, -q.a, -q.b)),
        }
    }
}

impl<'a> Neg for &'a RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -self.clone()
    }
}

impl num_traits::Zero for RingElement {
    fn zero() -> Self {
        RingElement::zero()
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
}

impl num_traits::One for RingElement {
    fn one() -> Self {
        RingElement::one()
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl RingElement {
    /// Human-oriented form: zero parts dropped, Gaussian units written `i`
    /// (`1`, `2+2i`, `-3i`, `5-4*sqrt(2)`). Parses back to the same element.
    pub fn to_natural(&self) -> String {
        let RingElement::Quad(q) = self else { return self.to_string() };
        let unit = if q.d == -1 { "i".to_string() } else { format!("*sqrt({})", q.d) };
        let b = if q.b.is_one() && q.d == -1 {
            String::new()
        } else if (-&q.b).is_one() && q.d == -1 {
            "-".to_string()
        } else {
            fmt_rat(&q.b)
        };
        match (q.a.is_zero(), q.b.is_zero()) {
            (_, true) => fmt_rat(&q.a),
            (true, false) => format!("{b}{unit}"),
            (false, false) => {
                let sign = if q.b.is_negative() { "" } else { "+" };
                format!("{}{sign}{b}{unit}", fmt_rat(&q.a))
            }
        }
    }
}

/// Canonical form: `n`, `p/q`, or `a+b*sqrt(d)` / `a-b*sqrt(d)`.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Int(x) => write!(f, "{x}"),
            RingElement::Rat(x) => write!(f, "{}", fmt_rat(x)),
            RingElement::Quad(q) => {
                let sign = if q.b.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}*sqrt({})", fmt_rat(&q.a), sign, fmt_rat(&q.b.abs()), q.d)
            }
        }
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for RingElement {
    type Err = Error;

    /// Accepts `n`, `p/q` and `a+b*sqrt(d)` (also `a-b*sqrt(d)`, `a+-b*sqrt(d)`, `b*sqrt(d)`),
    /// plus the Gaussian shorthand `a+bi`.
    fn from_str(s: &str) -> Result<Self> {
        let mut s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(head) = s.strip_suffix('i') {
            // A bare or signed unit coefficient: `i`, `2+i`, `3-i`.
            let head = if head.is_empty() || head.ends_with(['+', '-']) { format!("{head}1") } else { head.to_string() };
            s = format!("{head}*sqrt(-1)");
        }
        let Some(star) = s.find("*sqrt(") else {
            return Ok(RingElement::from(parse_rat(&s)?));
        };
        let bad = || Error::Parse(format!("bad quadratic element {s:?}"));
        let d: i64 = s[star + 6..]
            .strip_suffix(')')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let head = &s[..star];
        // Split `a` from `b` at the last sign that is not the very first char or part of "+-".
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| {
                (c == '+' || c == '-') && i > 0 && !matches!(head.as_bytes()[i - 1], b'+' | b'-' | b'/')
            })
            .map(|(i, _)| i);
        let (a, b) = match split {
            Some(i) => {
                let b = head[i..].trim_start_matches('+');
                (parse_rat(&head[..i])?, parse_rat(b)?)
            }
            None => (BigRational::zero(), parse_rat(head)?),
        };
        if d == 0 || d == 1 || squarefree_part(d) != d {
            return Err(bad());
        }
        Ok(RingElement::Quad(QuadElem::new(d, a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["0", "-17", "3/4", "-4+4*sqrt(2)", "56-32*sqrt(2)", "1/2-3/20*sqrt(5)", "2+2*sqrt(-1)"] {
            let x: RingElement = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        let x: RingElement = "56+-32*sqrt(2)".parse().unwrap();
        assert_eq!(x, RingElement::quad(2, 56, -32));
        for s in ["1", "2+2i", "-3i", "i", "4-i", "-151732284+264070928i", "5-4*sqrt(2)", "8*sqrt(2)"] {
            let x: RingElement = s.parse().unwrap();
            assert_eq!(x.to_natural(), s);
        }
        assert_eq!(RingElement::quad(-1, 1, 0).to_natural(), "1");
        let y: RingElement = "8*sqrt(2)".parse().unwrap();
        assert_eq!(y, RingElement::quad(2, 0, 8));
        assert!("1+2*sqrt(4)".parse::<RingElement>().is_err());
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = RingElement::quad(-1, 2, 2);
        let b = RingElement::quad(-1, 6, 8);
        assert_eq!(&a * &b, RingElement::quad(-1, -4, 28));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(a.norm(), BigRational::from_integer(8.into()));
    }

    #[test]
    fn mismatched_fields() {
        let a = RingElement::quad(2, 1, 1);
        let b = RingElement::quad(-1, 1, 1);
        assert!(matches!(a.try_mul(&b), Err(Error::FieldMismatch(2, -1))));
        // A rational element tagged with another field is still fine.
        let c = RingElement::quad(-1, 3, 0);
        assert_eq!(a.try_mul(&c).unwrap(), RingElement::quad(2, 3, 3));
    }

    #[test]
    fn reduction() {
        let x = RingElement::quad(2, -4, 4);
        let m = BigInt::from(7);
        assert_eq!(x.reduce_mod(&m).unwrap(), (3.into(), 4.into()));
        let h = RingElement::rational(3, 2);
        assert_eq!(h.reduce_mod(&m).unwrap().0, BigInt::from(5));
        assert!(h.reduce_mod(&BigInt::from(4)).is_err());
    }

    #[test]
    fn exact_square_roots() {
        let r = BigRational::from_integer(32.into());
        assert_eq!(sqrt_rational(&r), RingElement::quad(2, 0, 4));
        let m4 = BigRational::from_integer((-4).into());
        assert_eq!(sqrt_rational(&m4), RingElement::quad(-1, 0, 2));
        let q = BigRational::new(9.into(), 4.into());
        assert_eq!(sqrt_rational(&q), RingElement::rational(3, 2));
    }
}
