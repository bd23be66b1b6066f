//! High-precision real and complex numbers on top of `astro-float`.
//!
//! Every value carries its working precision in bits; binary operations use
//! the larger of the two.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::rings::RingElement;

const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: usize = 60;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Bits needed for `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

/// A real number at a fixed binary precision.
#[derive(Clone, Debug)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    fn wrap(v: BigFloat, p: usize) -> Self {
        Real { v, p }
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    /// Rounds to `p` bits.
    pub fn with_precision(&self, p: usize) -> Self {
        let mut v = self.v.clone();
        v.set_precision(p, RM).expect("precision");
        Real::wrap(v, p)
    }

    pub fn zero(p: usize) -> Self {
        Real::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        Real::from_i64(1, p)
    }

    pub fn from_i64(x: i64, p: usize) -> Self {
        Real::wrap(BigFloat::from_i64(x, p), p)
    }

    pub fn from_f64(x: f64, p: usize) -> Self {
        Real::wrap(BigFloat::from_f64(x, p), p)
    }

    /// Exact integer rounded to `p` bits.
    pub fn from_bigint(x: &BigInt, p: usize) -> Self {
        if x.is_zero() {
            return Real::zero(p);
        }
        let bits = x.bits() as usize;
        let keep = p + 64;
        let shift = bits.saturating_sub(keep);
        let top = x.abs() >> shift;
        let words: Vec<Word> = top.to_u64_digits().1.into_iter().map(|w| w as Word).collect();
        let sign = if x.is_negative() { Sign::Neg } else { Sign::Pos };
        let e = (words.len() * 64 + shift) as i32;
        let mut v = BigFloat::from_words(&words, sign, e);
        v.set_precision(p, RM).expect("precision");
        Real::wrap(v, p)
    }

    pub fn from_rational(x: &BigRational, p: usize) -> Self {
        Real::from_bigint(x.numer(), p).div(&Real::from_bigint(x.denom(), p))
    }

    /// Parses a decimal literal such as `"-1.25e3"`.
    pub fn parse(s: &str, p: usize) -> Self {
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc));
        Real::wrap(v, p)
    }

    pub fn pi(p: usize) -> Self {
        Real::wrap(with_consts(|cc| cc.pi(p, RM)), p)
    }

    fn prec(&self, o: &Real) -> usize {
        self.p.max(o.p)
    }

    pub fn add(&self, o: &Real) -> Real {
        let p = self.prec(o);
        Real::wrap(self.v.add(&o.v, p, RM), p)
    }

    pub fn sub(&self, o: &Real) -> Real {
        let p = self.prec(o);
        Real::wrap(self.v.sub(&o.v, p, RM), p)
    }

    pub fn mul(&self, o: &Real) -> Real {
        let p = self.prec(o);
        Real::wrap(self.v.mul(&o.v, p, RM), p)
    }

    pub fn div(&self, o: &Real) -> Real {
        let p = self.prec(o);
        Real::wrap(self.v.div(&o.v, p, RM), p)
    }

    pub fn mul_i64(&self, k: i64) -> Real {
        self.mul(&Real::from_i64(k, self.p))
    }

    pub fn div_i64(&self, k: i64) -> Real {
        self.div(&Real::from_i64(k, self.p))
    }

    pub fn neg(&self) -> Real {
        Real::wrap(self.v.neg(), self.p)
    }

    pub fn abs(&self) -> Real {
        Real::wrap(self.v.abs(), self.p)
    }

    pub fn sqrt(&self) -> Real {
        Real::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn ln(&self) -> Real {
        Real::wrap(with_consts(|cc| self.v.ln(self.p, RM, cc)), self.p)
    }

    pub fn exp(&self) -> Real {
        Real::wrap(with_consts(|cc| self.v.exp(self.p, RM, cc)), self.p)
    }

    pub fn atan(&self) -> Real {
        Real::wrap(with_consts(|cc| self.v.atan(self.p, RM, cc)), self.p)
    }

    pub fn sin(&self) -> Real {
        Real::wrap(with_consts(|cc| self.v.sin(self.p, RM, cc)), self.p)
    }

    pub fn cos(&self) -> Real {
        Real::wrap(with_consts(|cc| self.v.cos(self.p, RM, cc)), self.p)
    }

    pub fn powi(&self, n: usize) -> Real {
        Real::wrap(self.v.powi(n, self.p, RM), self.p)
    }

    /// `self^e` for `self > 0`.
    pub fn powf(&self, e: &Real) -> Real {
        self.ln().mul(e).exp()
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn cmp(&self, o: &Real) -> Ordering {
        self.v.partial_cmp(&o.v).unwrap_or(Ordering::Equal)
    }

    /// Binary exponent; `|x|` lies in `[2^(e-1), 2^e)`.
    pub fn exponent(&self) -> i64 {
        self.v.exponent().map(|e| e as i64).unwrap_or(i64::MIN)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_sci(20).parse().unwrap_or(f64::NAN)
    }

    /// Scientific notation with `digits` significant digits, e.g. `1.2345e-3`.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.v.is_zero() {
            return "0".into();
        }
        let s = with_consts(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
        let (mant, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let exp: i64 = exp.parse().unwrap_or(0);
        let (neg, mant) = mant.strip_prefix('-').map(|m| (true, m)).unwrap_or((false, mant));
        let all: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
        let lead = mant.find('.').unwrap_or(mant.len()) as i64;
        let first = all.find(|c| c != '0').unwrap_or(0);
        let sig = &all[first..];
        let e10 = exp + lead - 1 - first as i64;
        let sig = round_digits(sig, digits);
        let (sig, e10) = if sig.len() > digits { (sig[..digits].to_string(), e10 + 1) } else { (sig, e10) };
        let sig = sig.trim_end_matches('0');
        let sig = if sig.is_empty() { "0" } else { sig };
        let body = if sig.len() > 1 { format!("{}.{}", &sig[..1], &sig[1..]) } else { sig.to_string() };
        let sign = if neg { "-" } else { "" };
        if e10 == 0 {
            format!("{sign}{body}")
        } else {
            format!("{sign}{body}e{e10}")
        }
    }

    /// Plain decimal with `digits` significant digits when the exponent is moderate.
    pub fn to_decimal(&self, digits: usize) -> String {
        let sci = self.to_sci(digits);
        let (mant, e10) = match sci.split_once('e') {
            Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
            None => (sci.clone(), 0),
        };
        if !(-8..=30).contains(&e10) {
            return sci;
        }
        let (neg, mant) = mant.strip_prefix('-').map(|m| (true, m.to_string())).unwrap_or((false, mant));
        let ds: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
        let point = e10 + 1;
        let s = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), ds)
        } else if point as usize >= ds.len() {
            format!("{}{}", ds, "0".repeat(point as usize - ds.len()))
        } else {
            format!("{}.{}", &ds[..point as usize], &ds[point as usize..])
        };
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }
}

/// Rounds a digit string to `n` digits, half up; may carry to `n + 1` digits.
fn round_digits(sig: &str, n: usize) -> String {
    if sig.len() <= n {
        return sig.to_string();
    }
    let mut d: Vec<u8> = sig.as_bytes()[..n].iter().map(|b| b - b'0').collect();
    if sig.as_bytes()[n] >= b'5' {
        let mut i = n;
        loop {
            if i == 0 {
                d.insert(0, 1);
                break;
            }
            i -= 1;
            if d[i] == 9 {
                d[i] = 0;
            } else {
                d[i] += 1;
                break;
            }
        }
    }
    d.iter().map(|x| (x + b'0') as char).collect()
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.p.saturating_sub(64)) as f64 / std::f64::consts::LOG2_10) as usize);
        write!(f, "{}", self.to_decimal(digits.max(1)))
    }
}

/// A complex number `re + i im`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn real(re: Real) -> Self {
        let p = re.precision();
        Complex { re, im: Real::zero(p) }
    }

    pub fn from_i64(x: i64, p: usize) -> Self {
        Complex::real(Real::from_i64(x, p))
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        Complex::new(Real::from_f64(re, p), Real::from_f64(im, p))
    }

    pub fn zero(p: usize) -> Self {
        Complex::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        Complex::from_i64(1, p)
    }

    pub fn i(p: usize) -> Self {
        Complex::new(Real::zero(p), Real::one(p))
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    /// Value of an exact ring element; `sqrt(d)` is imaginary for `d < 0`.
    pub fn from_ring(x: &RingElement, p: usize) -> Self {
        match x {
            RingElement::Int(v) => Complex::real(Real::from_bigint(v, p)),
            _ => {
                let (a, b, d) = x.parts();
                let a = Real::from_rational(&a, p);
                match d {
                    None => Complex::real(a),
                    Some(_) if b.is_zero() => Complex::real(a),
                    Some(d) if d > 0 => {
                        // a and b sqrt(d) may nearly cancel; work at the full size of both
                        let (a, b, _) = x.parts();
                        let size = |r: &BigRational| (r.numer().bits() + r.denom().bits()) as usize;
                        let q = p + size(&a).max(size(&b));
                        let v = Real::from_rational(&a, q)
                            .add(&Real::from_rational(&b, q).mul(&Real::from_i64(d, q).sqrt()));
                        Complex::real(v.with_precision(p))
                    }
                    Some(d) => Complex::new(a, Real::from_rational(&b, p).mul(&Real::from_i64(-d, p).sqrt())),
                }
            }
        }
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Complex::new(re, im)
    }

    pub fn mul_real(&self, r: &Real) -> Complex {
        Complex::new(self.re.mul(r), self.im.mul(r))
    }

    pub fn div_real(&self, r: &Real) -> Complex {
        Complex::new(self.re.div(r), self.im.div(r))
    }

    pub fn mul_i64(&self, k: i64) -> Complex {
        Complex::new(self.re.mul_i64(k), self.im.mul_i64(k))
    }

    pub fn div_i64(&self, k: i64) -> Complex {
        Complex::new(self.re.div_i64(k), self.im.div_i64(k))
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), self.im.neg())
    }

    pub fn neg(&self) -> Complex {
        Complex::new(self.re.neg(), self.im.neg())
    }

    pub fn inv(&self) -> Complex {
        let n = self.norm_sqr();
        Complex::new(self.re.div(&n), self.im.neg().div(&n))
    }

    pub fn div(&self, o: &Complex) -> Complex {
        if o.im.is_zero() {
            return self.div_real(&o.re);
        }
        self.mul(&o.inv())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn powi(&self, n: usize) -> Complex {
        let mut acc = Complex::one(self.precision());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Argument in `(-pi, pi]`.
    pub fn arg(&self) -> Real {
        let p = self.precision();
        let pi = Real::pi(p);
        if self.re.is_zero() {
            let half = pi.div_i64(2);
            return if self.im.is_negative() { half.neg() } else { half };
        }
        let t = self.im.div(&self.re).atan();
        if !self.re.is_negative() {
            t
        } else if self.im.is_negative() {
            t.sub(&pi)
        } else {
            t.add(&pi)
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Complex {
        if self.im.is_zero() {
            let r = self.re.abs().sqrt();
            return if self.re.is_negative() {
                Complex::new(Real::zero(r.precision()), r)
            } else {
                Complex::real(r)
            };
        }
        let m = self.abs();
        let re = m.add(&self.re).div_i64(2).sqrt();
        let mut im = m.sub(&self.re).div_i64(2).sqrt();
        if self.im.is_negative() {
            im = im.neg();
        }
        Complex::new(re, im)
    }

    /// Principal power `self^e` for real `e`.
    pub fn powf(&self, e: &Real) -> Complex {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs().ln().mul(e).exp();
        let t = self.arg().mul(e);
        Complex::new(r.mul(&t.cos()), r.mul(&t.sin()))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// `"a"` for real values, `"a+bi"` otherwise.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = self.re.to_decimal(digits);
        if self.im.is_zero() || self.im.abs().exponent() < self.re.abs().exponent() - (self.precision() as i64 - 8) {
            return re;
        }
        let im = self.im.to_decimal(digits);
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.precision().saturating_sub(64)) as f64 / std::f64::consts::LOG2_10) as usize);
        write!(f, "{}", self.to_decimal(digits.max(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        let p = bits_for_digits(40);
        let big: BigInt = "123456789012345678901234567890123456789012345678901234567890".parse().unwrap();
        let r = Real::from_bigint(&big, p);
        assert_eq!(r.to_sci(20), "1.234567890123456789e59");
        assert_eq!(Real::from_bigint(&BigInt::from(-12), p).to_decimal(10), "-12");
        assert_eq!(Real::from_i64(1, p).div_i64(8).to_decimal(10), "0.125");
        assert_eq!(Real::pi(p).to_decimal(12), "3.14159265359");
        let half = RingElement::quad(2, 1, 1);
        assert!((Complex::from_ring(&half, p).re.to_f64() - (1.0 + 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn complex_ops() {
        let p = bits_for_digits(40);
        let z = Complex::from_f64(3.0, 4.0, p);
        assert_eq!(z.abs().to_decimal(10), "5");
        let s = z.sqrt();
        assert_eq!(s.to_decimal(10), "2+1i");
        let w = Complex::from_f64(-4.0, 0.0, p).sqrt();
        assert_eq!(w.to_decimal(10), "0+2i");
        let q = z.div(&s);
        assert_eq!(q.to_decimal(10), "2+1i");
        let c = z.powf(&Real::from_f64(1.5, p));
        assert!((c.re.to_f64() - 2.0).abs() < 1e-12 && (c.im.to_f64() - 11.0).abs() < 1e-12);
    }
}
