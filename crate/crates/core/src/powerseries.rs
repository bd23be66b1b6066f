//! Truncated formal power series in one variable, and the generating-function
//! identities relating the weight-one, weight-two and level sequences.

use crate::catalog::{tables, EpsilonFamily};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::recurrence::RecurrenceSpec;
use crate::rings::{RingElement, RingTag};

/// `c_0 + c_1 x + ... + c_{N-1} x^{N-1} + O(x^N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries {
    coeffs: Vec<RingElement>,
}

impl FormalSeries {
    /// Series known modulo `x^order`; extra coefficients are dropped, missing ones are zero.
    pub fn new(mut coeffs: Vec<RingElement>, order: usize) -> Self {
        coeffs.resize(order, RingElement::zero());
        FormalSeries { coeffs: coeffs.into_iter().map(RingElement::normalized).collect() }
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Self::new(p.coeffs().to_vec(), order)
    }

    pub fn from_ints(c: &[i64], order: usize) -> Self {
        Self::new(c.iter().map(|&v| RingElement::from(v)).collect(), order)
    }

    /// The variable `x`.
    pub fn x(order: usize) -> Self {
        Self::from_ints(&[0, 1], order)
    }

    pub fn one(order: usize) -> Self {
        Self::from_ints(&[1], order)
    }

    /// Truncation order `N`: the error term is `O(x^N)`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs.get(i).cloned().unwrap_or_else(RingElement::zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(), n)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..n).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect(), n)
    }

    pub fn scale(&self, c: &RingElement) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.order())
    }

    /// Product, known to the smaller order shifted by the other factor's valuation.
    pub fn mul(&self, o: &Self) -> Self {
        let va = self.valuation().unwrap_or(self.order());
        let vb = o.valuation().unwrap_or(o.order());
        let n = (self.order() + vb).min(o.order() + va);
        let mut out = vec![RingElement::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(out, n)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![RingElement::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, self.order() + k)
    }

    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs.first().filter(|c| !c.is_zero()).ok_or_else(|| {
            Error::Invalid("series with zero constant term is not invertible; shift the valuation first".into())
        })?;
        let b0 = RingElement::one().try_div(c0)?;
        let n = self.order();
        let mut out: Vec<RingElement> = vec![b0.clone()];
        for k in 1..n {
            let mut s = RingElement::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s = &s + &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(-(&s * &b0));
        }
        Ok(Self::new(out, n))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self(inner)`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::Invalid("inner series must have zero constant term".into()));
        }
        let n = self.order().min(inner.order());
        let inner = Self::new(inner.coeffs.clone(), n);
        let mut acc = Self::new(Vec::new(), n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(&inner).add(&Self::new(vec![c.clone()], n));
        }
        Ok(acc)
    }
}

/// Outcome of a series identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCheck {
    pub passed: bool,
    pub order: usize,
    pub first_mismatch: Option<usize>,
}

fn compare(a: &FormalSeries, b: &FormalSeries, n: usize) -> Result<SeriesCheck> {
    if a.order() < n || b.order() < n {
        return Err(Error::Invalid(format!("series known only to O(x^{})", a.order().min(b.order()))));
    }
    let first = (0..n).find(|&i| a.coeff(i) != b.coeff(i));
    Ok(SeriesCheck { passed: first.is_none(), order: n, first_mismatch: first })
}

fn ring_for(params: &[&RingElement]) -> Result<RingTag> {
    params.iter().try_fold(RingTag::Q, |acc, p| acc.join(p.tag()))
}

/// Checks `x (sum t(n) x^n)^2 = sum s(n) (x/(1 - a x - c x^2))^{n+1}` to `O(x^n)`.
pub fn verify_asz(a: &RingElement, b: &RingElement, c: &RingElement, n: usize) -> Result<SeriesCheck> {
    let ring = ring_for(&[a, b, c])?;
    let t = FormalSeries::new(RecurrenceSpec::weight_one(a, b, c, ring).generate(n)?, n);
    let s = RecurrenceSpec::asz(a, b, c, ring).generate(n)?;
    let lhs = t.mul(&t).shift(1);
    let denom = FormalSeries::from_poly(&Poly::new(vec![RingElement::one(), -a, -c]), n);
    let u = FormalSeries::x(n).div(&denom)?;
    let outer = FormalSeries::new(s, n).shift(1);
    compare(&lhs, &outer.compose(&u)?, n)
}

/// Checks `(sum t x^n)^2 = (1 + c x^2)^{-1} sum C(2n,n) t(n) (x(1 - a x - c x^2)/(1 + c x^2)^2)^n` to `O(x^n)`.
pub fn verify_ctyz(a: &RingElement, b: &RingElement, c: &RingElement, n: usize) -> Result<SeriesCheck> {
    let ring = ring_for(&[a, b, c])?;
    let t = FormalSeries::new(RecurrenceSpec::weight_one(a, b, c, ring).generate(n)?, n);
    let big = FormalSeries::new(RecurrenceSpec::ctyz(a, b, c, ring).generate(n)?, n);
    let one_c = FormalSeries::from_poly(&Poly::new(vec![RingElement::one(), RingElement::zero(), c.clone()]), n);
    let num = FormalSeries::from_poly(&Poly::new(vec![RingElement::zero(), RingElement::one(), -a, -c]), n);
    let v = num.div(&one_c.mul(&one_c))?;
    let rhs = big.compose(&v)?.div(&one_c)?;
    compare(&t.mul(&t), &rhs, n)
}

/// Result of [`verify_gf_independence`].
#[derive(Clone, Debug, PartialEq)]
pub struct GfReport {
    pub level: u32,
    pub passed: bool,
    pub order: usize,
    /// Common series, coefficients of `w^0 .. w^{order-1}`.
    pub series: Vec<RingElement>,
    /// Mismatch as `(key, index)`; key `"reference"` refers to the reference expansion.
    pub first_mismatch: Option<(String, usize)>,
}

/// `sum T_eps(n) (w/(1 + eps w + sigma w^2))^{n+1}` for one `eps`, to `O(w^n)`.
pub fn epsilon_gf(family: &EpsilonFamily, eps: &RingElement, n: usize) -> Result<FormalSeries> {
    let terms = family.specialize(eps).to_recurrence()?.generate(n)?;
    let den = FormalSeries::from_poly(
        &Poly::new(vec![RingElement::one(), eps.clone(), RingElement::from(family.sigma())]),
        n,
    );
    let u = FormalSeries::x(n).div(&den)?;
    FormalSeries::new(terms, n).shift(1).compose(&u)
}

/// Checks that the special values of a family share one generating function.
pub fn verify_gf_independence(level: u32, n: usize) -> Result<GfReport> {
    let family = EpsilonFamily::new(level)?;
    let specials = family.special_epsilons();
    let mut base: Option<FormalSeries> = None;
    let mut mismatch = None;
    for (eps, key) in &specials {
        let s = epsilon_gf(&family, eps, n)?;
        match &base {
            None => base = Some(s),
            Some(b) => {
                let r = compare(b, &s, n)?;
                if let Some(i) = r.first_mismatch {
                    mismatch.get_or_insert((key.to_string(), i));
                }
            }
        }
    }
    let base = base.expect("four special values");
    let known: &[i64] = if level == 14 { &tables::GF_SERIES_14 } else { &tables::GF_SERIES_15 };
    let reference = FormalSeries::from_ints(&[&[0][..], known].concat(), n.max(known.len() + 1));
    let k = n.min(known.len() + 1);
    if mismatch.is_none() {
        if let Some(i) = compare(&base, &reference, k)?.first_mismatch {
            mismatch = Some(("reference".into(), i));
        }
    }
    Ok(GfReport {
        level,
        passed: mismatch.is_none(),
        order: n,
        series: base.coeffs().to_vec(),
        first_mismatch: mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> RingElement {
        RingElement::from(v)
    }

    #[test]
    fn arithmetic() {
        let a = FormalSeries::from_ints(&[1, 1], 5);
        let b = FormalSeries::from_ints(&[1, -1], 5);
        assert_eq!(a.mul(&b), FormalSeries::from_ints(&[1, 0, -1], 5));
        let g = FormalSeries::one(5).div(&b).unwrap();
        assert_eq!(g, FormalSeries::from_ints(&[1, 1, 1, 1, 1], 5));
        let d = FormalSeries::from_ints(&[1, -7, -8], 4);
        let u = FormalSeries::x(4).div(&d).unwrap();
        assert_eq!(u, FormalSeries::from_ints(&[0, 1, 7, 57], 4));
        assert!(FormalSeries::x(3).inv().is_err());
    }

    #[test]
    fn composition() {
        let geo = FormalSeries::from_ints(&[1; 8], 8);
        let x2 = FormalSeries::from_ints(&[0, 0, 1], 8);
        assert_eq!(geo.compose(&x2).unwrap(), FormalSeries::from_ints(&[1, 0, 1, 0, 1, 0, 1, 0], 8));
        let f = FormalSeries::from_ints(&[0, 2, 3, 5], 6);
        assert_eq!(FormalSeries::x(6).compose(&f).unwrap(), f);
        assert!(geo.compose(&FormalSeries::one(8)).is_err());
    }

    #[test]
    fn clausen_type_identities() {
        assert!(verify_asz(&r(-17), &r(-6), &r(-72), 30).unwrap().passed);
        assert!(verify_asz(&r(1), &r(1), &r(1), 10).unwrap().passed);
        assert!(verify_ctyz(&r(7), &r(2), &r(8), 30).unwrap().passed);
        assert!(verify_ctyz(&r(1), &r(1), &r(0), 10).unwrap().passed);
    }
}
