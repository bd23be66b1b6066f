//! Dense univariate polynomials over [`RingElement`].

use std::fmt;

use num_bigint::BigInt;

use crate::rings::RingElement;

/// Polynomial `c[0] + c[1] x + ...`, trimmed so the top coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<RingElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<RingElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| RingElement::from(x)).collect())
    }

    pub fn constant(c: RingElement) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::from_ints(&[1])
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs.get(i).cloned().unwrap_or_else(RingElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &RingElement) -> RingElement {
        let mut acc = RingElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_int(&self, n: i64) -> RingElement {
        self.eval(&RingElement::from(n))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![RingElement::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &RingElement) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &RingElement) -> Poly {
        let lin = Poly::new(vec![c.clone(), RingElement::one()]);
        self.compose(&lin)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// `x p'(x)`.
    pub fn theta(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.mul_int(&BigInt::from(i)))
                .collect(),
        )
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_int(&BigInt::from(i)))
                .collect(),
        )
    }

    /// `p(c x)`.
    pub fn scale_var(&self, c: &RingElement) -> Poly {
        let mut pw = RingElement::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw = &pw * c;
        }
        Poly::new(out)
    }

    pub fn conj(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(RingElement::conj).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = Poly::from_ints(&[1, 1]);
        let q = p.mul(&p);
        assert_eq!(q, Poly::from_ints(&[1, 2, 1]));
        assert_eq!(q.eval_int(3), RingElement::from(16));
        assert_eq!(p.shift(&RingElement::from(1)), Poly::from_ints(&[2, 1]));
        assert_eq!(q.sub(&q), Poly::zero());
        assert_eq!(q.theta(), Poly::from_ints(&[0, 2, 2]));
        assert_eq!(Poly::from_ints(&[0, 0, 0]).degree(), None);
    }
}
