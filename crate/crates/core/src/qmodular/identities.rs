//! Named q-series identities, each checked as an equality of truncated expansions.

use num_rational::BigRational;
use num_traits::Zero;

use super::{
    build_x, build_xz, check_equal, eisenstein_expand, phi, psi, rat, EisensteinKind, EtaProduct, IdentityCheck,
    QExpansion, WSpec, XSpec,
};
use crate::catalog::{self, Modular};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rings::RingElement;

const FIXED: &[&str] = &[
    "beukers_apery",
    "jacobi_phi4",
    "phi_eta",
    "psi_eta",
    "four_squares",
    "eight_squares",
    "eisenstein_p_derivative",
    "level4_X_eta",
    "level4_Z_eta",
    "level4_Z_phi4",
    "level4_inverse_X",
    "level4_Q_combination",
    "level14_hauptmodul_relation",
    "level14_cubic_relation",
    "level14_eta_products",
    "level14_z_forms",
    "level15_hauptmodul_relation",
    "level15_cubic_relation",
    "level15_eta_products",
    "level13_eta1",
    "level13_eta13",
    "level13_z_squared",
    "level13_Z2_coefficients",
    "level13_z_starred",
    "level13_change_of_variable",
    "level13_starred_diff",
    "level13_starred_ode",
    "level14_inverse_x_series",
];

const SPORADIC_ROWS: [&str; 6] = ["5", "6A", "6B", "6C", "8", "9"];

/// Every identity name understood by [`verify_identity`].
pub fn identity_names() -> Vec<String> {
    let mut v: Vec<String> = FIXED.iter().map(|s| s.to_string()).collect();
    for pre in ["wxyz", "xcov", "zcov"] {
        for r in SPORADIC_ROWS {
            v.push(format!("{pre}_{r}"));
        }
    }
    v
}

fn e(parts: &[(u32, i32)], prec: usize) -> QExpansion {
    EtaProduct::eta(parts).expand(&BigRational::from_integer(prec.into()))
}

fn int(n: i64) -> RingElement {
    RingElement::from(n)
}

fn c(n: i64, prec: usize) -> QExpansion {
    QExpansion::constant(int(n), prec)
}

fn both(a: IdentityCheck, b: impl FnOnce() -> Result<IdentityCheck>) -> Result<IdentityCheck> {
    if a.passed {
        b()
    } else {
        Ok(a)
    }
}

fn level_xz(key: &str, order: usize) -> Result<(QExpansion, QExpansion)> {
    match &catalog::get_entry(key)?.modular {
        Some(Modular::Level(m)) => build_xz(m, order + 2),
        _ => Err(Error::Invalid(format!("{key} has no level parametrisation"))),
    }
}

/// `1/w + k w` as a Laurent series.
fn inv_plus(w: &QExpansion, k: i64) -> Result<QExpansion> {
    w.inv()?.add(&w.scale(&int(k)))
}

/// Verifies the named identity to `O(q^order)`.
pub fn verify_identity(name: &str, order: usize) -> Result<IdentityCheck> {
    let pr = order + 4;
    let m = order;
    if let Some((pre, row)) = name.split_once('_') {
        if SPORADIC_ROWS.contains(&row) && matches!(pre, "wxyz" | "xcov" | "zcov") {
            return sporadic(pre, row, m, pr);
        }
    }
    match name {
        "beukers_apery" => {
            let w = e(&[(1, 12), (6, 12), (2, -12), (3, -12)], pr);
            let y = e(&[(2, 7), (3, 7), (1, -5), (6, -5)], pr);
            let a = catalog::get_entry("apery")?.recurrence().generate(pr)?;
            check_equal(&y, &w.compose_series(&a)?, m)
        }
        "jacobi_phi4" => {
            let f = phi(pr);
            let lhs = f.pow_int(4)?;
            let rhs = f.negate_q()?.pow_int(4)?.add(&psi(pr).sub_q(2).pow_int(4)?.shift(&rat(1, 1)).scale(&int(16)))?;
            check_equal(&lhs, &rhs, m)
        }
        "phi_eta" => check_equal(&phi(pr), &e(&[(2, 5), (1, -2), (4, -2)], pr), m),
        "psi_eta" => check_equal(&psi(pr).shift(&rat(1, 8)), &e(&[(2, 2), (1, -1)], pr), m),
        "four_squares" => {
            let p = eisenstein_expand(EisensteinKind::P, pr);
            let rhs = p.sub_q(4).scale(&int(4)).sub(&p)?.scale(&RingElement::rational(1, 3));
            check_equal(&phi(pr).pow_int(4)?, &rhs, m)
        }
        "eight_squares" => {
            let q = eisenstein_expand(EisensteinKind::Q, pr);
            let lhs = q.sub_q(4).scale(&int(16)).add(&q)?;
            let f = phi(pr);
            let rhs = f
                .pow_int(8)?
                .scale(&int(16))
                .add(&f.negate_q()?.pow_int(8)?)?
                .add(&psi(pr).sub_q(2).pow_int(8)?.shift(&rat(2, 1)).scale(&int(256)))?;
            check_equal(&lhs, &rhs, m)
        }
        "eisenstein_p_derivative" => {
            let p = eisenstein_expand(EisensteinKind::P, pr);
            let q = eisenstein_expand(EisensteinKind::Q, pr);
            let rhs = p.mul(&p).sub(&q)?.scale(&RingElement::rational(1, 12));
            check_equal(&p.q_deriv(), &rhs, m)
        }
        "level4_X_eta" => {
            let (x, _) = level_xz("level4", pr)?;
            check_equal(&x, &e(&[(1, 24), (4, 24), (2, -48)], pr), m)
        }
        "level4_Z_eta" => {
            let (_, z) = level_xz("level4", pr)?;
            check_equal(&z, &e(&[(2, 20), (1, -8), (4, -8)], pr), m)
        }
        "level4_Z_phi4" => {
            let (_, z) = level_xz("level4", pr)?;
            check_equal(&z, &phi(pr).pow_int(4)?, m)
        }
        "level4_inverse_X" => {
            let (x, _) = level_xz("level4", pr)?;
            let w = e(&[(4, 8), (1, -8)], pr);
            let rhs = inv_plus(&w, 256)?.add(&c(32, pr))?;
            check_equal(&x.inv()?, &rhs, m)
        }
        "level4_Q_combination" => {
            let (x, z) = level_xz("level4", pr)?;
            let q = eisenstein_expand(EisensteinKind::Q, pr);
            let lhs = q.sub_q(4).scale(&int(16)).add(&q)?;
            let z2 = z.mul(&z);
            let rhs = z2.scale(&int(17)).sub(&z2.mul(&x).scale(&int(32)))?;
            check_equal(&lhs, &rhs, m)
        }
        "level14_hauptmodul_relation" => {
            let w7 = e(&[(2, 3), (14, 3), (1, -3), (7, -3)], pr);
            let w14 = e(&[(1, 4), (14, 4), (2, -4), (7, -4)], pr);
            let rhs = inv_plus(&w14, 1)?.sub(&c(7, pr))?;
            check_equal(&inv_plus(&w7, 8)?, &rhs, m)
        }
        "level14_cubic_relation" => {
            let w2 = e(&[(7, 4), (14, 4), (1, -4), (2, -4)], pr + 3);
            let w14 = e(&[(1, 4), (14, 4), (2, -4), (7, -4)], pr + 3);
            let lhs = inv_plus(&w2, 2401)?;
            let u = w14.inv()?;
            let poly = Poly::from_ints(&[32, 48, -16, 1]);
            let rhs = u.compose_poly_laurent(&poly)?.add(&w14.compose_poly(&Poly::from_ints(&[0, 48, -16, 1]))?)?;
            check_equal(&lhs, &rhs, m)
        }
        "level14_eta_products" => {
            let target = e(&[(1, 1), (2, 1), (7, 1), (14, 1)], pr);
            let pairs: [(&[(u32, i32)], &[(u32, i32)]); 3] = [
                (&[(7, 4), (14, 4), (1, -4), (2, -4)], &[(1, 5), (2, 5), (7, -3), (14, -3)]),
                (&[(2, 3), (14, 3), (1, -3), (7, -3)], &[(1, 4), (7, 4), (2, -2), (14, -2)]),
                (&[(1, 4), (14, 4), (2, -4), (7, -4)], &[(2, 5), (7, 5), (1, -3), (14, -3)]),
            ];
            all_products(&pairs, &target, pr, m)
        }
        "level14_z_forms" => {
            let w7 = e(&[(2, 3), (14, 3), (1, -3), (7, -3)], pr);
            let w14 = e(&[(1, 4), (14, 4), (2, -4), (7, -4)], pr);
            let y7 = e(&[(1, 4), (7, 4), (2, -2), (14, -2)], pr);
            let y14 = e(&[(2, 5), (7, 5), (1, -3), (14, -3)], pr);
            let lhs = y7.mul(&w7.compose_poly(&Poly::from_ints(&[1, 0, 8]))?);
            let rhs = y14.mul(&w14.compose_poly(&Poly::from_ints(&[1, -7, 1]))?);
            check_equal(&lhs, &rhs, m)
        }
        "level15_hauptmodul_relation" => {
            let w5 = e(&[(3, 2), (15, 2), (1, -2), (5, -2)], pr);
            let w15 = e(&[(1, 3), (15, 3), (3, -3), (5, -3)], pr);
            let lhs = inv_plus(&w5, 9)?.add(&c(5, pr))?;
            check_equal(&lhs, &inv_plus(&w15, -1)?, m)
        }
        "level15_cubic_relation" => {
            let w3 = e(&[(5, 3), (15, 3), (1, -3), (3, -3)], pr + 2);
            let w5 = e(&[(3, 2), (15, 2), (1, -2), (5, -2)], pr + 2);
            let lhs = inv_plus(&w3, -125)?;
            let u = w5.inv()?;
            let rhs = u
                .compose_poly_laurent(&Poly::from_ints(&[0, 1, 1]))?
                .add(&w5.compose_poly(&Poly::from_ints(&[0, -9, -81]))?)?;
            check_equal(&lhs, &rhs, m)
        }
        "level15_eta_products" => {
            let target = e(&[(1, 1), (3, 1), (5, 1), (15, 1)], pr);
            let pairs: [(&[(u32, i32)], &[(u32, i32)]); 3] = [
                (&[(5, 3), (15, 3), (1, -3), (3, -3)], &[(1, 4), (3, 4), (5, -2), (15, -2)]),
                (&[(3, 2), (15, 2), (1, -2), (5, -2)], &[(1, 3), (5, 3), (3, -1), (15, -1)]),
                (&[(1, 3), (15, 3), (3, -3), (5, -3)], &[(3, 4), (5, 4), (1, -2), (15, -2)]),
            ];
            all_products(&pairs, &target, pr, m)
        }
        "level13_eta1" | "level13_eta13" => {
            let big = pr + 14;
            let w = e(&[(13, 2), (1, -2)], big);
            let u6 = eisenstein_expand(EisensteinKind::U13, big).pow_int(6)?;
            let den = w.compose_poly(&Poly::from_ints(&[1, 5, 13]))?.pow_int(4)?;
            let k = if name == "level13_eta1" { 1 } else { 13 };
            let rhs = u6.mul(&w.pow_int(k)?).div(&den)?;
            let lhs = if k == 1 { e(&[(1, 24)], big) } else { e(&[(13, 24)], big) };
            check_equal(&lhs, &rhs, m)
        }
        "level13_z_squared" => {
            let (_, z) = level_xz("level13", pr)?;
            let w = e(&[(13, 2), (1, -2)], pr);
            let u = eisenstein_expand(EisensteinKind::U13, pr);
            let rhs = u.mul(&u).mul(&w.compose_poly(&Poly::from_ints(&[1, 5, 13]))?);
            check_equal(&z.mul(&z), &rhs, m)
        }
        "level13_Z2_coefficients" => {
            let (x, z) = level_xz("level13", pr)?;
            let k = catalog::tables::LEVEL13_Z2.len().min(m);
            let coeffs: Vec<RingElement> = catalog::tables::LEVEL13_Z2[..k].iter().map(|&v| int(v)).collect();
            check_equal(&z.mul(&z), &x.compose_series(&coeffs)?, k)
        }
        "level13_z_starred" => {
            let (xs, zs) = starred(pr)?;
            let big = pr + 2;
            let num = e(&[(1, 2), (13, 2)], big);
            let one_minus = c(1, big).sub(&xs)?;
            let rhs = num.mul(&one_minus.pow_rational(&rat(2, 3))?).div(&xs.pow_rational(&rat(7, 6))?)?;
            check_equal(&zs, &rhs, m)
        }
        "level13_change_of_variable" => {
            let (x, z) = level_xz("level13", pr)?;
            let (xs, zs) = starred(pr)?;
            let one_minus = c(1, pr + 2).sub(&xs)?;
            let first = check_equal(&x, &xs.div(&one_minus)?, m)?;
            both(first, || check_equal(&z.mul(&z), &one_minus.mul(&zs).mul(&zs), m))
        }
        "level13_starred_diff" => {
            let (xs, zs) = starred(pr)?;
            super::verify_diff_formula(&Poly::from_ints(&[1, -12, -16]), &xs, &zs, m)
        }
        "level13_starred_ode" => {
            let (xs, zs) = starred(pr)?;
            let num = Poly::from_ints(&[0, 2, 10, -6, 6]);
            let den = Poly::from_ints(&[1, -2, 1]);
            super::verify_ode_rational(&num, &den, &xs, &zs, m)
        }
        "level14_inverse_x_series" => {
            let w7 = e(&[(2, 3), (14, 3), (1, -3), (7, -3)], pr);
            let lhs = inv_plus(&w7, 8)?;
            let reference = QExpansion::from_ints(rat(-1, 1), &catalog::tables::LEVEL14_INVERSE_X);
            let k = (catalog::tables::LEVEL14_INVERSE_X.len() - 1).min(m);
            check_equal(&lhs.truncate(&rat(k as i64, 1)), &reference.truncate(&rat(k as i64, 1)), k)
        }
        _ => Err(Error::Invalid(format!("unknown identity {name:?}"))),
    }
}

fn all_products(
    pairs: &[(&[(u32, i32)], &[(u32, i32)])],
    target: &QExpansion,
    pr: usize,
    m: usize,
) -> Result<IdentityCheck> {
    for (w, y) in pairs {
        let r = check_equal(&e(w, pr + 3).mul(&e(y, pr + 3)), target, m)?;
        if !r.passed {
            return Ok(r);
        }
    }
    check_equal(target, target, m)
}

/// `X* = w/(1 + 6w + 13w^2)` and `Z* = (13 P(q^13) - P(q)) / 12`.
fn starred(pr: usize) -> Result<(QExpansion, QExpansion)> {
    let w = WSpec::Eta(EtaProduct::eta(&[(13, 2), (1, -2)]));
    let xs = build_x(&XSpec::Hauptmodul { w, den: Poly::from_ints(&[1, 6, 13]) }, pr + 2)?;
    let p = eisenstein_expand(EisensteinKind::P, pr + 1);
    let zs = p.sub_q(13).scale(&int(13)).sub(&p)?.scale(&RingElement::rational(1, 12));
    Ok((xs, zs))
}

fn sporadic(pre: &str, row: &str, m: usize, pr: usize) -> Result<IdentityCheck> {
    let one = catalog::get_entry(&format!("zagier{row}"))?;
    let two = catalog::get_entry(&format!("apery{row}"))?;
    let [a, _, g] = one.abc.clone().unwrap();
    let p = BigRational::from_integer(pr.into());
    let (Some(Modular::WeightOne(m1)), Some(Modular::WeightTwo(m2))) = (&one.modular, &two.modular) else {
        return Err(Error::Invalid(format!("row {row} lacks modular data")));
    };
    let x = m1.x.expand(&p);
    let z = m1.z.expand(&p);
    let w = m2.w.expand(&p);
    let y = m2.y.expand(&p);
    match pre {
        "wxyz" => {
            let f = x.compose_poly(&Poly::new(vec![RingElement::one(), -&a, -&g]))?;
            let first = check_equal(&w, &x.div(&f)?, m)?;
            both(first, || check_equal(&y, &f.mul(&z).mul(&z), m))
        }
        _ => {
            let (xl, zl) = level_xz(&format!("level{row}"), m + 2)?;
            if pre == "xcov" {
                // (1 + a w)^2 + 4 g w^2
                let den = Poly::new(vec![
                    RingElement::one(),
                    a.mul_int(&2.into()),
                    &(&a * &a) + &g.mul_int(&4.into()),
                ]);
                check_equal(&xl, &w.div(&w.compose_poly(&den)?)?, m)
            } else {
                check_equal(&xl.mul(&zl).mul(&zl), &w.mul(&y).mul(&y), m)
            }
        }
    }
}

impl QExpansion {
    /// `p(self)` for a series of negative offset, such as `1/w`.
    pub fn compose_poly_laurent(&self, p: &Poly) -> Result<QExpansion> {
        let mut acc: Option<QExpansion> = None;
        for (k, ck) in p.coeffs().iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let term = if k == 0 {
                let prec = self.precision().min(self.pow_int(p.coeffs().len() as i64 - 1)?.precision());
                let n = prec.ceil().to_integer();
                if n <= num_bigint::BigInt::zero() {
                    QExpansion::zero(prec)
                } else {
                    QExpansion::constant(ck.clone(), n.try_into().unwrap_or(0))
                }
            } else {
                self.pow_int(k as i64)?.scale(ck)
            };
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        Ok(acc.unwrap_or_else(|| QExpansion::zero(BigRational::zero())))
    }
}
