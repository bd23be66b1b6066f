//! Sequence catalog: weight-one triples, their weight-two companions, the
//! level rows with `(G, H)` and modular `(X, Z)` data, the two epsilon
//! families, and reference tables.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::binomial::{level as lv, weight_one as w1, weight_two as w2};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::qmodular::{
    rat, EtaProduct, LevelModular, PochFactor, ThetaSpec, WSpec, WeightOneModular, WeightTwoModular, XSpec,
    ZSpec,
};
use crate::recurrence::RecurrenceSpec;
use crate::rings::{sqrt_rational, RingElement, RingTag};

/// Kind of catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    /// Quadratic three-term relation in `(alpha, beta, gamma)`.
    Weight1,
    /// Cubic companion of a weight-one triple.
    Weight2,
    /// Sequence defined by `(G, H)` with a modular `(X, Z)` parametrisation.
    LevelXZ,
}

/// Modular parametrisation attached to an entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Modular {
    WeightOne(WeightOneModular),
    WeightTwo(WeightTwoModular),
    Level(LevelModular),
}

/// One catalog row.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub kind: EntryKind,
    pub ring: RingTag,
    /// `(alpha, beta, gamma)` for weight-one and weight-two entries.
    pub abc: Option<[RingElement; 3]>,
    /// `G` and `H`; absent for weight-one entries.
    pub gh: Option<(Poly, Poly)>,
    pub level: Option<String>,
    pub modular: Option<Modular>,
    pub oracle: Option<fn(u64) -> BigInt>,
    pub oeis: Option<&'static str>,
    pub note: Option<&'static str>,
}

impl CatalogEntry {
    pub fn recurrence(&self) -> RecurrenceSpec {
        match (&self.gh, &self.abc) {
            (Some((g, h)), _) => RecurrenceSpec::from_gh(g, h, self.ring).expect("catalog G, H are normalised"),
            (None, Some([a, b, c])) => RecurrenceSpec::weight_one(a, b, c, self.ring),
            _ => unreachable!("entry without recurrence data"),
        }
    }

    pub fn to_def(&self) -> SequenceDef {
        let strs = |p: &Poly| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        SequenceDef {
            name: self.key.clone(),
            ring: self.ring.to_string(),
            g: self.gh.as_ref().map(|(g, _)| strs(g)),
            h: self.gh.as_ref().map(|(_, h)| strs(h)),
            abc: self.abc.as_ref().map(|t| t.iter().map(|c| c.to_string()).collect()),
            level: self.level.clone(),
        }
    }
}

/// Serialisable sequence definition.
///
/// Either `G` and `H` or `abc` (a weight-one triple) must be present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDef {
    pub name: String,
    pub ring: String,
    #[serde(rename = "G", default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abc: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<String>,
}

fn parse_poly(v: &[String]) -> Result<Poly> {
    Ok(Poly::new(v.iter().map(|s| s.parse()).collect::<Result<Vec<RingElement>>>()?))
}

impl SequenceDef {
    pub fn ring_tag(&self) -> Result<RingTag> {
        self.ring.parse()
    }

    pub fn gh(&self) -> Result<Option<(Poly, Poly)>> {
        match (&self.g, &self.h) {
            (Some(g), Some(h)) => Ok(Some((parse_poly(g)?, parse_poly(h)?))),
            (None, None) => Ok(None),
            _ => Err(Error::Parse("G and H must be given together".into())),
        }
    }

    pub fn to_recurrence(&self) -> Result<RecurrenceSpec> {
        let ring = self.ring_tag()?;
        if let Some((g, h)) = self.gh()? {
            return RecurrenceSpec::from_gh(&g, &h, ring);
        }
        match &self.abc {
            Some(v) if v.len() == 3 => {
                let t: Vec<RingElement> = v.iter().map(|s| s.parse()).collect::<Result<_>>()?;
                Ok(RecurrenceSpec::weight_one(&t[0], &t[1], &t[2], ring))
            }
            _ => Err(Error::Parse(format!("{}: needs G and H or a three-element abc", self.name))),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }
}

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

fn prod(ps: &[&[i64]]) -> Poly {
    ps.iter().fold(Poly::one(), |acc, c| acc.mul(&p(c)))
}

/// Polynomial with coefficients `n/d`.
fn pq(c: &[(i64, i64)]) -> Poly {
    Poly::new(c.iter().map(|&(n, d)| RingElement::rational(n, d)).collect())
}

fn eta(parts: &[(u32, i32)]) -> EtaProduct {
    EtaProduct::eta(parts)
}

fn haupt(w: &[(u32, i32)], den: Poly) -> XSpec {
    XSpec::Hauptmodul { w: WSpec::Eta(eta(w)), den }
}

fn zs(numer: &[(u32, i32)], num: i64, den: i64) -> ZSpec {
    ZSpec { numer: eta(numer), x_power: rat(num, den) }
}

fn ints(v: [i64; 3]) -> [RingElement; 3] {
    v.map(RingElement::from)
}

/// `1 + 2 a w + (a^2 + 4 c) w^2` and `(2b - a) w - (a^2 + 4c) w^2 / 2`.
pub fn weight_two_gh(a: &RingElement, b: &RingElement, c: &RingElement) -> (Poly, Poly) {
    let two = BigInt::from(2);
    let disc = &(a * a) + &c.mul_int(&BigInt::from(4));
    let g = Poly::new(vec![RingElement::one(), a.mul_int(&two), disc.clone()]);
    let h = Poly::new(vec![RingElement::zero(), &b.mul_int(&two) - a, -disc.div_int(&two)]);
    (g, h)
}

struct Sporadic {
    row: &'static str,
    abc: [i64; 3],
    x: EtaProduct,
    z: EtaProduct,
    w: EtaProduct,
    y: EtaProduct,
    t: fn(u64) -> BigInt,
    s: fn(u64) -> BigInt,
    oeis: (&'static str, &'static str),
}

fn poch(a: u32, step: u32, exp: i32) -> PochFactor {
    PochFactor { a, step, exp }
}

fn sporadic() -> Vec<Sporadic> {
    vec![
        Sporadic {
            row: "5",
            abc: [11, 3, 1],
            x: EtaProduct::new(
                rat(1, 1),
                vec![poch(1, 5, 5), poch(4, 5, 5), poch(2, 5, -5), poch(3, 5, -5)],
            ),
            z: EtaProduct::new(rat(0, 1), vec![poch(1, 1, 2), poch(1, 5, -5), poch(4, 5, -5)]),
            w: eta(&[(5, 6), (1, -6)]),
            y: eta(&[(1, 5), (5, -1)]),
            t: w1::level5,
            s: w2::level5,
            oeis: ("A005258", "A229111"),
        },
        Sporadic {
            row: "6A",
            abc: [-17, -6, -72],
            x: eta(&[(2, 1), (6, 5), (1, -5), (3, -1)]),
            z: eta(&[(1, 6), (6, 1), (2, -3), (3, -2)]),
            w: eta(&[(1, 12), (6, 12), (2, -12), (3, -12)]),
            y: eta(&[(2, 7), (3, 7), (1, -5), (6, -5)]),
            t: w1::level6a,
            s: w2::level6a,
            oeis: ("A093388", "A005259"),
        },
        Sporadic {
            row: "6B",
            abc: [10, 3, -9],
            x: eta(&[(1, 4), (6, 8), (2, -8), (3, -4)]),
            z: eta(&[(2, 6), (3, 1), (1, -3), (6, -2)]),
            w: eta(&[(2, 6), (6, 6), (1, -6), (3, -6)]),
            y: eta(&[(1, 4), (3, 4), (2, -2), (6, -2)]),
            t: w1::level6b,
            s: w2::level6b,
            oeis: ("A002893", "A002895"),
        },
        Sporadic {
            row: "6C",
            abc: [7, 2, 8],
            x: eta(&[(1, 3), (6, 9), (2, -3), (3, -9)]),
            z: eta(&[(2, 1), (3, 6), (1, -2), (6, -3)]),
            w: eta(&[(3, 4), (6, 4), (1, -4), (2, -4)]),
            y: eta(&[(1, 3), (2, 3), (3, -1), (6, -1)]),
            t: w1::level6c,
            s: w2::level6c,
            oeis: ("A000172", "A125143"),
        },
        Sporadic {
            row: "8",
            abc: [-12, -4, -32],
            x: eta(&[(2, 2), (8, 4), (1, -4), (4, -2)]),
            z: eta(&[(1, 4), (2, -2)]),
            w: eta(&[(1, 8), (8, 8), (2, -8), (4, -8)]),
            y: eta(&[(2, 6), (4, 6), (1, -4), (8, -4)]),
            t: w1::level8,
            s: w2::level8,
            oeis: ("A081085", "A290575"),
        },
        Sporadic {
            row: "9",
            abc: [-9, -3, -27],
            x: eta(&[(9, 3), (1, -3)]),
            z: eta(&[(1, 3), (3, -1)]),
            w: eta(&[(1, 6), (9, 6), (3, -12)]),
            y: eta(&[(3, 10), (1, -3), (9, -3)]),
            t: w1::level9,
            s: w2::level9,
            oeis: ("A291898", "A290576"),
        },
    ]
}

struct LevelRow {
    row: &'static str,
    g: Poly,
    h: Poly,
    x: XSpec,
    z: ZSpec,
    ring: RingTag,
    oracle: Option<fn(u64) -> BigInt>,
}

#[rustfmt::skip]
fn level_rows() -> Vec<LevelRow> {
    use RingTag::{Q, Z};
    let sq = |c: i64| p(&[1, c]).pow(2);
    let w14 = [(1, 4), (14, 4), (2, -4), (7, -4)];
    let w15 = [(3, 2), (15, 2), (1, -2), (5, -2)];
    let z6 = [(1, 1), (2, 1), (3, 1), (6, 1)];
    let z14 = [(1, 1), (2, 1), (7, 1), (14, 1)];
    let z15 = [(1, 1), (3, 1), (5, 1), (15, 1)];
    let row = |row, g, h, x, z, ring, oracle| LevelRow { row, g, h, x, z, ring, oracle };
    vec![
        // 1
        row("1", p(&[1, -1728]), p(&[0, 120]),
            XSpec::Hauptmodul { w: WSpec::Level1, den: sq(432) }, zs(&[(1, 4)], 1, 6), Z, Some(lv::level1 as fn(u64) -> BigInt)),
        // 2
        row("2", p(&[1, -256]), p(&[0, 24]), haupt(&[(2, 24), (1, -24)], sq(64)), zs(&[(1, 2), (2, 2)], 1, 4), Z, Some(lv::level2)),
        // 3
        row("3", p(&[1, -108]), p(&[0, 12]), haupt(&[(3, 12), (1, -12)], sq(27)), zs(&[(1, 2), (3, 2)], 1, 3), Z, Some(lv::level3)),
        // 4
        row("4", p(&[1, -64]), p(&[0, 8]), haupt(&[(4, 8), (1, -8)], sq(16)), zs(&[(1, 2), (4, 2)], 5, 12), Z, Some(lv::level4)),
        // 5
        row("5", p(&[1, -44, -16]), p(&[0, 6, 6]), haupt(&[(5, 6), (1, -6)], p(&[1, 22, 125])), zs(&[(1, 2), (5, 2)], 1, 2), Z, Some(lv::level5)),
        // 6A
        row("6A", prod(&[&[1, 32], &[1, 36]]), p(&[0, -12, -432]),
            haupt(&[(1, 12), (6, 12), (2, -12), (3, -12)], p(&[1, -34, 1])), zs(&z6, 1, 2), Z, Some(lv::level6a)),
        // 6B
        row("6B", prod(&[&[1, -4], &[1, -36]]), p(&[0, 6, -54]),
            haupt(&[(2, 6), (6, 6), (1, -6), (3, -6)], p(&[1, 20, 64])), zs(&z6, 1, 2), Z, Some(lv::level6b)),
        // 6C
        row("6C", prod(&[&[1, 4], &[1, -32]]), p(&[0, 4, 48]),
            haupt(&[(3, 4), (6, 4), (1, -4), (2, -4)], p(&[1, 14, 81])), zs(&z6, 1, 2), Z, Some(lv::level6c)),
        // 7
        row("7", prod(&[&[1, 1], &[1, -27]]), p(&[0, 4, 12]), haupt(&[(7, 4), (1, -4)], p(&[1, 13, 49])), zs(&[(1, 2), (7, 2)], 2, 3), Z, Some(lv::level7)),
        // 8: X = w/(1 - 24w + 16w^2); without the numerator w, X would not vanish at q = 0
        row("8", prod(&[&[1, 16], &[1, 32]]), p(&[0, -8, -192]),
            haupt(&[(1, 8), (8, 8), (2, -8), (4, -8)], p(&[1, -24, 16])), zs(&[(2, 2), (4, 2)], 1, 2), Z, Some(lv::level8)),
        // 9
        row("9", p(&[1, 36, 432]), p(&[0, -6, -162]),
            haupt(&[(1, 6), (9, 6), (3, -12)], p(&[1, -18, -27])), zs(&[(3, 4)], 1, 2), Z, Some(lv::level9)),
        // 10
        row("10", prod(&[&[1, 4], &[1, -16]]), p(&[0, 2, 30]),
            haupt(&[(2, 4), (10, 4), (1, -4), (5, -4)], sq(4)), zs(&[(1, 1), (2, 1), (5, 1), (10, 1)], 3, 4), Z, Some(lv::level10)),
        // 11
        row("11", p(&[1, -20, 56, -44]), p(&[0, 4, -32, 44]),
            XSpec::ThetaQuotient { numer: eta(&[(1, 1), (11, 1)]), coeff: 1, thetas: vec![ThetaSpec { a: 1, b: 1, c: 3 }], power: 2 },
            zs(&[(1, 2), (11, 2)], 1, 1), Z, None),
        // 12
        row("12", prod(&[&[1, -4], &[1, -16]]), p(&[0, 4, -32]),
            haupt(&[(1, 4), (12, 4), (3, -4), (4, -4)], sq(1)), zs(&[(1, 1), (3, 1), (4, 1), (12, 1)], 5, 6), Z, Some(lv::level12)),
        // 13
        row("13", prod(&[&[1, 1], &[1, -10, -27]]), pq(&[(0, 1), (12, 8), (175, 8), (231, 8)]),
            haupt(&[(13, 2), (1, -2)], p(&[1, 5, 13])), zs(&[(1, 2), (13, 2)], 7, 6), Q, None),
        // 14A
        row("14A", prod(&[&[1, 4], &[1, -10, -7]]), pq(&[(0, 1), (1, 1), (51, 2), (28, 1)]),
            haupt(&w14, sq(-1)), zs(&z14, 1, 1), Z, Some(lv::level14a)),
        // 14B
        row("14B", prod(&[&[1, -4], &[1, -18, 49]]), pq(&[(0, 1), (5, 1), (-141, 2), (196, 1)]),
            haupt(&w14, sq(1)), zs(&z14, 1, 1), Z, None),
        // 15A
        row("15A", prod(&[&[1, -12], &[1, -2, 5]]), pq(&[(0, 1), (3, 1), (-33, 2), (60, 1)]),
            haupt(&w15, sq(3)), zs(&z15, 1, 1), Z, None),
        // 15B
        row("15B", prod(&[&[1, 12], &[1, 22, 125]]), pq(&[(0, 1), (-9, 1), (-465, 2), (-1500, 1)]),
            haupt(&w15, sq(-3)), zs(&z15, 1, 1), Z, None),
        // 18
        row("18", prod(&[&[1, -12], &[1, -16]]), p(&[0, 6, -90]),
            haupt(&[(1, 2), (2, 2), (9, 2), (18, 2), (3, -4), (6, -4)], sq(3)), zs(&[(3, 2), (6, 2)], 3, 4), Z, Some(lv::level18)),
        // 20
        row("20", prod(&[&[1, -4], &[1, -12, 16]]), p(&[0, 4, -40, 72]),
            haupt(&[(1, 2), (20, 2), (4, -2), (5, -2)], sq(1)), zs(&[(2, 2), (10, 2)], 1, 1), Z, None),
        // 21
        row("21", prod(&[&[1, 4], &[1, -2, -27]]), pq(&[(0, 1), (-1, 1), (47, 2), (120, 1)]),
            haupt(&[(1, 2), (21, 2), (3, -2), (7, -2)], sq(-1)), zs(&[(1, 1), (3, 1), (7, 1), (21, 1)], 4, 3), Z, None),
        // 22
        row("22", prod(&[&[1, -8], &[1, 0, -4, 4]]), p(&[0, 2, 2, -44, 60]),
            haupt(&[(2, 2), (22, 2), (1, -2), (11, -2)], sq(2)), zs(&[(1, 1), (2, 1), (11, 1), (22, 1)], 3, 2), Z, None),
        // 23
        row("23", prod(&[&[1, 0, -1, 1], &[1, -8, 3, -7]]), p(&[0, 2, -2, -2, 24, -30, 28]),
            XSpec::ThetaQuotient {
                numer: eta(&[(1, 1), (23, 1)]), coeff: 2,
                thetas: vec![ThetaSpec { a: 1, b: 1, c: 6 }, ThetaSpec { a: 2, b: 1, c: 3 }], power: 1,
            },
            zs(&[(1, 2), (23, 2)], 2, 1), Z, None),
        // 24
        row("24", prod(&[&[1, 4], &[1, -4], &[1, -8]]), p(&[0, 2, 10, -128]),
            haupt(&[(1, 2), (3, 2), (8, 2), (24, 2), (2, -2), (4, -2), (6, -2), (12, -2)], p(&[1, 0, 4])),
            zs(&[(2, 1), (4, 1), (6, 1), (12, 1)], 1, 1), Z, Some(lv::level24)),
        // 33
        row("33", prod(&[&[1, -2, -11], &[1, 4, 8, 4]]), pq(&[(0, 1), (-1, 1), (15, 2), (76, 1), (202, 1), (132, 1)]),
            haupt(&[(3, 1), (33, 1), (1, -1), (11, -1)], p(&[1, 1, 3])), zs(&[(1, 1), (3, 1), (11, 1), (33, 1)], 2, 1), Z, None),
        // 35
        row("35", prod(&[&[1, -2, 5], &[1, -8, 16, -28]]), pq(&[(0, 1), (3, 1), (-61, 2), (148, 1), (-290, 1), (420, 1)]),
            haupt(&[(1, 1), (35, 1), (5, -1), (7, -1)], p(&[1, 1, -1])), zs(&[(1, 1), (5, 1), (7, 1), (35, 1)], 2, 1), Z, None),
    ]
}

/// One of the two one-parameter families at levels 14 and 15.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonFamily {
    pub level: u32,
}

impl EpsilonFamily {
    pub fn new(level: u32) -> Result<Self> {
        match level {
            14 | 15 => Ok(EpsilonFamily { level }),
            _ => Err(Error::Invalid(format!("no epsilon family at level {level}"))),
        }
    }

    /// Coefficient of `w^2` in `1 + eps w + sigma w^2`.
    pub fn sigma(&self) -> i64 {
        if self.level == 14 {
            8
        } else {
            -1
        }
    }

    fn e(eps: &RingElement, k: i64) -> RingElement {
        eps - &RingElement::from(k)
    }

    /// `B_eps^2` as a polynomial in `X`.
    pub fn g(&self, eps: &RingElement) -> Poly {
        let one = RingElement::one();
        let lin = |r: RingElement| Poly::new(vec![one.clone(), -r]);
        let eps2 = eps * eps;
        let (r1, r2, c) = if self.level == 14 {
            (Self::e(eps, 9), Self::e(eps, 5), &eps2 - &RingElement::from(32))
        } else {
            (Self::e(eps, 1), eps + &RingElement::from(11), &eps2 + &RingElement::from(4))
        };
        let quad = Poly::new(vec![one.clone(), -eps.mul_int(&BigInt::from(2)), c]);
        lin(r1).mul(&lin(r2)).mul(&quad)
    }

    /// `H_eps` as a polynomial in `X`.
    pub fn h(&self, eps: &RingElement) -> Poly {
        let f = |c: &[i64]| Poly::from_ints(c).eval(eps);
        let (c1, c2, c3) = if self.level == 14 {
            (f(&[-4, 1]), f(&[24, -50, 7]), f(&[448, 26, -42, 4]))
        } else {
            (f(&[2, 1]), f(&[-8, 34, 7]), f(&[40, -14, 30, 4]))
        };
        let lead = self.top(eps);
        Poly::new(vec![
            RingElement::zero(),
            c1,
            -c2.div_int(&BigInt::from(2)),
            c3,
            -(&lead * &RingElement::rational(3, 2)),
        ])
    }

    /// `(eps - 9)(eps - 5)(eps^2 - 32)` or `(eps - 1)(eps + 11)(eps^2 + 4)`.
    fn top(&self, eps: &RingElement) -> RingElement {
        let e2 = eps * eps;
        if self.level == 14 {
            &(&Self::e(eps, 9) * &Self::e(eps, 5)) * &(&e2 - &RingElement::from(32))
        } else {
            &(&Self::e(eps, 1) * &(eps + &RingElement::from(11))) * &(&e2 + &RingElement::from(4))
        }
    }

    /// The five-term relation written out directly in `n`.
    pub fn direct_recurrence(&self, eps: &RingElement, ring: RingTag) -> RecurrenceSpec {
        let f = |c: &[i64]| Poly::from_ints(c).eval(eps);
        let k = |x: &RingElement| Poly::constant(x.clone());
        let (a, b, c, d, e) = if self.level == 14 {
            (f(&[-7, 2]), f(&[-4, 1]), f(&[13, -42, 6]), f(&[11, -8, 1]), f(&[224, 13, -21, 2]))
        } else {
            (f(&[5, 2]), f(&[2, 1]), f(&[-7, 30, 6]), f(&[-1, 4, 1]), f(&[20, -7, 15, 2]))
        };
        let n = Poly::x();
        let n2n = Poly::from_ints(&[0, 1, 1]);
        let r1 = Poly::from_ints(&[1, 2]).mul(&n2n.mul(&k(&a)).add(&k(&b)));
        let r2 = n.mul(&Poly::from_ints(&[0, 0, 1]).mul(&k(&c)).add(&k(&d))).neg();
        let r3 = Poly::from_ints(&[0, 1, -3, 2]).mul(&k(&e));
        let r4 = Poly::from_ints(&[0, 2, -3, 1]).mul(&k(&self.top(eps))).neg();
        RecurrenceSpec { leading: Poly::from_ints(&[1, 1]).pow(3), rhs: vec![r1, r2, r3, r4], ring }
    }

    /// Quadratics in `eps` whose roots make one side of the `w` relation a perfect square.
    pub fn square_conditions(&self) -> [Poly; 2] {
        if self.level == 14 {
            // (eps - 7)^2 = 4 and eps^2 = 32
            [p(&[45, -14, 1]), p(&[-32, 0, 1])]
        } else {
            // (eps + 5)^2 = 36 and eps^2 = -4
            [p(&[-11, 10, 1]), p(&[4, 0, 1])]
        }
    }

    /// Special values with their sequence keys, computed as roots of [`Self::square_conditions`].
    pub fn special_epsilons(&self) -> Vec<(RingElement, &'static str)> {
        let mut roots = Vec::new();
        for q in self.square_conditions() {
            let b = q.coeff(1).as_rational().unwrap();
            let c = q.coeff(0).as_rational().unwrap();
            let disc = &b * &b - BigRational::from_integer(4.into()) * &c;
            let s = sqrt_rational(&disc);
            let mb = RingElement::from(-b);
            let half = RingElement::rational(1, 2);
            roots.push(&(&mb + &s) * &half);
            roots.push(&(&mb - &s) * &half);
        }
        let keys: [&str; 4] = if self.level == 14 {
            ["14B", "14A", "14C", "14Cbar"]
        } else {
            ["15A", "15B", "15C", "15Cbar"]
        };
        roots.into_iter().zip(keys).collect()
    }

    fn ring_of(eps: &RingElement) -> RingTag {
        match eps.tag() {
            RingTag::Quad(d) => RingTag::Quad(d),
            _ => RingTag::Z,
        }
    }

    /// `SequenceDef` for a given `eps`.
    pub fn specialize(&self, eps: &RingElement) -> SequenceDef {
        let strs = |p: &Poly| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        SequenceDef {
            name: format!("level{}[eps={}]", self.level, eps),
            ring: Self::ring_of(eps).to_string(),
            g: Some(strs(&self.g(eps))),
            h: Some(strs(&self.h(eps))),
            abc: None,
            level: Some(self.level.to_string()),
        }
    }

    /// `X_eps = w / (1 + eps w + sigma w^2)` with the family's Hauptmodul, and `Z_eps = P / X_eps`.
    pub fn modular(&self, eps: &RingElement) -> LevelModular {
        let den = Poly::new(vec![RingElement::one(), eps.clone(), RingElement::from(self.sigma())]);
        if self.level == 14 {
            LevelModular {
                x: haupt(&[(2, 3), (14, 3), (1, -3), (7, -3)], den),
                z: zs(&[(1, 1), (2, 1), (7, 1), (14, 1)], 1, 1),
            }
        } else {
            LevelModular {
                x: haupt(&[(1, 3), (15, 3), (3, -3), (5, -3)], den),
                z: zs(&[(1, 1), (3, 1), (5, 1), (15, 1)], 1, 1),
            }
        }
    }
}

fn build() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for s in sporadic() {
        let abc = ints(s.abc);
        let (g, h) = weight_two_gh(&abc[0], &abc[1], &abc[2]);
        out.push(CatalogEntry {
            key: format!("zagier{}", s.row),
            kind: EntryKind::Weight1,
            ring: RingTag::Z,
            abc: Some(abc.clone()),
            gh: None,
            level: Some(s.row.to_string()),
            modular: Some(Modular::WeightOne(WeightOneModular { x: s.x, z: s.z })),
            oracle: Some(s.t),
            oeis: Some(s.oeis.0),
            note: (s.row == "8").then_some("sign of (alpha, beta) fixed by the binomial sum and B^2"),
        });
        out.push(CatalogEntry {
            key: format!("apery{}", s.row),
            kind: EntryKind::Weight2,
            ring: RingTag::Z,
            abc: Some(abc),
            gh: Some((g, h)),
            level: Some(s.row.to_string()),
            modular: Some(Modular::WeightTwo(WeightTwoModular { w: s.w, y: s.y })),
            oracle: Some(s.s),
            oeis: Some(s.oeis.1),
            note: None,
        });
    }
    for r in level_rows() {
        out.push(CatalogEntry {
            key: format!("level{}", r.row),
            kind: EntryKind::LevelXZ,
            ring: r.ring,
            abc: None,
            gh: Some((r.g, r.h)),
            level: Some(r.row.to_string()),
            modular: Some(Modular::Level(LevelModular { x: r.x, z: r.z })),
            oracle: r.oracle,
            oeis: None,
            note: (r.row == "8").then_some("X = w/(1-24w+16w^2); the form 1/(1-24w+16w^2) does not vanish at q = 0"),
        });
    }
    for level in [14, 15] {
        let fam = EpsilonFamily::new(level).unwrap();
        for (eps, key) in fam.special_epsilons() {
            if !matches!(eps.tag(), RingTag::Quad(_)) {
                continue;
            }
            out.push(CatalogEntry {
                key: key.to_string(),
                kind: EntryKind::LevelXZ,
                ring: EpsilonFamily::ring_of(&eps),
                abc: None,
                gh: Some((fam.g(&eps), fam.h(&eps))),
                level: Some(level.to_string()),
                modular: Some(Modular::Level(fam.modular(&eps))),
                oracle: None,
                oeis: None,
                note: None,
            });
        }
    }
    // Terms 4^n T(n) of level 13.
    let (g13, h13) = {
        let e = out.iter().find(|e| e.key == "level13").unwrap();
        e.gh.clone().unwrap()
    };
    let four = RingElement::from(4);
    out.push(CatalogEntry {
        key: "level13scaled".into(),
        kind: EntryKind::LevelXZ,
        ring: RingTag::Z,
        abc: None,
        gh: Some((g13.scale_var(&four), h13.scale_var(&four))),
        level: Some("13".into()),
        modular: None,
        oracle: None,
        oeis: None,
        note: Some("S(n) = 4^n T(n) with X = 4Y"),
    });
    out
}

const ALIASES: &[(&str, &str)] = &[
    ("apery", "apery6A"),
    ("franel", "zagier6C"),
    ("11", "level11"),
    ("13", "level13"),
    ("13scaled", "level13scaled"),
    ("14A", "level14A"),
    ("14B", "level14B"),
    ("15A", "level15A"),
    ("15B", "level15B"),
    ("24", "level24"),
];

fn entries() -> &'static (Vec<CatalogEntry>, BTreeMap<String, usize>) {
    static CELL: OnceLock<(Vec<CatalogEntry>, BTreeMap<String, usize>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let v = build();
        let mut idx: BTreeMap<String, usize> = v.iter().enumerate().map(|(i, e)| (e.key.clone(), i)).collect();
        for (a, k) in ALIASES {
            let i = idx[*k];
            idx.insert((*a).to_string(), i);
        }
        (v, idx)
    })
}

/// Every entry, in table order.
pub fn all_entries() -> &'static [CatalogEntry] {
    &entries().0
}

/// Keys accepted by [`get_entry`], including aliases.
pub fn keys() -> Vec<&'static str> {
    entries().1.keys().map(String::as_str).collect()
}

pub fn get_entry(key: &str) -> Result<&'static CatalogEntry> {
    let (v, idx) = entries();
    idx.get(key).map(|&i| &v[i]).ok_or_else(|| Error::UnknownKey(key.to_string()))
}

/// Level rows with `(G, H)` and modular data, excluding the epsilon specials.
pub fn level_entries() -> impl Iterator<Item = &'static CatalogEntry> {
    all_entries().iter().filter(|e| e.kind == EntryKind::LevelXZ && e.key.starts_with("level") && e.modular.is_some())
}

/// Direct evaluation of the entry's binomial sum.
pub fn binomial_oracle(key: &str, n: u64) -> Result<RingElement> {
    let e = get_entry(key)?;
    let f = e.oracle.ok_or_else(|| Error::Invalid(format!("{key} has no binomial oracle")))?;
    Ok(RingElement::Int(f(n)))
}

/// Reference values transcribed from the source tables.
pub mod tables {
    /// Level-14 sequences, `n = 0..=10`.
    pub const TERMS_14: &[(&str, [&str; 11])] = &[
        ("14A", ["1", "1", "9", "49", "385", "2961", "24801", "212409", "1878129", "16924945", "155204329"]),
        ("14B", ["1", "5", "33", "269", "2545", "26565", "295785", "3441765", "41336145", "508419125", "6370849633"]),
        ("14C", [
            "1", "-4+4*sqrt(2)", "56-32*sqrt(2)", "-520+416*sqrt(2)", "6512-4224*sqrt(2)",
            "-69664+52416*sqrt(2)", "862904-582400*sqrt(2)", "-9870928+7232544*sqrt(2)",
            "123164432-84724224*sqrt(2)", "-1472036416+1063509568*sqrt(2)", "18601926816-12933544448*sqrt(2)",
        ]),
    ];

    /// Level-15 sequences, `n = 0..=10`.
    pub const TERMS_15: &[(&str, [&str; 11])] = &[
        ("15A", ["1", "3", "15", "105", "855", "7533", "69909", "673515", "6673095", "67565445", "696024945"]),
        ("15B", ["1", "-9", "87", "-867", "8775", "-89559", "918141", "-9432873", "96984423", "-997061295", "10245169737"]),
        ("15C", [
            "1", "2+2*sqrt(-1)", "6+8*sqrt(-1)", "44+52*sqrt(-1)", "290+480*sqrt(-1)", "1612+4372*sqrt(-1)",
            "7140+39568*sqrt(-1)", "2536+361688*sqrt(-1)", "-559166+3303552*sqrt(-1)",
            "-10693900+29823140*sqrt(-1)", "-151732284+264070928*sqrt(-1)",
        ]),
    ];

    pub const LEVEL11_TERMS: [u64; 11] =
        [1, 4, 28, 268, 3004, 36784, 476476, 6418192, 88986172, 1261473136, 18200713168];

    /// `T(n)` of level 13 for `n = 0..=6`.
    pub const LEVEL13_T: [&str; 7] =
        ["1", "3/2", "91/8", "1287/16", "86931/128", "1566669/256", "59494799/1024"];

    /// `4^n T(n)` of level 13 for `n = 0..=10`.
    pub const LEVEL13_S: [u64; 11] = [
        1, 6, 182, 5148, 173862, 6266676, 237979196, 9366227832, 378768328198, 15643121895492,
        657035290739412,
    ];

    /// Coefficients of `Z^2` in powers of `X` at level 13.
    pub const LEVEL13_Z2: [i64; 7] = [1, 3, 25, 195, 1729, 16107, 156481];

    /// `(a, b, c, d, e)` of the four-term relations.
    pub const FOURTERM_PARAMS: &[(&str, [&str; 5])] = &[
        ("11", ["10", "4", "-56", "-8", "22"]),
        ("14A", ["3", "1", "47", "4", "14"]),
        ("14B", ["11", "5", "-121", "-20", "98"]),
        ("14C", ["-7+8*sqrt(2)", "-4+4*sqrt(2)", "-205+168*sqrt(2)", "-43+32*sqrt(2)", "-448+308*sqrt(2)"]),
        ("14Cbar", ["-7-8*sqrt(2)", "-4-4*sqrt(2)", "-205-168*sqrt(2)", "-43-32*sqrt(2)", "-448-308*sqrt(2)"]),
        ("15A", ["7", "3", "-29", "-4", "30"]),
        ("15B", ["-17", "-9", "-389", "-76", "-750"]),
        ("15C", ["5+4*sqrt(-1)", "2+2*sqrt(-1)", "31-60*sqrt(-1)", "5-8*sqrt(-1)", "-40-30*sqrt(-1)"]),
        ("15Cbar", ["5-4*sqrt(-1)", "2-2*sqrt(-1)", "31+60*sqrt(-1)", "5+8*sqrt(-1)", "-40+30*sqrt(-1)"]),
        ("24", ["4", "2", "16", "4", "-64"]),
    ];

    /// `(a, b, c, d)` of the three-term relations at levels 7, 10 and 18.
    pub const THREETERM_PARAMS: &[(&str, [i64; 4])] =
        &[("7", [13, 4, 27, -3]), ("10", [6, 2, 64, -4]), ("18", [14, 6, -192, 12])];

    /// Number of `n <= 1000` with `T(pn) = T(n) mod p^2` for the level-11 sequence.
    pub const CP_COUNTS: &[(u64, u64)] = &[
        (2, 1000), (3, 333), (5, 200), (7, 750), (11, 875), (13, 274), (17, 222), (19, 286),
        (23, 129), (29, 62), (31, 32), (37, 27), (41, 48), (43, 87), (47, 87), (53, 18),
        (59, 1000), (61, 49), (67, 136), (71, 56), (73, 27), (79, 63), (83, 24), (89, 11),
        (97, 10), (101, 9),
    ];

    /// Common expansion of `sum T_eps(n) (w/(1 + eps w + sigma w^2))^{n+1}` for levels 14 and 15.
    pub const GF_SERIES_14: [i64; 6] = [1, -4, 16, -72, 368, -2080];
    pub const GF_SERIES_15: [i64; 6] = [1, 2, 11, 72, 545, 4450];

    /// Reference expansion of `1/X_eps - eps` at level 14, from `q^-1` to `q^5`.
    pub const LEVEL14_INVERSE_X: [i64; 7] = [1, -3, 11, 20, 57, 92, 207];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let e = get_entry("level7").unwrap();
        assert_eq!(e.gh.as_ref().unwrap().0, prod(&[&[1, 1], &[1, -27]]));
        assert!(get_entry("nope").is_err());
        let z = get_entry("zagier5").unwrap();
        assert_eq!(z.abc.as_ref().unwrap()[2], RingElement::from(1));
        assert_eq!(z.oeis, Some("A005258"));
        assert_eq!(binomial_oracle("apery", 2).unwrap(), RingElement::from(73));
        assert_eq!(binomial_oracle("franel", 3).unwrap(), RingElement::from(56));
        assert_eq!(binomial_oracle("level10", 2).unwrap(), RingElement::from(18));
        assert_eq!(binomial_oracle("level24", 2).unwrap(), RingElement::from(10));
    }

    #[test]
    fn rows_are_normalised() {
        assert_eq!(level_entries().count(), 27);
        for e in all_entries() {
            if let Some((g, h)) = &e.gh {
                assert!(g.coeff(0).is_one(), "{}", e.key);
                assert!(h.coeff(0).is_zero(), "{}", e.key);
            }
        }
    }

    #[test]
    fn specials() {
        let f14 = EpsilonFamily::new(14).unwrap();
        let eps: Vec<String> = f14.special_epsilons().iter().map(|(e, _)| e.to_natural()).collect();
        assert_eq!(eps, ["9", "5", "4*sqrt(2)", "-4*sqrt(2)"]);
        let f15 = EpsilonFamily::new(15).unwrap();
        let eps: Vec<String> = f15.special_epsilons().iter().map(|(e, _)| e.to_natural()).collect();
        assert_eq!(eps, ["1", "-11", "2i", "-2i"]);
    }
}
