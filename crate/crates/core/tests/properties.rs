use aperylike::asymptotics::extrapolate;
use aperylike::bigfloat::{Complex, Real};
use aperylike::catalog;
use aperylike::congruence::{
    digits, lucas_check, reduce, residue_table, Coverage, PatternAtom, Residue, ResidueRing,
};
use aperylike::{Poly, RingElement};
use proptest::prelude::*;

fn quad(d: i64) -> impl Strategy<Value = RingElement> {
    (-10_000i64..10_000, -10_000i64..10_000).prop_map(move |(a, b)| RingElement::quad(d, a, b))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| p % q != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_a_ring_homomorphism(
        d in prop::sample::select(vec![-1i64, 2, 5]),
        m in 2u64..2000,
        (x, y) in (-10_000i64..10_000, -10_000i64..10_000, -10_000i64..10_000, -10_000i64..10_000)
            .prop_map(|(a, b, c, e)| ((a, b), (c, e))),
    ) {
        let (x, y) = (RingElement::quad(d, x.0, x.1), RingElement::quad(d, y.0, y.1));
        let ring = ResidueRing { modulus: m, d };
        let (rx, ry) = (reduce(&x, m).unwrap(), reduce(&y, m).unwrap());
        prop_assert_eq!(reduce(&(&x * &y), m).unwrap(), ring.mul(rx, ry));
        prop_assert_eq!(reduce(&(&x + &y), m).unwrap(), ring.add(rx, ry));
        prop_assert_eq!(reduce(&(&x - &y), m).unwrap(), ring.sub(rx, ry));
    }

    #[test]
    fn ring_strings_roundtrip(x in prop_oneof![quad(-1), quad(2), (-1_000_000i64..1_000_000).prop_map(RingElement::from)]) {
        prop_assert_eq!(&x.to_string().parse::<RingElement>().unwrap(), &x);
        let back: RingElement = x.to_natural().parse().unwrap();
        prop_assert_eq!(back.to_natural(), x.to_natural());
    }

    #[test]
    fn gaussian_division_inverts_multiplication(x in quad(-1), y in quad(-1)) {
        prop_assume!(!y.is_zero());
        prop_assert_eq!(&(&x * &y) / &y, x);
    }

    #[test]
    fn power_atom_members(offset in 0u64..5, mult in 1u64..4, base in 2u64..6, min_exp in 0u32..3, j in 0u32..8) {
        let atom = PatternAtom::Power { offset, mult, base, min_exp };
        let n = offset + mult * base.pow(j);
        prop_assert_eq!(atom.contains(n), j >= min_exp);
    }

    #[test]
    fn digits_atom_matches_expansion(n in 0u64..100_000, base in 2u64..10) {
        let ds = digits(n, base);
        let value = ds.iter().rev().fold(0, |acc, d| acc * base + d);
        prop_assert_eq!(value, n);
        let atom = PatternAtom::Digits { shift: 0, base, allowed: vec![0, 1] };
        prop_assert_eq!(atom.contains(n), ds.iter().all(|&d| d <= 1));
    }

    #[test]
    fn poly_evaluation_is_multiplicative(
        a in prop::collection::vec(-50i64..50, 0..6),
        b in prop::collection::vec(-50i64..50, 0..6),
        x in -20i64..20,
    ) {
        let (p, q) = (Poly::from_ints(&a), Poly::from_ints(&b));
        prop_assert_eq!(p.mul(&q).eval_int(x), &p.eval_int(x) * &q.eval_int(x));
        prop_assert_eq!(p.shift(&RingElement::from(1)).eval_int(x), p.eval_int(x + 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// `s_n = L + c1/n + c2/n^2 + c3/n^3` is recovered exactly by three differences.
    #[test]
    fn extrapolation_recovers_polynomial_tails(l in -100i64..100, c1 in -50i64..50, c2 in -50i64..50, c3 in -50i64..50) {
        let bits = 256;
        let r = |v: i64| Real::from_i64(v, bits);
        let vals: Vec<Complex> = (100..140)
            .map(|n| {
                let n = r(n);
                let s = r(l).add(&r(c1).div(&n)).add(&r(c2).div(&n.powi(2))).add(&r(c3).div(&n.powi(3)));
                Complex::real(s)
            })
            .collect();
        let (est, _) = extrapolate(&vals, 100, 4);
        prop_assert!(est.sub(&Complex::from_i64(l, bits)).abs().to_f64() < 1e-60);
    }

    /// Apery numbers satisfy the Lucas property for every prime.
    #[test]
    fn apery_lucas_property(p in (2u64..80).prop_filter("prime", |&p| is_prime(p))) {
        let spec = catalog::get_entry("apery").unwrap().recurrence();
        let table = residue_table(&spec, p, 1, Coverage::Range(400)).unwrap();
        prop_assert!(lucas_check("apery", &table, 400).unwrap().violations.is_empty());
    }

    /// Terms reduce consistently under the residue table for prime powers.
    #[test]
    fn residue_table_agrees_with_terms(p in prop::sample::select(vec![2u64, 3, 5, 7]), e in 1u32..4) {
        let spec = catalog::get_entry("14C").unwrap().recurrence();
        let terms = spec.generate(40).unwrap();
        let table = residue_table(&spec, p, e, Coverage::Range(40)).unwrap();
        let m = p.pow(e);
        for (n, t) in terms.iter().enumerate() {
            prop_assert_eq!(table.get(n).unwrap(), reduce(t, m).unwrap());
        }
        prop_assert_eq!(reduce(&RingElement::from(-1), m).unwrap(), Residue::new(-1, 0, m));
    }
}
