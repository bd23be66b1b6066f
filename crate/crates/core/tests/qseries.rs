use aperylike::catalog::{self, Modular};
use aperylike::qmodular::{
    build_xz, expansion_coefficients, identity_names, verify_diff_formula, verify_identity, verify_ode,
    verify_weight_one, verify_weight_two,
};

const M: usize = 30;

#[test]
fn level_rows_match_recurrences() {
    let mut failures = Vec::new();
    for e in catalog::level_entries().chain(["14C", "14Cbar", "15C", "15Cbar"].iter().map(|k| catalog::get_entry(k).unwrap())) {
        let Some(Modular::Level(m)) = &e.modular else { continue };
        let (x, z) = match build_xz(m, M) {
            Ok(v) => v,
            Err(err) => {
                failures.push(format!("{}: {err}", e.key));
                continue;
            }
        };
        let (g, h) = e.gh.as_ref().unwrap();
        let coeffs = expansion_coefficients(&z, &x, M).unwrap();
        let terms = e.recurrence().generate(M);
        match terms {
            Ok(t) if t == coeffs => {}
            Ok(t) => failures.push(format!("{}: terms {:?} vs q-series {:?}", e.key, &t[..4], &coeffs[..4])),
            Err(err) => failures.push(format!("{}: {err}", e.key)),
        }
        let d = verify_diff_formula(g, &x, &z, M).unwrap();
        if !d.passed {
            failures.push(format!("{}: diff formula fails at {:?}", e.key, d.first_mismatch));
        }
        let o = verify_ode(h, &x, &z, M).unwrap();
        if !o.passed {
            failures.push(format!("{}: ode fails at {:?}", e.key, o.first_mismatch));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn weight_one_and_two_rows() {
    for e in catalog::all_entries() {
        let terms = e.recurrence().generate(M).unwrap();
        let r = match &e.modular {
            Some(Modular::WeightOne(m)) => {
                let [a, _, g] = e.abc.as_ref().unwrap();
                verify_weight_one(m, &terms, a, g, M).unwrap()
            }
            Some(Modular::WeightTwo(m)) => verify_weight_two(m, &terms, M).unwrap(),
            _ => continue,
        };
        assert!(r.passed, "{} fails at {:?}", e.key, r.first_mismatch);
    }
}

#[test]
fn identity_bank() {
    let mut failures = Vec::new();
    for name in identity_names() {
        match verify_identity(&name, M) {
            Ok(r) if r.passed => {}
            Ok(r) => failures.push(format!("{name}: mismatch at {:?}", r.first_mismatch)),
            Err(err) => failures.push(format!("{name}: {err}")),
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn perturbed_data_is_rejected() {
    use aperylike::qmodular::{LevelModular, WSpec, XSpec};
    use aperylike::Poly;
    let e = catalog::get_entry("level10").unwrap();
    let Some(Modular::Level(m)) = &e.modular else { unreachable!() };
    let (x, z) = build_xz(m, M).unwrap();
    let (g, h) = e.gh.as_ref().unwrap();
    let bad_g = g.add(&Poly::from_ints(&[0, 0, 1]));
    assert!(!verify_diff_formula(&bad_g, &x, &z, M).unwrap().passed);
    let bad_h = h.add(&Poly::from_ints(&[0, 0, 0, 1]));
    assert!(!verify_ode(&bad_h, &x, &z, M).unwrap().passed);

    // Level 8 with X = 1/(1 - 24w + 16w^2) has no zero at q = 0.
    let e8 = catalog::get_entry("level8").unwrap();
    let Some(Modular::Level(m8)) = &e8.modular else { unreachable!() };
    let XSpec::Hauptmodul { w: WSpec::Eta(w), den } = &m8.x else { unreachable!() };
    let wq = WSpec::Eta(w.clone()).expand(12).unwrap();
    let reciprocal = wq.compose_poly(den).unwrap().inv().unwrap();
    assert_eq!(reciprocal.offset(), &num_rational::BigRational::from_integer(0.into()));
    // The sign flip (12, 4, -32) gives X = w/(1 + 24w + 16w^2), which misses B^2.
    let flipped = LevelModular {
        x: XSpec::Hauptmodul { w: WSpec::Eta(w.clone()), den: Poly::from_ints(&[1, 24, 16]) },
        z: m8.z.clone(),
    };
    let (x, z) = build_xz(&flipped, M).unwrap();
    assert!(!verify_diff_formula(&e8.gh.as_ref().unwrap().0, &x, &z, M).unwrap().passed);
}
