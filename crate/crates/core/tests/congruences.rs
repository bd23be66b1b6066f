use aperylike::catalog::{get_entry, tables};
use aperylike::congruence::{check_conjecture, conjectures, lucas_scan, primes_in, scan_c_counts};

#[test]
fn level11_c_counts() {
    let spec = get_entry("level11").unwrap().recurrence();
    let primes = [2, 3, 5, 7, 11, 13, 59];
    let got = scan_c_counts(&spec, &primes, 1000).unwrap();
    for (p, c) in got {
        let want = tables::CP_COUNTS.iter().find(|r| r.0 == p).unwrap().1;
        assert_eq!(c as u64, want, "c({p})");
    }
}

#[test]
fn stated_congruences() {
    for c in conjectures() {
        let rep = check_conjecture(&c, 300).unwrap();
        assert!(rep.holds(c.strict), "{}: {:?} unexpected {:?}", c.name, rep.violations, rep.unexpected_passes);
    }
}

#[test]
fn lucas_small() {
    let spec = get_entry("level11").unwrap().recurrence();
    for r in lucas_scan("level11", &spec, &primes_in(2, 100), 500).unwrap() {
        assert!(r.violations.is_empty(), "p = {}", r.p);
    }
}
