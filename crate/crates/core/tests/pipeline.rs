use num_bigint::BigInt;
use octic_core::families::{enumerate, FamilyId};
use octic_core::galois::{classify, Form, OcticInput};
use octic_core::monogenic::{check, CheckOptions, Status};
use octic_core::poly::discriminant;
use octic_core::sieve::{density, find_obstruction, parse_factored, report, scan, scan_brute, ScanMode};

#[test]
fn gate_counts_match_direct_factoring() {
    for s in ["(16t+13)(4t+1)(4t-3)", "(2t+9)(2t-3)(8t-13)", "(t^2-12)"] {
        let g = parse_factored(s).unwrap();
        assert_eq!(scan(&g, 20_000, ScanMode::Primes).unwrap(), scan_brute(&g, 20_000, ScanMode::Primes), "{s}");
    }
    let g = parse_factored("(4t+1)(4t+5)").unwrap();
    assert_eq!(scan(&g, 100, ScanMode::Primes).unwrap(), scan_brute(&g, 100, ScanMode::Primes));
}

#[test]
fn family_gate_drives_membership() {
    let opts = CheckOptions::default();
    for family in FamilyId::ALL {
        let gate = family.gate();
        assert_eq!(find_obstruction(&gate), None);
        assert!(density(&gate, 100).to_f64() > 0.0);
        let e = enumerate(family, 3, &opts);
        for m in &e.members {
            assert_eq!(check(&m.input, &opts).status, Status::Monogenic);
            assert_eq!(classify(&m.input).unwrap(), family.label());
        }
    }
}

#[test]
fn reciprocal_8t9_discriminant_from_gate_factors() {
    let e = enumerate(FamilyId::G8T9, 3, &CheckOptions::default());
    for m in &e.members {
        let p = BigInt::from(m.parameter);
        let w2: BigInt = &p * 16 + 13;
        let w3: BigInt = (&p * 4 + 1) * (&p * 4 - 3);
        let inner = &w2 * &w3 * &w3;
        let delta = discriminant(&m.input.polynomial()).unwrap();
        assert_eq!(delta, BigInt::from(256) * &inner * &inner);
    }
}

#[test]
fn trinomial_8t26_discriminant_is_monotone() {
    let e = enumerate(FamilyId::F8T26, 6, &CheckOptions::default());
    let discs: Vec<BigInt> = e
        .members
        .iter()
        .map(|m| discriminant(&m.input.polynomial()).unwrap())
        .collect();
    for (m, d) in e.members.iter().zip(&discs) {
        let p = BigInt::from(m.parameter);
        let s: BigInt = &p * &p - 12;
        let expected = BigInt::from(65536) * 27 * s.pow(4);
        assert_eq!(*d, expected);
    }
    assert!(discs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn sieve_report_is_consistent() {
    let g = parse_factored("(t^2+1)").unwrap();
    let r = report(&g, 100, &[(1000, ScanMode::Integers), (1000, ScanMode::Primes)]);
    assert_eq!(r.obstruction, None);
    assert_eq!(r.counts[0].squarefree, scan_brute(&g, 1000, ScanMode::Integers));
    assert_eq!(r.counts[1].squarefree, scan_brute(&g, 1000, ScanMode::Primes));
    assert!(r.rho_values.iter().all(|&(l, rho)| rho == if l % 4 == 1 { 2 } else { 0 }));
}

#[test]
fn reducible_inputs_stop_early() {
    let opts = CheckOptions::default();
    for (form, a, b) in [(Form::EvenTrinomial, 0, -1), (Form::EvenTrinomial, 0, 4), (Form::EvenReciprocal, 2, 2)] {
        let inp = OcticInput::from_i64(form, a, b).unwrap();
        let v = check(&inp, &opts);
        assert_eq!(v.status, Status::NotIrreducible, "{inp}");
        assert!(v.certificates.is_empty());
    }
}
