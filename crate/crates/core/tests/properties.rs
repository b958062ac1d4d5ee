use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use octic_core::arith::{factor, is_squarefree, TriBool, DEFAULT_TRIAL_BOUND};
use octic_core::galois::{classify, w_triple, Form, GaloisLabel, OcticInput};
use octic_core::index::{dedekind_at, jks_at};
use octic_core::monogenic::{check, check_monic, CheckOptions, Status};
use octic_core::poly::{discriminant, factor_mod_p, is_irreducible_q, swan_disc, FpPoly, IntPoly};
use octic_core::sieve::{parse_factored, rho, rho_exhaustive};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn monic(coeffs: Vec<i64>) -> IntPoly {
    let mut c = coeffs;
    c.push(1);
    IntPoly::from_i64(&c)
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).flat_map(|d| [d, -d]).collect()
}

/// Reducible iff some monic integer factor of degree ≤ deg/2 divides `f`.
/// The constant of a factor divides `f(0)`, and its linear coefficient is
/// at most `2‖f‖₂` in absolute value.
fn reducible_by_search(f: &IntPoly) -> bool {
    let n = f.degree().unwrap();
    let c: Vec<i64> = f.coeffs().iter().map(|x| i64::try_from(x).unwrap()).collect();
    if c[0] == 0 {
        return n > 1;
    }
    let norm = (c.iter().map(|x| x * x).sum::<i64>() as f64).sqrt().ceil() as i64;
    let divides = |g: &IntPoly| f.div_rem_monic(g).1.is_zero();
    for v in divisors(c[0]) {
        if n >= 2 && divides(&IntPoly::from_i64(&[v, 1])) {
            return true;
        }
        if n >= 4 {
            for u in -2 * norm..=2 * norm {
                if divides(&IntPoly::from_i64(&[v, u, 1])) {
                    return true;
                }
            }
        }
    }
    false
}

/// Irreducible over F_p by exhaustive search for monic divisors.
fn irreducible_mod_p_by_search(g: &FpPoly) -> bool {
    let p = g.modulus();
    let d = g.degree().unwrap();
    for k in 1..=d / 2 {
        let total = p.pow(k as u32);
        for idx in 0..total {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut x = idx;
            for _ in 0..k {
                coeffs.push(x % p);
                x /= p;
            }
            coeffs.push(1);
            if g.rem(&FpPoly::new(p, coeffs)).is_zero() {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn squarefree_matches_divisor_oracle(n in -1_000_000i64..=1_000_000) {
        prop_assume!(n != 0);
        let oracle = (2..=1000i64).all(|d| n % (d * d) != 0);
        prop_assert_eq!(is_squarefree(&big(n), DEFAULT_TRIAL_BOUND).unwrap(), TriBool::from(oracle));
    }

    #[test]
    fn factorization_reassembles(n in any::<i64>(), m in 1i64..1_000_000) {
        prop_assume!(n != 0);
        let x = big(n) * big(m);
        let fr = factor(&x, DEFAULT_TRIAL_BOUND).unwrap();
        prop_assert_eq!(fr.reassemble(), x.abs());
    }

    #[test]
    fn swan_matches_discriminant(a in -200i64..=200, b in -200i64..=200) {
        prop_assume!(b != 0);
        let f = IntPoly::even_trinomial(&big(a), &big(b));
        prop_assert_eq!(discriminant(&f).unwrap(), swan_disc(8, 4, &big(a), &big(b)).unwrap());
    }

    #[test]
    fn reciprocal_discriminant_identity(a in -200i64..=200, b in -200i64..=200) {
        let w = w_triple(&big(a), &big(b));
        let small = &w.w1 * &w.w2 * &w.w3 * &w.w3;
        let g = IntPoly::even_reciprocal(&big(a), &big(b));
        prop_assert_eq!(discriminant(&g).unwrap(), BigInt::from(256) * &small * &small);
    }

    #[test]
    fn mod_p_factors_multiply_back_and_are_irreducible(
        coeffs in prop::collection::vec(-20i64..=20, 1..=6),
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let f = monic(coeffs);
        let fac = factor_mod_p(&f, p).unwrap();
        prop_assert_eq!(fac.expand(), FpPoly::from_int(&f, p));
        for (g, _) in &fac.factors {
            prop_assert!(irreducible_mod_p_by_search(g), "{} mod {}", g, p);
        }
    }

    #[test]
    fn irreducibility_matches_search(coeffs in prop::collection::vec(-10i64..=10, 1..=4)) {
        let f = monic(coeffs);
        prop_assert_eq!(is_irreducible_q(&f).unwrap(), !reducible_by_search(&f), "{}", f.display_with("x"));
    }

    #[test]
    fn jks_odd_prime_dividing_b_only(q in prop::sample::select(vec![3i64, 5, 7, 11, 13]), a in -60i64..=60, k in 1i64..=30) {
        let b = q * k;
        prop_assume!(a % q != 0);
        let r = jks_at(&big(a), &big(b), &big(q)).unwrap();
        prop_assert_eq!(r.pass, b % (q * q) != 0);
    }

    #[test]
    fn squarefree_discriminant_means_monogenic(coeffs in prop::collection::vec(-9i64..=9, 2..=5)) {
        let f = monic(coeffs);
        prop_assume!(is_irreducible_q(&f).unwrap());
        let d = discriminant(&f).unwrap();
        prop_assume!(is_squarefree(&d, DEFAULT_TRIAL_BOUND).unwrap() == TriBool::True);
        let (status, _, _) = check_monic(&f, &CheckOptions::default());
        prop_assert_eq!(status, Status::Monogenic);
    }

    #[test]
    fn rho_lifting_matches_enumeration(
        a in -20i64..=20, b in 1i64..=12, c in -20i64..=20, d in -20i64..=20,
        ell in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
    ) {
        let text = format!("({b}t+{a})(t^2+{c}t+{d})").replace("+-", "-");
        prop_assume!(parse_factored(&text).is_ok());
        let g = parse_factored(&text).unwrap();
        prop_assert_eq!(rho(&g, ell), rho_exhaustive(&g, ell));
    }

    #[test]
    fn factored_display_parses_back(c0 in -30i64..=30, c1 in 1i64..=9, e0 in -30i64..=30, e1 in -9i64..=9) {
        let text = format!("({c1}t+{c0})(t^2+{e1}t+{e0})").replace("+-", "-");
        prop_assume!(parse_factored(&text).is_ok());
        let g = parse_factored(&text).unwrap();
        let again = parse_factored(&g.display()).unwrap();
        prop_assert_eq!(again.factors, g.factors);
    }
}

fn reciprocal_inputs(bound: i64) -> impl Iterator<Item = OcticInput> {
    (-bound..=bound).flat_map(move |a| (-bound..=bound).filter_map(move |b| OcticInput::from_i64(Form::EvenReciprocal, a, b).ok()))
}

#[test]
fn fast_paths_agree_with_full_dedekind() {
    let full = CheckOptions { fast_paths: false, ..CheckOptions::default() };
    let mut fired = 0;
    for inp in reciprocal_inputs(20) {
        let fast = check(&inp, &CheckOptions::default());
        if fast.fast_path.is_some() {
            fired += 1;
            assert_eq!(fast.status, check(&inp, &full).status, "{inp}");
        }
    }
    assert!(fired > 100);
}

#[test]
fn reciprocal_labels_symmetric_under_sign_of_a() {
    let symmetric = [GaloisLabel::T2, GaloisLabel::T3, GaloisLabel::T10, GaloisLabel::T18];
    for inp in reciprocal_inputs(25) {
        if inp.a.is_negative() || !is_irreducible_q(&inp.polynomial()).unwrap() {
            continue;
        }
        let l = classify(&inp).unwrap();
        if symmetric.contains(&l) {
            let mirror = OcticInput::new(Form::EvenReciprocal, -&inp.a, inp.b.clone()).unwrap();
            assert_eq!(classify(&mirror).unwrap(), l, "{inp}");
        }
    }
}

#[test]
fn nonmonogenic_quartic_forces_nonmonogenic_octic() {
    let mut probed = 0;
    for inp in reciprocal_inputs(20) {
        let g = IntPoly::reciprocal_quartic(&inp.a, &inp.b);
        if !is_irreducible_q(&inp.polynomial()).unwrap() {
            continue;
        }
        let d = discriminant(&g).unwrap();
        let fr = factor(&d, DEFAULT_TRIAL_BOUND).unwrap();
        let quartic_fails = fr
            .primes()
            .any(|q| dedekind_at(&g, u64::try_from(q).unwrap()).unwrap().divides_index);
        if quartic_fails {
            probed += 1;
            assert_eq!(check(&inp, &CheckOptions::default()).status, Status::NotMonogenic, "{inp}");
        }
    }
    assert!(probed > 100);
}

#[test]
fn jks_agrees_with_dedekind_on_wider_grid() {
    for a in (-60i64..=60).step_by(7) {
        for b in (-60i64..=60).step_by(5) {
            if b == 0 {
                continue;
            }
            let t = IntPoly::even_trinomial(&big(a), &big(b));
            if !is_irreducible_q(&t).unwrap() {
                continue;
            }
            let disc = swan_disc(8, 4, &big(a), &big(b)).unwrap();
            for q in factor(&disc, DEFAULT_TRIAL_BOUND).unwrap().primes() {
                let j = jks_at(&big(a), &big(b), q).unwrap();
                let d = dedekind_at(&t, u64::try_from(q).unwrap()).unwrap();
                assert_eq!(j.pass, !d.divides_index, "({a},{b}) at {q}");
            }
        }
    }
}

#[test]
fn trinomial_discriminant_divisible_by_two_to_sixteen() {
    for a in -10i64..=10 {
        for b in 1i64..=10 {
            let d = discriminant(&IntPoly::even_trinomial(&big(a), &big(b))).unwrap();
            assert!(d.is_zero() || d.is_multiple_of(&BigInt::from(65536)));
        }
    }
}
