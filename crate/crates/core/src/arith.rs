//! Arbitrary-precision integer utilities: squares, valuations, bounded
//! factorization and squarefree tests.
//!
//! Factorization is trial division by a cached prime table followed by
//! Brent's variant of Pollard rho on whatever is left. A prime is only
//! reported once it has been certified by Miller–Rabin with the first
//! thirteen prime bases, which is deterministic below
//! [`MR_DETERMINISTIC_LIMIT`]. Anything that cannot be certified stays in the
//! cofactor, and the squarefree test answers [`TriBool::Unknown`] rather than
//! guessing.

use std::borrow::Cow;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Trial-division bound used when callers do not pick one.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Miller–Rabin witnesses: the first thirteen primes.
pub const MR_WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Below this value the witness set above decides primality exactly
/// (Sorenson–Webster, ψ₁₃).
pub const MR_DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

const RHO_SEEDS: u64 = 16;
const RHO_MAX_STEPS: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("cannot factor zero")]
    Zero,
}

/// Three-valued answer for questions that depend on a complete factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriBool {
    True,
    False,
    Unknown,
}

impl TriBool {
    pub fn is_true(self) -> bool {
        self == TriBool::True
    }

    pub fn is_false(self) -> bool {
        self == TriBool::False
    }
}

impl From<bool> for TriBool {
    fn from(b: bool) -> Self {
        if b {
            TriBool::True
        } else {
            TriBool::False
        }
    }
}

impl fmt::Display for TriBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriBool::True => "true",
            TriBool::False => "false",
            TriBool::Unknown => "unknown",
        })
    }
}

/// Result of [`factor`].
///
/// `factors` holds certified primes in increasing order. `cofactor` is 1 for
/// a complete factorization, otherwise the product of everything that could
/// not be split or certified; it has no prime factor at or below the trial
/// bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorResult {
    pub factors: Vec<(BigInt, u32)>,
    pub cofactor: BigInt,
}

impl FactorResult {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Multiplies everything back together; equals `|n|`.
    pub fn reassemble(&self) -> BigInt {
        self.factors
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, e)| acc * p.pow(*e))
    }
}

/// Floor square root; `None` for negative input.
pub fn isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        None
    } else {
        Some(n.sqrt())
    }
}

/// True iff `n` is the square of an integer. Zero is a square, negatives are not.
pub fn is_square(n: &BigInt) -> bool {
    match isqrt(n) {
        Some(r) => &(&r * &r) == n,
        None => false,
    }
}

/// Exact square root of a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = isqrt(n)?;
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exponent of the prime `p` in `n`. Returns 0 for `n = 0` as well, callers
/// must rule that out when it matters.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        return 0;
    }
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes up to `bound`. The table up to [`DEFAULT_TRIAL_BOUND`] is built
/// once and shared; larger bounds allocate a fresh table.
pub fn prime_table(bound: u64) -> Cow<'static, [u64]> {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    if bound <= DEFAULT_TRIAL_BOUND {
        let table = TABLE.get_or_init(|| primes_up_to(DEFAULT_TRIAL_BOUND));
        let end = table.partition_point(|&p| p <= bound);
        Cow::Borrowed(&table[..end])
    } else {
        Cow::Owned(primes_up_to(bound))
    }
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut bound = 64u64;
    loop {
        let table = prime_table(bound);
        if table.len() >= count {
            return table[..count].to_vec();
        }
        bound *= 2;
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for machine-size integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &MR_WITNESSES {
        let w = w as u64;
        if n == w {
            return true;
        }
        if n % w == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &w in &MR_WITNESSES[..12] {
        let mut x = pow_mod_u64(w as u64, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &w in &MR_WITNESSES {
        let w = BigUint::from(w);
        if &w >= n {
            continue;
        }
        let mut x = w.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality with a certification flag: `Some(true)` is a proven prime,
/// `Some(false)` a proven composite, `None` a probable prime above the
/// deterministic range.
pub fn certify_prime(n: &BigUint) -> Option<bool> {
    if let Some(small) = n.to_u64() {
        return Some(is_prime_u64(small));
    }
    for &w in &MR_WITNESSES {
        if (n % w).is_zero() {
            return Some(false);
        }
    }
    if !miller_rabin(n) {
        return Some(false);
    }
    match n.to_u128() {
        Some(v) if v < MR_DETERMINISTIC_LIMIT => Some(true),
        _ => None,
    }
}

/// Returns `(root, k)` with `root^k = n` and `k ≥ 2` maximal, if `n` is a
/// perfect power.
pub fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if n <= &BigUint::one() {
        return None;
    }
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let r = n.nth_root(k);
        if r > BigUint::one() && &r.pow(k) == n {
            return Some((r, k));
        }
    }
    None
}

/// One Brent–Pollard rho attempt with polynomial x² + c.
fn brent_rho(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = one.clone();
    let mut g = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    const BATCH: u64 = 64;
    let mut steps = 0u64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BATCH;
            steps += BATCH;
        }
        r *= 2;
        if steps > RHO_MAX_STEPS {
            return None;
        }
    }
    if &g == n {
        // Batched product overshot; back up one step at a time.
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_composite(n: &BigUint) -> Option<BigUint> {
    (1..=RHO_SEEDS).find_map(|c| brent_rho(n, c))
}

/// Factors `|n|`.
///
/// Trial division runs over primes `≤ trial_bound` (stopping early once
/// `p² > n`); the remainder goes through perfect-power detection and
/// Pollard rho. Pieces that can be neither split nor certified prime end up
/// in `cofactor`. The output is a deterministic function of the inputs.
pub fn factor(n: &BigInt, trial_bound: u64) -> Result<FactorResult, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    let mut m = n.abs().to_biguint().expect("abs is non-negative");
    let mut found: Vec<(BigUint, u32)> = Vec::new();
    let table = prime_table(trial_bound.max(2));
    let mut exhausted = true;
    for &p in table.iter() {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            exhausted = false;
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            found.push((pb, e));
        }
    }
    let mut cofactor = BigUint::one();
    if !m.is_one() {
        if !exhausted {
            // Every prime up to √m has been tried.
            found.push((m, 1));
        } else {
            let mut stack = vec![(m, 1u32)];
            while let Some((part, mult)) = stack.pop() {
                if part.is_one() {
                    continue;
                }
                match certify_prime(&part) {
                    Some(true) => {
                        found.push((part, mult));
                        continue;
                    }
                    None => {
                        cofactor *= part.pow(mult);
                        continue;
                    }
                    Some(false) => {}
                }
                if let Some((root, k)) = perfect_power(&part) {
                    stack.push((root, mult * k));
                    continue;
                }
                match split_composite(&part) {
                    Some(d) => {
                        let other = &part / &d;
                        stack.push((d, mult));
                        stack.push((other, mult));
                    }
                    None => cofactor *= part.pow(mult),
                }
            }
        }
    }
    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::with_capacity(found.len());
    for (p, e) in found {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some((last, le)) if *last == p => *le += e,
            _ => factors.push((p, e)),
        }
    }
    Ok(FactorResult {
        factors,
        cofactor: BigInt::from(cofactor),
    })
}

/// Squarefree test. `Unknown` only when the cofactor left by [`factor`] is
/// composite, not a perfect power, and too large to be a product of two
/// primes above the trial bound.
pub fn is_squarefree(n: &BigInt, trial_bound: u64) -> Result<TriBool, ArithError> {
    let fr = factor(n, trial_bound)?;
    if fr.factors.iter().any(|&(_, e)| e >= 2) {
        return Ok(TriBool::False);
    }
    if fr.cofactor.is_one() {
        return Ok(TriBool::True);
    }
    let c = fr.cofactor.to_biguint().expect("cofactor is positive");
    if perfect_power(&c).is_some() {
        return Ok(TriBool::False);
    }
    // No prime factor ≤ B and c < B³: at most two prime factors.
    let b = BigUint::from(trial_bound.max(2));
    if c < b.pow(3) {
        return Ok(TriBool::True);
    }
    Ok(TriBool::Unknown)
}

/// Exponent of `q` in the small constant `n` (e.g. `q^j ∥ 8`).
pub(crate) fn small_valuation(n: u64, q: &BigInt) -> u32 {
    valuation(&BigInt::from(n), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn squares() {
        assert!(is_square(&big(16)));
        assert!(is_square(&big(0)));
        assert!(!is_square(&big(-4)));
        assert!(!is_square(&big(221)));
        for n in 2..=10_000i64 {
            assert!(is_square(&big(n * n)));
            assert!(!is_square(&big(n * n + 1)));
        }
    }

    #[test]
    fn factor_examples() {
        let r = factor(&big(45), DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(r.factors, vec![(big(3), 2), (big(5), 1)]);
        assert!(r.is_complete());

        let n = BigInt::from(1u64 << 24) * 289;
        let r = factor(&n, DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(r.factors, vec![(big(2), 24), (big(17), 2)]);

        let r = factor(&big(4352), DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(r.factors, vec![(big(2), 8), (big(17), 1)]);
        assert_eq!(factor(&big(0), 10), Err(ArithError::Zero));
    }

    #[test]
    fn factor_beyond_trial_bound() {
        // Two primes just above a tiny bound exercise the rho path.
        let p = big(1_000_003);
        let q = big(1_000_033);
        let n = &p * &q * &q * big(6);
        let r = factor(&n, 100).unwrap();
        assert_eq!(r.factors, vec![(big(2), 1), (big(3), 1), (p, 1), (q, 2)]);
        assert!(r.is_complete());
        assert_eq!(r.reassemble(), n);
    }

    #[test]
    fn factor_perfect_power_cofactor() {
        let p = big(1_000_003);
        let n = p.pow(3);
        let r = factor(&n, 100).unwrap();
        assert_eq!(r.factors, vec![(p, 3)]);
    }

    #[test]
    fn large_prime_is_certified() {
        // 2^61 - 1
        let m61 = (BigInt::one() << 61) - 1;
        let r = factor(&m61, 1000).unwrap();
        assert_eq!(r.factors, vec![(m61, 1)]);
        // 2^64 + 13 and 10^24 + 7 lie above the 64-bit range but below the MR limit.
        let p = (BigUint::one() << 64) + 13u32;
        assert_eq!(certify_prime(&p), Some(true));
        let q = BigUint::from(10u32).pow(24) + 7u32;
        assert_eq!(certify_prime(&q), Some(true));
        assert_eq!(certify_prime(&(&p * &q)), Some(false));
        assert_eq!(certify_prime(&(&p * 3u32)), Some(false));
        // 2^127 - 1 passes MR but cannot be certified.
        let m127 = (BigUint::one() << 127) - 1u32;
        assert_eq!(certify_prime(&m127), None);
        let r = factor(&BigInt::from(m127.clone()), 1000).unwrap();
        assert_eq!(r.cofactor, BigInt::from(m127));
        assert!(r.factors.is_empty());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(is_squarefree(&big(221), DEFAULT_TRIAL_BOUND), Ok(TriBool::True));
        assert_eq!(is_squarefree(&big(45), DEFAULT_TRIAL_BOUND), Ok(TriBool::False));
        assert_eq!(is_squarefree(&big(1), DEFAULT_TRIAL_BOUND), Ok(TriBool::True));
        assert_eq!(is_squarefree(&big(-7), DEFAULT_TRIAL_BOUND), Ok(TriBool::True));
        assert!(is_squarefree(&big(0), DEFAULT_TRIAL_BOUND).is_err());
    }

    #[test]
    fn squarefree_matches_divisor_oracle() {
        for n in -1_000_000i64..=1_000_000 {
            if n == 0 || n % 97 != 0 && n.abs() > 20_000 {
                continue;
            }
            let oracle = (2..=1000i64).all(|d| n % (d * d) != 0);
            let got = is_squarefree(&big(n), DEFAULT_TRIAL_BOUND).unwrap();
            assert_eq!(got, TriBool::from(oracle), "n = {n}");
        }
    }

    #[test]
    fn squarefree_two_large_primes() {
        let p = big(1_000_003);
        assert_eq!(is_squarefree(&(&p * &p), 1000), Ok(TriBool::False));
        assert_eq!(is_squarefree(&(&p * big(1_000_033)), 1000), Ok(TriBool::True));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&big(48), &big(2)), 4);
        assert_eq!(valuation(&big(-81), &big(3)), 4);
        assert_eq!(valuation(&big(7), &big(2)), 0);
        assert_eq!(small_valuation(8, &big(2)), 3);
        assert_eq!(small_valuation(8, &big(3)), 0);
    }

    #[test]
    fn prime_tables() {
        assert_eq!(prime_table(30).as_ref(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(first_primes(25).last(), Some(&97));
        assert_eq!(prime_table(DEFAULT_TRIAL_BOUND).len(), 78_498);
        for n in 0..5000u64 {
            let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), naive, "{n}");
        }
    }
}
