use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fp::{ddf_factor_count, factor_fp, FpPoly};
use super::{discriminant, IntPoly, PolyError};
use crate::arith::first_primes;

/// Number of small primes tried when choosing the Hensel prime.
pub const ZASSENHAUS_PRIME_COUNT: usize = 25;

/// Primes examined past the first batch before giving up.
const FALLBACK_PRIME_COUNT: usize = 2000;

/// `2ⁿ · ⌈‖f‖₂⌉`, a bound on the coefficients of any monic factor of `f`.
pub fn mignotte_bound(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let mut root = sq.sqrt();
    if &root * &root < sq {
        root += 1;
    }
    (BigInt::one() << n) * root
}

/// Irreducibility over Q. Polynomials with a repeated factor are reducible;
/// a nonzero content is ignored.
pub fn is_irreducible_q(f: &IntPoly) -> Result<bool, PolyError> {
    let n = match f.degree() {
        Some(0) | None => return Err(PolyError::Constant),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let g = monic_transform(f);
    if discriminant(&g)?.is_zero() {
        return Ok(false);
    }
    let (p, count) = choose_prime(&g)?;
    if count == 1 {
        return Ok(true);
    }
    Ok(zassenhaus(&g, p)?.len() == 1)
}

/// Irreducible factors of a squarefree monic polynomial, sorted.
pub fn factor_monic_q(f: &IntPoly) -> Result<Vec<IntPoly>, PolyError> {
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    match f.degree() {
        Some(0) | None => return Err(PolyError::Constant),
        Some(1) => return Ok(vec![f.clone()]),
        _ => {}
    }
    if discriminant(f)?.is_zero() {
        return Err(PolyError::NotSquarefree);
    }
    let (p, count) = choose_prime(f)?;
    if count == 1 {
        return Ok(vec![f.clone()]);
    }
    let mut out = zassenhaus(f, p)?;
    out.sort();
    Ok(out)
}

/// `lc^(n−1) · f(x / lc)`, monic with integer coefficients.
fn monic_transform(f: &IntPoly) -> IntPoly {
    let n = f.degree().unwrap();
    let lc = f.leading_coeff().unwrap().clone();
    let mut f = f.clone();
    if lc.is_negative() {
        f = -&f;
    }
    let lc = lc.abs();
    if lc.is_one() {
        return f;
    }
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == n {
                BigInt::one()
            } else {
                c * lc.pow((n - 1 - i) as u32)
            }
        })
        .collect();
    IntPoly::new(coeffs)
}

/// Picks the admissible prime with the fewest modular factors among the
/// first small primes, falling back to the first admissible prime beyond.
fn choose_prime(f: &IntPoly) -> Result<(u64, usize), PolyError> {
    let disc = discriminant(f)?;
    let primes = first_primes(FALLBACK_PRIME_COUNT);
    let mut best: Option<(u64, usize)> = None;
    for (i, &p) in primes.iter().enumerate() {
        if i >= ZASSENHAUS_PRIME_COUNT && best.is_some() {
            break;
        }
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let count = ddf_factor_count(&FpPoly::from_int(f, p));
        if best.map_or(true, |(_, c)| count < c) {
            best = Some((p, count));
        }
        if count == 1 {
            break;
        }
    }
    best.ok_or(PolyError::NoAdmissiblePrime(FALLBACK_PRIME_COUNT))
}

fn zassenhaus(f: &IntPoly, p: u64) -> Result<Vec<IntPoly>, PolyError> {
    let modular: Vec<FpPoly> = factor_fp(&FpPoly::from_int(f, p))?
        .factors
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let bound = mignotte_bound(f) * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut steps = 0;
    while modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = hensel_tree(f, &modular, &pb, steps);
    Ok(recombine(f, lifted, &modulus))
}

/// Lifts the monic factorization `f ≡ ∏ gᵢ (mod p)` to modulus `p^(2^steps)`.
fn hensel_tree(f: &IntPoly, factors: &[FpPoly], p: &BigInt, steps: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        let mut m = p.clone();
        for _ in 0..steps {
            m = &m * &m;
        }
        return vec![f.reduce_nonneg(&m)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |fs: &[FpPoly]| {
        fs.iter()
            .skip(1)
            .fold(fs[0].clone(), |acc, g| acc.mul(g))
    };
    let g0 = prod(left);
    let h0 = prod(right);
    let (one, s0, t0) = g0.xgcd(&h0);
    debug_assert!(one.is_one());
    let (mut g, mut h) = (g0.to_int(), h0.to_int());
    let (mut s, mut t) = (s0.to_int(), t0.to_int());
    let mut m = p.clone();
    for _ in 0..steps {
        let m2 = &m * &m;
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m2);
        m = m2;
    }
    let mut out = hensel_tree(&g, left, p, steps);
    out.extend(hensel_tree(&h, right, p, steps));
    out
}

/// One quadratic lifting step from `m` to `m2 = m²`.
fn hensel_step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m2: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let e = (f - &(g * h)).reduce_nonneg(m2);
    let (q, r) = (s * &e).reduce_nonneg(m2).div_rem_monic(h);
    let g2 = (&(g + &(t * &e)) + &(&q * g)).reduce_nonneg(m2);
    let h2 = (h + &r).reduce_nonneg(m2);
    let b = (&(&(s * &g2) + &(t * &h2)) - &IntPoly::constant(BigInt::one())).reduce_nonneg(m2);
    let (c, d) = (s * &b).reduce_nonneg(m2).div_rem_monic(&h2);
    let s2 = (s - &d).reduce_nonneg(m2);
    let t2 = (&(t - &(t * &b)) - &(&c * &g2)).reduce_nonneg(m2);
    (g2, h2, s2, t2)
}

/// Trial recombination of lifted factors; every split is tested once.
fn recombine(f: &IntPoly, lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut rest = f.clone();
    let mut pool = lifted;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        for subset in subsets(pool.len(), size) {
            if 2 * size == pool.len() && subset[0] != 0 {
                break;
            }
            let cand = subset
                .iter()
                .fold(IntPoly::constant(BigInt::one()), |acc, &i| {
                    (&acc * &pool[i]).reduce_nonneg(modulus)
                })
                .reduce_symmetric(modulus);
            let (q, r) = rest.div_rem_monic(&cand);
            if r.is_zero() {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    pool.remove(i);
                }
            }
            None => size += 1,
        }
    }
    found.push(rest);
    found
}

/// Index subsets of `{0, …, n−1}` of size `k` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
