use std::collections::HashMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{FactoredPoly, SieveError};
use crate::arith::{is_squarefree, prime_table, DEFAULT_TRIAL_BOUND};
use crate::poly::FpPoly;

pub const CHUNK: u64 = 1 << 16;
/// Largest sieving prime bound for the fast path.
const MAX_SIEVE_BOUND: u64 = 1 << 27;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Primes,
    Integers,
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanMode::Primes => "primes",
            ScanMode::Integers => "integers",
        })
    }
}

impl FromStr for ScanMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "primes" => Ok(ScanMode::Primes),
            "integers" => Ok(ScanMode::Integers),
            _ => Err(format!("unknown scan mode '{s}' (expected primes or integers)")),
        }
    }
}

/// Number of `t ≤ bound` (primes only, or all `t ≥ 1`) with `G(t)`
/// squarefree. `G(t) = 0` counts as not squarefree.
pub fn scan(g: &FactoredPoly, bound: u64, mode: ScanMode) -> Result<u64, SieveError> {
    if bound < 2 {
        return Err(SieveError::BoundTooSmall);
    }
    let plan = Plan::new(g, bound);
    Ok(chunks(bound)
        .into_par_iter()
        .map(|(lo, hi)| plan.count(lo, hi, mode))
        .sum())
}

/// Direct oracle: factor each value by trial division. Values whose
/// squarefreeness stays undetermined are not counted.
pub fn scan_brute(g: &FactoredPoly, bound: u64, mode: ScanMode) -> u64 {
    (1..=bound)
        .filter(|&t| mode == ScanMode::Integers || crate::arith::is_prime_u64(t))
        .filter(|&t| squarefree_direct(g, t, DEFAULT_TRIAL_BOUND))
        .count() as u64
}

fn squarefree_direct(g: &FactoredPoly, t: u64, trial_bound: u64) -> bool {
    let v = g.product().eval(&BigInt::from(t));
    !v.is_zero() && is_squarefree(&v, trial_bound).is_ok_and(|r| r.is_true())
}

/// [`scan`] that records each finished chunk as a line `start end count`
/// under a header naming `G`, the mode and the bound. An existing file with
/// the same header resumes where it stopped.
pub fn scan_with_checkpoint(
    g: &FactoredPoly,
    bound: u64,
    mode: ScanMode,
    path: &Path,
) -> Result<u64, SieveError> {
    if bound < 2 {
        return Err(SieveError::BoundTooSmall);
    }
    let io = |e: std::io::Error| SieveError::Checkpoint(e.to_string());
    let header = format!("# G={} mode={mode} bound={bound} chunk={CHUNK}", g.display());
    let mut done: HashMap<(u64, u64), u64> = HashMap::new();
    if path.exists() {
        let mut lines = BufReader::new(File::open(path).map_err(io)?).lines();
        match lines.next().transpose().map_err(io)? {
            Some(h) if h == header => {}
            Some(h) => {
                return Err(SieveError::Checkpoint(format!(
                    "header mismatch: found '{h}', expected '{header}'"
                )))
            }
            None => {}
        }
        for line in lines {
            let line = line.map_err(io)?;
            let nums: Vec<u64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| SieveError::Checkpoint(format!("bad line '{line}': {e}")))?;
            match nums[..] {
                [lo, hi, count] => {
                    done.insert((lo, hi), count);
                }
                _ => return Err(SieveError::Checkpoint(format!("bad line '{line}'"))),
            }
        }
    }
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io)?;
    if done.is_empty() && file.metadata().map_err(io)?.len() == 0 {
        writeln!(file, "{header}").map_err(io)?;
    }

    let all = chunks(bound);
    let mut total: u64 = all.iter().filter_map(|k| done.get(k)).sum();
    let todo: Vec<(u64, u64)> = all.into_iter().filter(|k| !done.contains_key(k)).collect();
    if todo.is_empty() {
        return Ok(total);
    }
    let plan = Plan::new(g, bound);
    let batch = rayon::current_num_threads().max(1) * 2;
    for group in todo.chunks(batch) {
        let counts: Vec<u64> = group
            .par_iter()
            .map(|&(lo, hi)| plan.count(lo, hi, mode))
            .collect();
        for (&(lo, hi), count) in group.iter().zip(counts) {
            writeln!(file, "{lo} {hi} {count}").map_err(io)?;
            total += count;
        }
        file.flush().map_err(io)?;
    }
    Ok(total)
}

fn chunks(bound: u64) -> Vec<(u64, u64)> {
    (0..bound.div_ceil(CHUNK))
        .map(|k| (k * CHUNK + 1, ((k + 1) * CHUNK).min(bound)))
        .collect()
}

enum Plan {
    Sieve(SievePlan),
    Direct(FactoredPoly),
}

struct SievePlan {
    factors: Vec<Vec<i128>>,
    /// Primes `ℓ ≤ L` with the roots of `G` mod `ℓ`; `L³` exceeds every
    /// `|γᵢ(t)|` in range.
    roots: Vec<(u64, Vec<u64>)>,
}

impl Plan {
    fn new(g: &FactoredPoly, bound: u64) -> Plan {
        let x = BigInt::from(bound);
        let max_value = g
            .factors
            .iter()
            .map(|f| {
                f.coeffs()
                    .iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, c| acc * &x + c.abs())
            })
            .max()
            .unwrap_or_default();
        if max_value.bits() > 125 {
            return Plan::Direct(g.clone());
        }
        let limit = max_value.cbrt() + 1u32;
        let limit = match limit.to_u64() {
            Some(l) if l <= MAX_SIEVE_BOUND => l.max(2),
            _ => return Plan::Direct(g.clone()),
        };
        let factors: Vec<Vec<i128>> = g
            .factors
            .iter()
            .map(|f| f.coeffs().iter().map(|c| c.to_i128().unwrap()).collect())
            .collect();
        let primes = prime_table(limit);
        let roots = primes
            .par_iter()
            .filter_map(|&ell| {
                let mut r: Vec<u64> = factors.iter().flat_map(|f| roots_mod(f, ell)).collect();
                r.sort_unstable();
                r.dedup();
                (!r.is_empty()).then_some((ell, r))
            })
            .collect();
        Plan::Sieve(SievePlan { factors, roots })
    }

    fn count(&self, lo: u64, hi: u64, mode: ScanMode) -> u64 {
        match self {
            Plan::Sieve(p) => p.count(lo, hi, mode),
            Plan::Direct(g) => (lo..=hi)
                .filter(|&t| mode == ScanMode::Integers || crate::arith::is_prime_u64(t))
                .filter(|&t| squarefree_direct(g, t, DEFAULT_TRIAL_BOUND))
                .count() as u64,
        }
    }
}

fn roots_mod(f: &[i128], ell: u64) -> Vec<u64> {
    let m = ell as i128;
    let c: Vec<u64> = f.iter().map(|x| x.rem_euclid(m) as u64).collect();
    if let [c0, c1] = c[..] {
        if c1 == 0 {
            return Vec::new();
        }
        let inv = mod_inverse(c1, ell);
        let r = ((ell - c0) as u128 * inv as u128 % ell as u128) as u64;
        return vec![r];
    }
    FpPoly::new(ell, c).roots()
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
    e.x.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

fn eval_i128(f: &[i128], t: u64) -> i128 {
    let t = t as i128;
    f.iter().rev().fold(0i128, |acc, &c| acc * t + c)
}

fn is_square_u128(n: u128) -> bool {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r * r == n
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primality flags for `[lo, hi]`.
fn segment_primes(lo: u64, hi: u64) -> Vec<bool> {
    let mut flags = vec![true; (hi - lo + 1) as usize];
    for t in lo..=hi.min(1) {
        flags[(t - lo) as usize] = false;
    }
    let root = (hi as f64).sqrt() as u64 + 1;
    for &p in prime_table(root).iter() {
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut m = start;
        while m <= hi {
            flags[(m - lo) as usize] = false;
            m += p;
        }
    }
    flags
}

impl SievePlan {
    fn count(&self, lo: u64, hi: u64, mode: ScanMode) -> u64 {
        let len = (hi - lo + 1) as usize;
        let mut live = match mode {
            ScanMode::Primes => segment_primes(lo, hi),
            ScanMode::Integers => vec![true; len],
        };
        let mut values: Vec<Vec<u128>> = self
            .factors
            .iter()
            .map(|f| (lo..=hi).map(|t| eval_i128(f, t).unsigned_abs()).collect())
            .collect();
        for j in 0..len {
            if live[j] && values.iter().any(|v| v[j] == 0) {
                live[j] = false;
            }
        }
        for (ell, roots) in &self.roots {
            let ell = *ell;
            let l128 = ell as u128;
            for &r in roots {
                let first = lo + (r + ell - lo % ell) % ell;
                let mut t = first;
                while t <= hi {
                    let j = (t - lo) as usize;
                    if live[j] {
                        let mut e = 0;
                        for v in values.iter_mut() {
                            while v[j] % l128 == 0 {
                                v[j] /= l128;
                                e += 1;
                            }
                        }
                        if e >= 2 {
                            live[j] = false;
                        }
                    }
                    t += ell;
                }
            }
        }
        (0..len)
            .filter(|&j| {
                live[j]
                    && values.iter().all(|v| v[j] == 1 || !is_square_u128(v[j]))
                    && (0..values.len()).all(|a| {
                        (a + 1..values.len()).all(|b| gcd_u128(values[a][j], values[b][j]) == 1)
                    })
            })
            .count() as u64
    }
}
