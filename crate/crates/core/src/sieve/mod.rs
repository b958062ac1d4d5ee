//! Squarefree values of products of irreducible polynomials `G(t) = ∏ γᵢ(t)`:
//! local densities `ρ_G(ℓ²)`, local obstructions, the truncated constant
//! `C_G`, and counts of squarefree specializations.

mod parse;
mod scan;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::prime_table;
use crate::poly::{factor_mod_p, IntPoly};

pub use parse::parse_factored;
pub use scan::{scan, scan_brute, scan_with_checkpoint, ScanMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SieveError {
    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("factor {index} is constant")]
    Constant { index: usize },
    #[error("factor {index} has degree {degree}, above 3")]
    Degree { index: usize, degree: usize },
    #[error("factor {index} has nontrivial content")]
    NotPrimitive { index: usize },
    #[error("factor {index} is reducible over Z")]
    Reducible { index: usize },
    #[error("factors {first} and {second} coincide up to sign")]
    Duplicate { first: usize, second: usize },
    #[error("scan bound must be at least 2")]
    BoundTooSmall,
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

/// A product of pairwise distinct irreducible integer polynomials in `t`,
/// each of degree 1 to 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    pub factors: Vec<IntPoly>,
    pub source_text: String,
}

impl FactoredPoly {
    pub fn product(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(BigInt::one()), |acc, f| &acc * f)
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.degree().unwrap_or(0)).sum()
    }

    /// Canonical rendering, e.g. `(4t + 1)(4t + 5)`.
    pub fn display(&self) -> String {
        self.factors
            .iter()
            .map(|f| format!("({})", f.display_with("t")))
            .collect()
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl std::str::FromStr for FactoredPoly {
    type Err = SieveError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_factored(s)
    }
}

/// Coefficients of `g` reduced into `[0, m)`.
fn coeffs_mod(g: &IntPoly, m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    g.coeffs()
        .iter()
        .map(|c| c.mod_floor(&mb).to_u64().unwrap())
        .collect()
}

fn eval_mod(coeffs: &[u64], z: u64, m: u64) -> u64 {
    let (z, m) = (z as u128, m as u128);
    coeffs
        .iter()
        .rev()
        .fold(0u128, |acc, &c| (acc * z + c as u128) % m) as u64
}

/// `ρ_G(ℓ²)`: the number of units `z` mod `ℓ²` with `G(z) ≡ 0 (mod ℓ²)`.
///
/// Each unit root `r` of `G` mod `ℓ` is lifted through
/// `G(r + kℓ) ≡ G(r) + kℓ·G'(r) (mod ℓ²)`.
pub fn rho(g: &FactoredPoly, ell: u64) -> u64 {
    let prod = g.product();
    let m = ell * ell;
    let gc = coeffs_mod(&prod, m);
    let dc = coeffs_mod(&prod.derivative(), ell);
    let mut roots: Vec<u64> = g
        .factors
        .iter()
        .flat_map(|f| crate::poly::FpPoly::from_int(f, ell).roots())
        .filter(|&r| r != 0)
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots
        .into_iter()
        .map(|r| {
            let c = eval_mod(&gc, r, m) / ell;
            if eval_mod(&dc, r, ell) != 0 {
                1
            } else if c == 0 {
                ell
            } else {
                0
            }
        })
        .sum()
}

/// `ρ_G(ℓ²)` by evaluating `G` at every unit mod `ℓ²`.
pub fn rho_exhaustive(g: &FactoredPoly, ell: u64) -> u64 {
    let m = ell * ell;
    let gc = coeffs_mod(&g.product(), m);
    (1..m)
        .filter(|z| z % ell != 0 && eval_mod(&gc, *z, m) == 0)
        .count() as u64
}

/// `N_ℓ`: linear factors of `G` over `F_ℓ`, counted with multiplicity.
pub fn linear_factor_count(g: &FactoredPoly, ell: u64) -> usize {
    g.factors
        .iter()
        .map(|f| factor_mod_p(f, ell).map(|fac| fac.linear_count()).unwrap_or(0))
        .sum()
}

fn obstructed_at(g: &FactoredPoly, ell: u64) -> bool {
    rho(g, ell) == ell * (ell - 1)
}

/// The least prime `ℓ` at which every unit mod `ℓ²` is a root of `G`.
/// Only primes with `2ℓ ≤ N_ℓ + 2` can be obstructed, and `N_ℓ ≤ deg G`,
/// so the search is finite.
pub fn find_obstruction(g: &FactoredPoly) -> Option<u64> {
    let bound = (g.degree() as u64 + 2) / 2;
    prime_table(bound).iter().copied().find(|&ell| {
        2 * ell <= linear_factor_count(g, ell) as u64 + 2 && obstructed_at(g, ell)
    })
}

/// The least obstructed prime up to `bound`, checking every prime.
pub fn find_obstruction_exhaustive(g: &FactoredPoly, bound: u64) -> Option<u64> {
    prime_table(bound)
        .iter()
        .copied()
        .find(|&ell| obstructed_at(g, ell))
}

/// Truncated Euler product `∏_{ℓ ≤ cutoff} (1 − ρ_G(ℓ²)/(ℓ(ℓ−1)))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Density {
    pub cutoff: u64,
    pub value: BigRational,
}

impl Density {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(0.0)
    }

    /// Decimal expansion truncated to `digits` places.
    pub fn decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = (self.value.numer() * &scale) / self.value.denom();
        let (int, frac) = scaled.div_rem(&scale);
        format!("{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

pub fn density(g: &FactoredPoly, cutoff: u64) -> Density {
    density_with_rho(g, cutoff).0
}

fn density_with_rho(g: &FactoredPoly, cutoff: u64) -> (Density, Vec<(u64, u64)>) {
    let mut value = BigRational::one();
    let mut rhos = Vec::new();
    for &ell in prime_table(cutoff).iter() {
        let r = rho(g, ell);
        rhos.push((ell, r));
        if r != 0 && !value.is_zero() {
            let units = BigInt::from(ell * (ell - 1));
            value *= BigRational::new(&units - BigInt::from(r), units);
        }
    }
    (Density { cutoff, value }, rhos)
}

#[derive(Debug, Clone, Serialize)]
pub struct SieveReport {
    pub polynomial: String,
    pub obstruction: Option<u64>,
    pub rho_values: Vec<(u64, u64)>,
    pub cutoff: u64,
    /// Exact truncated `C_G` as `p/q`.
    pub c_g_truncated: String,
    pub c_g_decimal: String,
    pub counts: Vec<ScanCount>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanCount {
    pub bound: u64,
    pub mode: ScanMode,
    pub squarefree: u64,
}

/// Obstruction, `ρ` values and `C_G` up to `cutoff`, plus a scan for each
/// bound in `scan_bounds`.
pub fn report(g: &FactoredPoly, cutoff: u64, scan_bounds: &[(u64, ScanMode)]) -> SieveReport {
    let (d, rho_values) = density_with_rho(g, cutoff);
    let counts = scan_bounds
        .iter()
        .filter(|(x, _)| *x >= 2)
        .map(|&(bound, mode)| ScanCount {
            bound,
            mode,
            squarefree: scan(g, bound, mode).expect("bound checked"),
        })
        .collect();
    SieveReport {
        polynomial: g.display(),
        obstruction: find_obstruction(g),
        rho_values,
        cutoff,
        c_g_truncated: d.value.to_string(),
        c_g_decimal: d.decimal(12),
        counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FactoredPoly {
        parse_factored(s).unwrap()
    }

    const GATES: [&str; 5] = [
        "(4t+1)(4t+5)",
        "(t^2-12)",
        "(t^2+1)",
        "(16t+13)(4t+1)(4t-3)",
        "(2t+9)(2t-3)(8t-13)",
    ];

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&g("(t^2+1)"), 2), 0);
        assert_eq!(rho(&g("(4t+1)(4t+5)"), 2), 0);
        assert_eq!(rho(&g("(t-1)(t+1)"), 3), 2);
        assert_eq!(rho(&g("(t^2+1)"), 5), 2);
        assert_eq!(rho(&g("(t)"), 7), 0);
    }

    #[test]
    fn rho_matches_exhaustive() {
        let polys = [
            "(t^2+1)",
            "(t-1)(t+1)",
            "(t^2+t+1)(t-1)",
            "(t^3-2)",
            "(2t+1)(t^2-3)(t+5)",
            "(4t+1)(4t+5)",
            "(t^2-12)",
            "(16t+13)(4t+1)(4t-3)",
            "(2t+9)(2t-3)(8t-13)",
            "(t)(t+1)(t+2)",
            "(t^2+t+2)(t^2+t+4)",
            "(t-1)(t-10)",
            "(t^3+3t+9)",
        ];
        for s in polys {
            let gp = g(s);
            for &ell in prime_table(60).iter() {
                assert_eq!(rho(&gp, ell), rho_exhaustive(&gp, ell), "{s} at {ell}");
            }
        }
    }

    #[test]
    fn obstruction_found_at_two() {
        // (t+1)(t+3) ≡ 0 mod 8 at odd t
        let gp = g("(t+1)(t+3)");
        assert_eq!(rho(&gp, 2), 2);
        assert_eq!(find_obstruction(&gp), Some(2));
        assert_eq!(density(&gp, 10).value, BigRational::zero());
        let gp = g("(t^2+t+2)(t^2+t+4)");
        assert_eq!(find_obstruction(&gp), Some(2));
        assert_eq!(find_obstruction(&g("(t-1)(t+1)")), Some(2));
        assert_eq!(find_obstruction(&g("(t-1)(t+2)")), None);
    }

    #[test]
    fn gates_have_no_obstruction() {
        for s in GATES {
            assert_eq!(find_obstruction(&g(s)), None, "{s}");
            assert_eq!(find_obstruction_exhaustive(&g(s), 50), None, "{s}");
        }
    }

    #[test]
    fn density_examples() {
        assert_eq!(density(&g("(t^2+1)"), 2).value, BigRational::one());
        let expected = [2u64, 3, 5, 7].iter().fold(BigRational::one(), |acc, &l| {
            acc * BigRational::new(BigInt::from(l * (l - 1) - 1), BigInt::from(l * (l - 1)))
        });
        assert_eq!(density(&g("(t-1)"), 10).value, expected);
        assert_eq!(density(&g("(t-1)"), 10).decimal(6), "0.386408");
    }

    #[test]
    fn density_is_antitone_and_stable() {
        for s in GATES {
            let gp = g(s);
            let d3 = density(&gp, 1000);
            let d4 = density(&gp, 10_000);
            assert!(d4.value <= d3.value, "{s}");
            assert!(d3.value <= density(&gp, 100).value, "{s}");
            assert!((d3.to_f64() - d4.to_f64()).abs() <= 1e-3, "{s}");
            assert!(d4.to_f64() > 0.0);
        }
    }

    #[test]
    fn report_fields() {
        let r = report(&g("(t^2+1)"), 10, &[(10, ScanMode::Integers)]);
        assert_eq!(r.obstruction, None);
        assert_eq!(r.rho_values, vec![(2, 0), (3, 0), (5, 2), (7, 0)]);
        assert_eq!(r.c_g_truncated, "9/10");
        assert_eq!(r.counts[0].squarefree, 9);
        assert_eq!(r.polynomial, "(t^2 + 1)");
    }
}
