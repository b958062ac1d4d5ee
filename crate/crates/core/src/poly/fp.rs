use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{IntPoly, PolyError};
use crate::arith::is_prime_u64;

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

/// Polynomial over F_p with coefficients in `[0, p)`, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let m = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().unwrap())
            .collect();
        Self::new(p, coeffs)
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Canonical lift with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn scale(&self, k: u64) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&c| mulmod(c, k, p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.leading_coeff(), self.p))
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                addmod(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    o.coeffs.get(i).copied().unwrap_or(0),
                    p,
                )
            })
            .collect();
        Self::new(p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                submod(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    o.coeffs.get(i).copied().unwrap_or(0),
                    p,
                )
            })
            .collect();
        Self::new(p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        if self.is_zero() || o.is_zero() {
            return Self::zero(p);
        }
        let mut acc = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, acc.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = invmod(d.leading_coeff(), p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mulmod(r[i + dd], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i + j] = submod(r[i + j], mulmod(c, dc, p), p);
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g` and `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.leading_coeff(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// `self^e mod m`, with `e` given as little-endian 64-bit limbs.
    pub fn pow_mod_limbs(&self, e: &[u64], m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for &limb in e.iter().rev() {
            for bit in (0..64).rev() {
                acc = acc.mul(&acc).rem(m);
                if (limb >> bit) & 1 == 1 {
                    acc = acc.mul(&base).rem(m);
                }
            }
        }
        acc
    }

    pub fn pow_mod(&self, e: u64, m: &Self) -> Self {
        self.pow_mod_limbs(&[e], m)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect();
        Self::new(p, c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| addmod(mulmod(acc, x, p), c, p))
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff `x^(pⁿ) ≡ x` and
    /// `gcd(x^(p^(n/r)) − x, f) = 1` for every prime `r | n`.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        let x = Self::x(self.p);
        let mut frob = vec![x.rem(&f)];
        for _ in 0..n {
            let last = frob.last().unwrap();
            frob.push(last.pow_mod(self.p, &f));
        }
        if frob[n] != x.rem(&f) {
            return false;
        }
        let mut m = n;
        let mut r = 2;
        while m > 1 {
            if m % r == 0 {
                while m % r == 0 {
                    m /= r;
                }
                if !frob[n / r].sub(&x).gcd(&f).is_one() {
                    return false;
                }
            }
            r += 1;
        }
        true
    }

    /// Roots in `[0, p)`, sorted, without multiplicity.
    pub fn roots(&self) -> Vec<u64> {
        if self.is_zero() {
            return (0..self.p).collect();
        }
        let Ok(fac) = factor_fp(self) else { return Vec::new() };
        let mut out: Vec<u64> = fac
            .factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| (self.p - g.coeffs[0]) % self.p)
            .collect();
        out.sort_unstable();
        out
    }

    fn display_with(&self, var: &str) -> String {
        self.to_int().display_with(var)
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then_with(|| self.p.cmp(&other.p))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) mod {}", self, self.p)
    }
}

impl Serialize for FpPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `f ≡ unit · ∏ gᵢ^eᵢ (mod p)` with monic irreducible `gᵢ` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModPFactorization {
    pub modulus: u64,
    pub unit: u64,
    pub factors: Vec<(FpPoly, u32)>,
}

impl ModPFactorization {
    /// Product of the distinct irreducible factors.
    pub fn radical(&self) -> FpPoly {
        self.factors
            .iter()
            .fold(FpPoly::one(self.modulus), |acc, (g, _)| acc.mul(g))
    }

    pub fn expand(&self) -> FpPoly {
        let mut acc = FpPoly::new(self.modulus, vec![self.unit]);
        for (g, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.factors.iter().map(|(_, e)| *e as usize).sum()
    }

    /// Number of linear factors counted with multiplicity.
    pub fn linear_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(_, e)| *e as usize)
            .sum()
    }
}

/// Factors `f mod p` into monic irreducibles.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<ModPFactorization, PolyError> {
    if !is_prime_u64(p) {
        return Err(PolyError::NotPrime(p));
    }
    let fp = FpPoly::from_int(f, p);
    if fp.is_zero() {
        return Err(PolyError::ZeroModP(p));
    }
    factor_fp(&fp)
}

pub(crate) fn factor_fp(f: &FpPoly) -> Result<ModPFactorization, PolyError> {
    let p = f.p;
    if f.is_zero() {
        return Err(PolyError::ZeroModP(p));
    }
    let unit = f.leading_coeff();
    let monic = f.monic();
    let mut factors: Vec<(FpPoly, u32)> = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&monic) {
        for (g, d) in distinct_degree(&sqf) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed_for(&g));
            for h in equal_degree(&g, d, &mut rng) {
                factors.push((h, mult));
            }
        }
    }
    factors.sort();
    let mut merged: Vec<(FpPoly, u32)> = Vec::with_capacity(factors.len());
    for (g, e) in factors {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(ModPFactorization {
        modulus: p,
        unit,
        factors: merged,
    })
}

fn seed_for(f: &FpPoly) -> u64 {
    f.coeffs
        .iter()
        .fold(f.p ^ 0x9e37_79b9_7f4a_7c15, |h, &c| {
            (h.rotate_left(17) ^ c).wrapping_mul(0xff51_afd7_ed55_8ccd)
        })
}

/// `f = ∏ sᵢ^i` with each `sᵢ` squarefree and pairwise coprime; `f` monic.
fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p) = g(x)^p over F_p
        let g = pth_root(f);
        for (s, m) in squarefree_decomposition(&g) {
            out.push((s, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if !c.is_one() {
        let g = pth_root(&c);
        for (s, m) in squarefree_decomposition(&g) {
            out.push((s, m * p as u32));
        }
    }
    out
}

fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.p as usize;
    let coeffs = f.coeffs.iter().step_by(p).copied().collect();
    FpPoly::new(f.p, coeffs)
}

/// Splits a squarefree monic `f` into products of irreducibles of equal degree.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.rem(&rest);
    let mut d = 0;
    while let Some(n) = rest.degree() {
        if n == 0 {
            break;
        }
        d += 1;
        if 2 * d > n {
            out.push((rest.monic(), n));
            break;
        }
        h = h.pow_mod(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            out.push((g.clone(), d));
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
    }
    out
}

/// Cantor–Zassenhaus splitting of a squarefree product of degree-`d` irreducibles.
fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(f);
        if !g.is_one() {
            return split(f, &g, d, rng);
        }
        let probe = if p == 2 {
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d − 1)/2) = (a^(1 + p + … + p^(d−1)))^((p − 1)/2)
            let mut t = a.rem(f);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(p, f);
                norm = norm.mul(&t).rem(f);
            }
            norm.pow_mod((p - 1) / 2, f).sub(&FpPoly::one(p))
        };
        let g = probe.gcd(f);
        if !g.is_one() && g.degree() != f.degree() {
            return split(f, &g, d, rng);
        }
    }
}

fn split(f: &FpPoly, g: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let h = f.div_rem(g).0;
    let mut out = equal_degree(g, d, rng);
    out.extend(equal_degree(&h.monic(), d, rng));
    out
}

/// Degree pattern of a squarefree `f` via distinct-degree splitting only.
pub(crate) fn ddf_factor_count(f: &FpPoly) -> usize {
    distinct_degree(&f.monic())
        .into_iter()
        .map(|(g, d)| g.degree().unwrap() / d)
        .sum()
}
