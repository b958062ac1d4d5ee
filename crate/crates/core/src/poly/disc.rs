use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{IntPoly, PolyError};

fn exact_div(p: &IntPoly, k: &BigInt) -> IntPoly {
    p.div_exact_scalar(k)
        .expect("subresultant remainder is divisible by g·h^δ")
}

/// Resultant over Z by the subresultant polynomial remainder sequence.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = 1i32;
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
    }
    let ca = a.content();
    let cb = b.content();
    let da = a.degree().unwrap() as u32;
    let db = b.degree().unwrap() as u32;
    let scale = ca.pow(db) * cb.pow(da);
    a = exact_div(&a, &ca);
    b = exact_div(&b, &cb);

    let mut gg = BigInt::one();
    let mut hh = BigInt::one();
    loop {
        let (Some(deg_a), Some(deg_b)) = (a.degree(), b.degree()) else {
            return BigInt::zero();
        };
        if deg_b == 0 {
            // h ← h^(1−deg A) · lc(B)^deg A
            let lb = b.leading_coeff().unwrap();
            let num = lb.pow(deg_a as u32);
            let res = if deg_a == 0 {
                num * &hh
            } else {
                let den = hh.pow(deg_a as u32 - 1);
                debug_assert!((&num % &den).is_zero());
                num / den
            };
            let out = res * &scale;
            return if sign < 0 { -out } else { out };
        }
        let delta = (deg_a - deg_b) as u32;
        if deg_a % 2 == 1 && deg_b % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        a = b;
        b = exact_div(&r, &(&gg * hh.pow(delta)));
        gg = a.leading_coeff().unwrap().clone();
        hh = if delta == 0 {
            hh
        } else {
            let num = gg.pow(delta);
            let den = hh.pow(delta - 1);
            num / den
        };
    }
}

/// Discriminant `(−1)^(n(n−1)/2) · Res(f, f′) / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt, PolyError> {
    let n = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(PolyError::Constant),
    };
    let res = resultant(f, &f.derivative());
    let lc = f.leading_coeff().unwrap();
    let (q, r) = res.div_rem(lc);
    debug_assert!(r.is_zero());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

/// Closed-form discriminant of the trinomial `xⁿ + A xᵐ + B`.
pub fn swan_disc(n: u32, m: u32, a: &BigInt, b: &BigInt) -> Result<BigInt, PolyError> {
    if m == 0 || m >= n {
        return Err(PolyError::BadExponents { n, m });
    }
    let d = n.gcd(&m);
    let nn = BigInt::from(n);
    let nm = BigInt::from(n - m);
    let mm = BigInt::from(m);
    let first = nn.pow(n / d) * b.pow((n - m) / d);
    let mut second = nm.pow((n - m) / d) * mm.pow(m / d) * a.pow(n / d);
    if (n / d) % 2 == 1 {
        second = -second;
    }
    let inner = (first - second).pow(d);
    let mut out = b.pow(m - 1) * inner;
    if (n * (n - 1) / 2) % 2 == 1 {
        out = -out;
    }
    Ok(out)
}

#[cfg(test)]
fn sylvester_det(f: &IntPoly, g: &IntPoly) -> BigInt {
    // Fraction-free Bareiss elimination on the Sylvester matrix; an
    // independent route to the resultant.
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&r| !mat[r][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    sign * &mat[size - 1][size - 1]
}
