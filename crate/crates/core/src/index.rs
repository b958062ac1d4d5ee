//! Index divisibility tests: Dedekind's criterion for any monic polynomial
//! and the five-clause trinomial criterion for `x⁸ + a x⁴ + b`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{certify_prime, small_valuation};
use crate::poly::{factor_mod_p, swan_disc, FpPoly, IntPoly, ModPFactorization, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("{0} is not a prime")]
    NotPrime(BigInt),
    #[error("{q} does not divide the discriminant")]
    NotDiscriminantPrime { q: BigInt },
    #[error("lift {0} does not reduce to the required residue")]
    BadLift(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Everything needed to recheck one application of Dedekind's criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DedekindCertificate {
    pub prime: u64,
    pub factorization: ModPFactorization,
    pub h1: IntPoly,
    pub h2: IntPoly,
    /// `(h1·h2 − T) / q`
    pub f_quot: IntPoly,
    pub gcd_mod_q: FpPoly,
    pub divides_index: bool,
}

/// Dedekind's criterion at `q` with canonical lifts (coefficients in `[0, q)`).
pub fn dedekind_at(t: &IntPoly, q: u64) -> Result<DedekindCertificate, IndexError> {
    if !t.is_monic() {
        return Err(IndexError::NotMonic);
    }
    let fac = factor_mod_p(t, q)?;
    let h1 = fac.radical();
    let h2 = FpPoly::from_int(t, q).div_rem(&h1).0;
    finish(t, fac, h1.to_int(), h2.to_int())
}

/// Dedekind's criterion with caller-chosen lifts `h1`, `h2` of the residues
/// used by [`dedekind_at`].
pub fn dedekind_with_lifts(
    t: &IntPoly,
    q: u64,
    h1: &IntPoly,
    h2: &IntPoly,
) -> Result<DedekindCertificate, IndexError> {
    if !t.is_monic() {
        return Err(IndexError::NotMonic);
    }
    let fac = factor_mod_p(t, q)?;
    let r1 = fac.radical();
    if FpPoly::from_int(h1, q) != r1 {
        return Err(IndexError::BadLift("h1"));
    }
    if FpPoly::from_int(h2, q) != FpPoly::from_int(t, q).div_rem(&r1).0 {
        return Err(IndexError::BadLift("h2"));
    }
    finish(t, fac, h1.clone(), h2.clone())
}

fn finish(
    t: &IntPoly,
    fac: ModPFactorization,
    h1: IntPoly,
    h2: IntPoly,
) -> Result<DedekindCertificate, IndexError> {
    let q = fac.modulus;
    let diff = &(&h1 * &h2) - t;
    let f_quot = diff
        .div_exact_scalar(&BigInt::from(q))
        .expect("h1·h2 ≡ T (mod q)");
    let g = FpPoly::from_int(&f_quot, q)
        .gcd(&FpPoly::from_int(&h1, q))
        .gcd(&FpPoly::from_int(&h2, q));
    Ok(DedekindCertificate {
        prime: q,
        factorization: fac,
        h1,
        h2,
        f_quot,
        divides_index: !g.is_one(),
        gcd_mod_q: g,
    })
}

/// Auxiliary quantities of the clause that applied.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct JksData {
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_decimal")]
    pub a1: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_decimal")]
    pub a2: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_decimal")]
    pub b1: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_decimal")]
    pub b2: Option<BigInt>,
    /// `H₁ mod 2`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<FpPoly>,
    /// `H₂ mod 2`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h2: Option<FpPoly>,
}

mod opt_decimal {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(n) => s.serialize_str(&n.to_string()),
            None => s.serialize_none(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JksClauseResult {
    #[serde(serialize_with = "crate::serde_decimal")]
    pub prime: BigInt,
    pub clause: u8,
    pub pass: bool,
    pub data: JksData,
}

/// Decides whether `q` divides the index of `x⁸ + a x⁴ + b`; `pass` means it
/// does not.
pub fn jks_at(a: &BigInt, b: &BigInt, q: &BigInt) -> Result<JksClauseResult, IndexError> {
    if q.sign() != Sign::Plus || certify_prime(q.magnitude()) == Some(false) || q.is_one() {
        return Err(IndexError::NotPrime(q.clone()));
    }
    let disc = swan_disc(8, 4, a, b)?;
    if !disc.is_multiple_of(q) {
        return Err(IndexError::NotDiscriminantPrime { q: q.clone() });
    }
    let divides = |n: &BigInt| n.is_multiple_of(q);
    let two = BigInt::from(2);
    let mut data = JksData::default();
    let (clause, pass) = match (divides(a), divides(b)) {
        (true, true) => (1, !b.is_multiple_of(&(q * q))),
        (true, false) => {
            let a2 = a / q;
            let j = small_valuation(8, q);
            let b1 = (b + (-b).pow(q.pow(j).to_u32().expect("q^j divides 8"))) / q;
            let first = divides(&a2) && !divides(&b1);
            let second = !divides(&(&a2 * (-(b * &a2 * &a2) - &b1 * &b1)));
            data.a2 = Some(a2);
            data.b1 = Some(b1);
            (2, first || second)
        }
        (false, true) => {
            let e = small_valuation(4, q);
            let a1 = (a + (-a).pow(q.pow(e).to_u32().expect("q^e divides 4"))) / q;
            let b2 = b / q;
            let first = divides(&a1) && !divides(&b2);
            let second = !divides(&(&a1 * b2.pow(3u32) * (-(a * &a1) + &b2)));
            data.a1 = Some(a1);
            data.b2 = Some(b2);
            (3, first || second)
        }
        (false, false) if *q == two => {
            let h1 = IntPoly::new(vec![b.clone(), a.clone(), BigInt::one()]);
            let lin = IntPoly::new(vec![-b, -a]);
            let num = &(&IntPoly::monomial(a.clone(), 4) + &IntPoly::constant(b.clone())) + &lin.pow(4);
            let h2 = num.div_exact_scalar(&two).expect("numerator of H₂ is even");
            let (h1, h2) = (FpPoly::from_int(&h1, 2), FpPoly::from_int(&h2, 2));
            let pass = h1.gcd(&h2).is_one();
            data.h1 = Some(h1);
            data.h2 = Some(h2);
            (4, pass)
        }
        (false, false) => {
            let d: BigInt = a * a - b * 4;
            (5, !d.is_multiple_of(&(q * q)))
        }
    };
    Ok(JksClauseResult {
        prime: q.clone(),
        clause,
        pass,
        data,
    })
}
