//! Galois groups and monogenicity of the even octic families
//! `x⁸ + a x⁴ + b` and `x⁸ + a x⁶ + b x⁴ + a x² + 1`.

pub mod arith;
pub mod families;
pub mod galois;
pub mod index;
pub mod monogenic;
pub mod poly;
pub mod sieve;

use num_bigint::BigInt;

pub(crate) fn serde_decimal<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}
