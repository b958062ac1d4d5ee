//! Galois groups of irreducible even octics read off from coefficient
//! conditions. Every branch condition is evaluated; exactly one must hold.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{exact_sqrt, is_square, primes_up_to};
use crate::poly::{FpPoly, IntPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Form {
    /// `x⁸ + a x⁴ + b`
    #[serde(rename = "F")]
    EvenTrinomial,
    /// `x⁸ + a x⁶ + b x⁴ + a x² + 1`
    #[serde(rename = "G")]
    EvenReciprocal,
}

impl Form {
    pub fn tag(self) -> &'static str {
        match self {
            Form::EvenTrinomial => "F",
            Form::EvenReciprocal => "G",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F" | "f" => Ok(Form::EvenTrinomial),
            "G" | "g" => Ok(Form::EvenReciprocal),
            _ => Err(format!("unknown form {s:?} (expected F or G)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("x⁸ + a x⁴ + b needs b ≠ 0")]
    ZeroB,
    #[error("x⁸ + a x⁶ + b x⁴ + a x² + 1 needs a ≠ 0")]
    ZeroA,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OcticInput {
    pub form: Form,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub b: BigInt,
}

impl OcticInput {
    pub fn new(form: Form, a: BigInt, b: BigInt) -> Result<Self, InputError> {
        match form {
            Form::EvenTrinomial if b.is_zero() => Err(InputError::ZeroB),
            Form::EvenReciprocal if a.is_zero() => Err(InputError::ZeroA),
            _ => Ok(OcticInput { form, a, b }),
        }
    }

    pub fn from_i64(form: Form, a: i64, b: i64) -> Result<Self, InputError> {
        Self::new(form, BigInt::from(a), BigInt::from(b))
    }

    pub fn polynomial(&self) -> IntPoly {
        match self.form {
            Form::EvenTrinomial => IntPoly::even_trinomial(&self.a, &self.b),
            Form::EvenReciprocal => IntPoly::even_reciprocal(&self.a, &self.b),
        }
    }
}

impl fmt::Display for OcticInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.form, self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WTriple {
    #[serde(serialize_with = "crate::serde_decimal")]
    pub w1: BigInt,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub w2: BigInt,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub w3: BigInt,
}

impl WTriple {
    pub fn product(&self) -> BigInt {
        &self.w1 * &self.w2 * &self.w3
    }
}

/// `W₁ = b + 2 − 2a`, `W₂ = b + 2 + 2a`, `W₃ = a² − 4b + 8`.
pub fn w_triple(a: &BigInt, b: &BigInt) -> WTriple {
    let two = BigInt::from(2);
    WTriple {
        w1: b + &two - a * &two,
        w2: b + &two + a * &two,
        w3: a * a - b * 4 + 8,
    }
}

/// `u + v·√r` with the nonnegative square root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalExpr {
    pub u: BigInt,
    pub v: BigInt,
    pub r: BigInt,
}

impl RadicalExpr {
    pub fn new(u: BigInt, v: BigInt, r: BigInt) -> Self {
        RadicalExpr { u, v, r }
    }

    pub fn integer(u: BigInt) -> Self {
        RadicalExpr::new(u, BigInt::zero(), BigInt::zero())
    }

    /// The value when it is an integer. A negative radicand is never
    /// integer-valued unless `v = 0`.
    pub fn value(&self) -> Option<BigInt> {
        if self.v.is_zero() {
            return Some(self.u.clone());
        }
        exact_sqrt(&self.r).map(|s| &self.u + &self.v * s)
    }

    pub fn is_square(&self) -> bool {
        self.value().is_some_and(|x| is_square(&x))
    }

    pub fn is_nonzero_square(&self) -> bool {
        self.value().is_some_and(|x| !x.is_zero() && is_square(&x))
    }
}

/// Transitive group `8TX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisLabel(u8);

impl GaloisLabel {
    pub const ALL: [u8; 14] = [2, 3, 4, 6, 8, 9, 10, 11, 15, 16, 17, 18, 22, 26];
    pub const T2: Self = GaloisLabel(2);
    pub const T3: Self = GaloisLabel(3);
    pub const T4: Self = GaloisLabel(4);
    pub const T6: Self = GaloisLabel(6);
    pub const T8: Self = GaloisLabel(8);
    pub const T9: Self = GaloisLabel(9);
    pub const T10: Self = GaloisLabel(10);
    pub const T11: Self = GaloisLabel(11);
    pub const T15: Self = GaloisLabel(15);
    pub const T16: Self = GaloisLabel(16);
    pub const T17: Self = GaloisLabel(17);
    pub const T18: Self = GaloisLabel(18);
    pub const T22: Self = GaloisLabel(22);
    pub const T26: Self = GaloisLabel(26);

    pub fn new(x: u8) -> Option<Self> {
        Self::ALL.contains(&x).then_some(GaloisLabel(x))
    }

    pub fn x(self) -> u8 {
        self.0
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            2 => "C2×C4",
            3 => "C2^3",
            4 => "D4",
            6 => "D8",
            8 => "Q8⋊C2",
            9 => "C2×D4",
            10 => "C2^2⋊C4",
            11 => "C4∘D4",
            15 => "C8⋊C2^2",
            16 => "C4.D4",
            17 => "C4≀C2",
            18 => "C2^2≀C2",
            22 => "D4∘D4",
            26 => "Hol(D4)",
            _ => unreachable!(),
        }
    }

    pub fn order(self) -> u32 {
        match self.0 {
            2 | 3 | 4 => 8,
            6 | 8 | 9 | 10 | 11 => 16,
            15 | 16 | 17 | 18 | 22 => 32,
            26 => 64,
            _ => unreachable!(),
        }
    }

    pub fn occurs_in(self, form: Form) -> bool {
        match form {
            Form::EvenTrinomial => [2, 3, 4, 6, 8, 9, 11, 15, 16, 17, 22, 26].contains(&self.0),
            Form::EvenReciprocal => [2, 3, 4, 9, 10, 18].contains(&self.0),
        }
    }
}

impl fmt::Display for GaloisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "8T{}", self.0)
    }
}

impl FromStr for GaloisLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.strip_prefix("8T")
            .and_then(|x| x.parse().ok())
            .and_then(GaloisLabel::new)
            .ok_or_else(|| format!("unknown label {s:?}"))
    }
}

impl Serialize for GaloisLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaloisLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("classification gap for {form}({a}, {b}): branches fired {fired:?}")]
pub struct ClassificationGap {
    pub form: Form,
    pub a: BigInt,
    pub b: BigInt,
    pub fired: Vec<u8>,
}

fn decide(form: Form, a: &BigInt, b: &BigInt, branches: &[(GaloisLabel, bool)]) -> Result<GaloisLabel, ClassificationGap> {
    let fired: Vec<GaloisLabel> = branches.iter().filter(|(_, c)| *c).map(|(l, _)| *l).collect();
    match fired.as_slice() {
        [one] => Ok(*one),
        _ => Err(ClassificationGap {
            form,
            a: a.clone(),
            b: b.clone(),
            fired: fired.iter().map(|l| l.x()).collect(),
        }),
    }
}

fn int(n: BigInt) -> RadicalExpr {
    RadicalExpr::integer(n)
}

/// Label of an irreducible `x⁸ + a x⁴ + b`.
pub fn classify_f(a: &BigInt, b: &BigInt) -> Result<GaloisLabel, ClassificationGap> {
    use GaloisLabel as L;
    let form = Form::EvenTrinomial;
    let d = a * a - b * 4;
    match exact_sqrt(b) {
        Some(s) if is_square(&s) => {
            let c2 = is_square(&-&d);
            let c3 = is_square(&(a + &s * 2));
            let c4 = is_square(&(a - &s * 2));
            decide(form, a, b, &[(L::T2, c2), (L::T3, c3), (L::T4, c4), (L::T9, !c2 && !c3 && !c4)])
        }
        Some(s) => {
            let sq = |n: BigInt| is_square(&n);
            let p1 = sq(a + &s * 2);
            let p2 = sq(a - &s * 2);
            let p3 = sq(-(a * &s) + b * 2);
            let p4 = sq(a * &s + b * 2);
            let m1 = sq(-&d);
            let m2 = sq(-(a * &s) - b * 2);
            let m3 = sq(&d * &s);
            let m4 = sq(a * &s - b * 2);
            let m5 = sq(-&d * &s);
            let count = |v: &[bool]| v.iter().filter(|&&x| x).count();
            let t2 = p1 && m4;
            let t4 = (p1 && p3) || (p2 && p4) || (p3 && p4);
            // Read as (a² − 4b)√b; the (a − 4b)√b transcription lets 8T2 and 8T9
            // fire together at (12, 4) and (15, 25).
            let t9 = !m3 && count(&[p1, p2, p3, p4]) == 1;
            let t11 = !p3 && !p4 && count(&[m1, m2, m3, m4, m5]) == 1;
            let t22 = count(&[p1, p2, p3, p4, m1, m2, m3, m4, m5]) == 0;
            decide(form, a, b, &[(L::T2, t2), (L::T4, t4), (L::T9, t9), (L::T11, t11), (L::T22, t22)])
        }
        None => {
            let bd = b * &d;
            let t16 = is_square(&bd);
            let t17 = !t16 && is_square(&-&d);
            let rest = !t16 && !t17;
            let neg_b = -b;
            let neg_bd = -&bd;
            let two = BigInt::from(2);
            let r6 = [
                RadicalExpr::new(BigInt::zero(), two.clone(), neg_b.clone()),
                RadicalExpr::new(b * 4, two.clone(), neg_bd.clone()),
                RadicalExpr::new(b * 4, -&two, neg_bd.clone()),
            ];
            let r8 = [
                RadicalExpr::new(BigInt::zero(), &d * 2, neg_b.clone()),
                RadicalExpr::new(b * -4, two.clone(), neg_bd.clone()),
            ];
            let any6 = r6.iter().any(RadicalExpr::is_nonzero_square);
            let any8 = r8.iter().any(RadicalExpr::is_nonzero_square);
            let root_case = is_square(&neg_b) || is_square(&neg_bd);
            decide(
                form,
                a,
                b,
                &[
                    (L::T16, t16),
                    (L::T17, t17),
                    (L::T6, rest && any6),
                    (L::T8, rest && any8),
                    (L::T15, rest && root_case && !any6 && !any8),
                    (L::T26, rest && !root_case),
                ],
            )
        }
    }
}

/// Label of an irreducible `x⁸ + a x⁶ + b x⁴ + a x² + 1`.
pub fn classify_g(a: &BigInt, b: &BigInt) -> Result<GaloisLabel, ClassificationGap> {
    use GaloisLabel as L;
    let form = Form::EvenReciprocal;
    let WTriple { w1, w2, w3 } = w_triple(a, b);
    let w12 = &w1 * &w2;
    let s1 = is_square(&w1);
    let s2 = is_square(&w2);
    let s12 = is_square(&w12);
    let c = [&w1 * &w3, &w2 * &w3, &w12 * &w3]
        .iter()
        .filter(|x| is_square(x))
        .count();
    let singles = [s1, s2, s12].iter().filter(|&&x| x).count();
    let t4_or_t9 = singles == 1 && c == 0;
    let exactly_one = |v: &[RadicalExpr]| v.iter().filter(|e| e.is_square()).count() == 1;
    let t4 = t4_or_t9
        && if s1 {
            let u: BigInt = &w2 * (4 - a);
            exactly_one(&[
                RadicalExpr::new(u.clone(), &w2 * -2, w1.clone()),
                RadicalExpr::new(u, &w2 * 2, w1.clone()),
            ])
        } else if s2 {
            let u: BigInt = &w1 * (-a - 4);
            exactly_one(&[
                RadicalExpr::new(u.clone(), &w1 * -2, w2.clone()),
                RadicalExpr::new(u, &w1 * 2, w2.clone()),
            ])
        } else {
            let k: BigInt = BigInt::from(12) - b * 2 - &w3;
            let u: BigInt = &w2 * (b * 2 + &w3 - 12);
            exactly_one(&[
                int(&w2 * (&k * &k - &w12 * 4)),
                RadicalExpr::new(u.clone(), &w2 * 2, w12.clone()),
                RadicalExpr::new(u, &w2 * -2, w12.clone()),
            ])
        };
    decide(
        form,
        a,
        b,
        &[
            (L::T2, c == 2),
            (L::T3, s1 && s2 && s12),
            (L::T10, c == 1),
            (L::T18, singles == 0 && c == 0),
            (L::T4, t4),
            (L::T9, t4_or_t9 && !t4),
        ],
    )
}

pub fn classify(input: &OcticInput) -> Result<GaloisLabel, ClassificationGap> {
    match input.form {
        Form::EvenTrinomial => classify_f(&input.a, &input.b),
        Form::EvenReciprocal => classify_g(&input.a, &input.b),
    }
}

/// Counts primes `p ≤ bound` with `p ∤ lc·disc(f)` and those among them
/// modulo which `f` splits into linear factors.
pub fn complete_splitting_count(f: &IntPoly, disc: &BigInt, bound: u64) -> (u64, u64) {
    let mut total = 0;
    let mut split = 0;
    for p in primes_up_to(bound) {
        let pb = BigInt::from(p);
        if (disc % &pb).is_zero() || (f.leading_coeff().unwrap() % &pb).is_zero() {
            continue;
        }
        total += 1;
        let fp = FpPoly::from_int(f, p);
        let x = FpPoly::x(p);
        if x.pow_mod(p, &fp) == x.rem(&fp) {
            split += 1;
        }
    }
    (split, total)
}

/// Relative deviation of the complete-splitting frequency from `1/|G|`.
pub fn chebotarev_deviation(split: u64, total: u64, order: u32) -> f64 {
    let expected = 1.0 / order as f64;
    ((split as f64 / total as f64) - expected).abs() / expected
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn f(a: i64, b: i64) -> GaloisLabel {
        classify_f(&big(a), &big(b)).unwrap()
    }

    fn g(a: i64, b: i64) -> GaloisLabel {
        classify_g(&big(a), &big(b)).unwrap()
    }

    #[test]
    fn w_triples() {
        let p = 7;
        let w = w_triple(&big(3), &big(2 * p + 1));
        assert_eq!((w.w1, w.w2, w.w3), (big(2 * p - 3), big(2 * p + 9), big(-8 * p + 13)));
        let w = w_triple(&big(4 * p + 3), &big(8 * p + 5));
        assert_eq!(w.w1, big(1));
        assert_eq!(w.w2, big(16 * p + 13));
        assert_eq!(w.w3, big((4 * p + 1) * (4 * p - 3)));
        let w = w_triple(&big(0), &big(0));
        assert_eq!((w.w1, w.w2, w.w3), (big(2), big(2), big(8)));
    }

    #[test]
    fn radicals() {
        assert!(RadicalExpr::new(big(0), big(2), big(4)).is_square());
        assert!(!RadicalExpr::new(big(0), big(2), big(-4)).is_square());
        assert!(!RadicalExpr::new(big(1), big(1), big(2)).is_square());
        assert!(RadicalExpr::new(big(2), big(-1), big(4)).is_square());
        assert!(!RadicalExpr::new(big(2), big(-1), big(4)).is_nonzero_square());
        assert!(RadicalExpr::integer(big(0)).is_square());
        assert!(!RadicalExpr::integer(big(-9)).is_square());
    }

    #[test]
    fn trinomial_examples() {
        assert_eq!(f(0, 1), GaloisLabel::T2);
        assert_eq!(f(-1, 1), GaloisLabel::T3);
        assert_eq!(f(3, 1), GaloisLabel::T4);
        assert_eq!(f(0, 2), GaloisLabel::T6);
        assert_eq!(f(0, -2), GaloisLabel::T8);
        assert_eq!(f(-2, -1), GaloisLabel::T8);
        assert_eq!(f(-5, 5), GaloisLabel::T16);
        assert_eq!(f(-4, 2), GaloisLabel::T16);
        assert_eq!(f(4, 2), GaloisLabel::T16);
        assert_eq!(f(2, 2), GaloisLabel::T17);
        assert_eq!(f(5, 3), GaloisLabel::T26);
        assert_eq!(f(15, 1), GaloisLabel::T9);
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(g(-1, 1), GaloisLabel::T2);
        assert_eq!(g(11, 21), GaloisLabel::T2);
        assert_eq!(g(8, 16), GaloisLabel::T10);
        assert_eq!(g(-9, 19), GaloisLabel::T10);
        assert_eq!(g(3, 15), GaloisLabel::T18);
    }

    #[test]
    fn total_on_small_grid() {
        use crate::poly::is_irreducible_q;
        for a in -25i64..=25 {
            for b in -25i64..=25 {
                if b != 0 && is_irreducible_q(&IntPoly::even_trinomial(&big(a), &big(b))).unwrap() {
                    classify_f(&big(a), &big(b)).unwrap();
                }
                if a != 0 && is_irreducible_q(&IntPoly::even_reciprocal(&big(a), &big(b))).unwrap() {
                    classify_g(&big(a), &big(b)).unwrap();
                }
            }
        }
    }

    #[test]
    fn eight_t_nine_condition_reading() {
        // Both pairs split completely with density close to 1/8.
        for (a, b) in [(12i64, 4i64), (15, 25)] {
            let s = exact_sqrt(&big(b)).unwrap();
            let literal = !is_square(&((big(a) - big(4 * b)) * &s));
            assert!(literal);
            assert_eq!(f(a, b), GaloisLabel::T2);
            let t = IntPoly::even_trinomial(&big(a), &big(b));
            let disc = crate::poly::discriminant(&t).unwrap();
            let (split, total) = complete_splitting_count(&t, &disc, 20_000);
            assert!(chebotarev_deviation(split, total, 8) < 0.2);
        }
    }

    #[test]
    fn labels() {
        assert_eq!(GaloisLabel::T26.to_string(), "8T26");
        assert_eq!("8T10".parse::<GaloisLabel>().unwrap(), GaloisLabel::T10);
        assert!("8T5".parse::<GaloisLabel>().is_err());
        assert_eq!(GaloisLabel::T17.name(), "C4≀C2");
        assert_eq!(GaloisLabel::T26.order(), 64);
        assert!(!GaloisLabel::T10.occurs_in(Form::EvenTrinomial));
        assert!(GaloisLabel::T10.occurs_in(Form::EvenReciprocal));
    }

    #[test]
    fn input_validation() {
        assert_eq!(OcticInput::from_i64(Form::EvenTrinomial, 1, 0), Err(InputError::ZeroB));
        assert_eq!(OcticInput::from_i64(Form::EvenReciprocal, 0, 1), Err(InputError::ZeroA));
        let i = OcticInput::from_i64(Form::EvenReciprocal, 9, 21).unwrap();
        assert_eq!(i.polynomial().to_string(), "x^8 + 9x^6 + 21x^4 + 9x^2 + 1");
    }
}
