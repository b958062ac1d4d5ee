//! Monogenicity verdicts for the two even octic forms.
//!
//! A verdict is `Monogenic` only when every prime of the discriminant has
//! been certified not to divide the index. Factorizations that stop short
//! of completion yield `Unknown` unless some known prime already fails.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{factor, is_squarefree, TriBool, DEFAULT_TRIAL_BOUND};
use crate::galois::{w_triple, Form, InputError, OcticInput};
use crate::index::{dedekind_at, jks_at, DedekindCertificate, JksClauseResult};
use crate::poly::{discriminant, is_irreducible_q, swan_disc, IntPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    NotIrreducible,
    Monogenic,
    NotMonogenic,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Shortcuts for the reciprocal form, decided from `W₁, W₂, W₃` and the
/// residues of `(a, b)` modulo 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FastPath {
    /// `(a, b) mod 4 ∈ {(1,3), (3,1), (3,3)}` and `W₁W₂W₃` squarefree.
    #[serde(rename = "w-product-squarefree")]
    WProductSquarefree,
    /// A prime square divides `W₁` or `W₂`.
    #[serde(rename = "w1-w2-square-factor")]
    W1W2SquareFactor,
    /// `W₁, W₂` squarefree and an odd prime square divides `W₃`.
    #[serde(rename = "w3-odd-square-factor")]
    W3OddSquareFactor,
    /// `W₁, W₂` squarefree, `W₃` free of odd prime squares, and
    /// `(a, b) mod 4 ∈ {(0,1), (2,3)}`.
    #[serde(rename = "residue-class")]
    ResidueClass,
}

impl FastPath {
    pub fn tag(self) -> &'static str {
        match self {
            FastPath::WProductSquarefree => "w-product-squarefree",
            FastPath::W1W2SquareFactor => "w1-w2-square-factor",
            FastPath::W3OddSquareFactor => "w3-odd-square-factor",
            FastPath::ResidueClass => "residue-class",
        }
    }

    pub fn status(self) -> Status {
        match self {
            FastPath::WProductSquarefree => Status::Monogenic,
            _ => Status::NotMonogenic,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "criterion", rename_all = "lowercase")]
pub enum Certificate {
    Jks(JksClauseResult),
    Dedekind(DedekindCertificate),
}

impl Certificate {
    pub fn prime(&self) -> BigInt {
        match self {
            Certificate::Jks(c) => c.prime.clone(),
            Certificate::Dedekind(c) => BigInt::from(c.prime),
        }
    }

    /// `true` when the prime does not divide the index.
    pub fn passes(&self) -> bool {
        match self {
            Certificate::Jks(c) => c.pass,
            Certificate::Dedekind(c) => !c.divides_index,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub input: OcticInput,
    pub status: Status,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub discriminant: BigInt,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fast_path: Option<FastPath>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unknown_reason: Option<String>,
}

impl Verdict {
    /// First certificate that fails, if any.
    pub fn failing(&self) -> Option<&Certificate> {
        self.certificates.iter().find(|c| !c.passes())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub trial_bound: u64,
    /// When false the reciprocal form always runs Dedekind at every prime.
    pub fast_paths: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            trial_bound: DEFAULT_TRIAL_BOUND,
            fast_paths: true,
        }
    }
}

/// Primes of the nonzero integers in `parts`, plus the composite
/// cofactors that could not be split.
fn prime_support(parts: &[&BigInt], trial_bound: u64) -> (BTreeSet<BigInt>, Vec<BigInt>) {
    let mut primes = BTreeSet::new();
    let mut stuck = Vec::new();
    for n in parts {
        if n.is_zero() {
            continue;
        }
        let r = factor(n, trial_bound).expect("nonzero");
        primes.extend(r.factors.into_iter().map(|(p, _)| p));
        if !r.cofactor.is_one() {
            stuck.push(r.cofactor);
        }
    }
    (primes, stuck)
}

fn stuck_reason(stuck: &[BigInt]) -> String {
    let list: Vec<String> = stuck.iter().map(ToString::to_string).collect();
    format!("unfactored cofactor {}", list.join(", "))
}

pub fn check(input: &OcticInput, opts: &CheckOptions) -> Verdict {
    match input.form {
        Form::EvenTrinomial => check_trinomial(input, opts),
        Form::EvenReciprocal => check_reciprocal(input, opts),
    }
}

pub fn check_f(a: &BigInt, b: &BigInt, opts: &CheckOptions) -> Result<Verdict, InputError> {
    Ok(check(&OcticInput::new(Form::EvenTrinomial, a.clone(), b.clone())?, opts))
}

pub fn check_g(a: &BigInt, b: &BigInt, opts: &CheckOptions) -> Result<Verdict, InputError> {
    Ok(check(&OcticInput::new(Form::EvenReciprocal, a.clone(), b.clone())?, opts))
}

fn verdict(input: &OcticInput, status: Status, disc: BigInt) -> Verdict {
    Verdict {
        input: input.clone(),
        status,
        discriminant: disc,
        certificates: Vec::new(),
        fast_path: None,
        unknown_reason: None,
    }
}

fn check_trinomial(input: &OcticInput, opts: &CheckOptions) -> Verdict {
    let (a, b) = (&input.a, &input.b);
    let disc = swan_disc(8, 4, a, b).expect("0 < 4 < 8");
    let t = input.polynomial();
    if !is_irreducible_q(&t).expect("degree 8") {
        return verdict(input, Status::NotIrreducible, disc);
    }
    let d: BigInt = a * a - b * 4;
    let (mut primes, stuck) = prime_support(&[b, &d], opts.trial_bound);
    primes.insert(BigInt::from(2));
    let certificates: Vec<Certificate> = primes
        .iter()
        .map(|q| Certificate::Jks(jks_at(a, b, q).expect("q divides the discriminant")))
        .collect();
    conclude(input, disc, certificates, &stuck)
}

fn conclude(input: &OcticInput, disc: BigInt, certificates: Vec<Certificate>, stuck: &[BigInt]) -> Verdict {
    let mut v = verdict(input, Status::Monogenic, disc);
    if certificates.iter().any(|c| !c.passes()) {
        v.status = Status::NotMonogenic;
    } else if !stuck.is_empty() {
        v.status = Status::Unknown;
        v.unknown_reason = Some(stuck_reason(stuck));
    }
    v.certificates = certificates;
    v
}

fn mod4(n: &BigInt) -> u32 {
    n.mod_floor(&BigInt::from(4)).to_u32().unwrap()
}

fn odd_part(n: &BigInt) -> BigInt {
    let mut m = n.abs();
    while !m.is_zero() && m.is_even() {
        m >>= 1;
    }
    m
}

fn reciprocal_fast_path(input: &OcticInput, trial_bound: u64) -> Option<FastPath> {
    let w = w_triple(&input.a, &input.b);
    let residues = (mod4(&input.a), mod4(&input.b));
    let sqf = |n: &BigInt| is_squarefree(n, trial_bound).unwrap_or(TriBool::Unknown);
    if matches!(residues, (1, 3) | (3, 1) | (3, 3)) && sqf(&w.product()) == TriBool::True {
        return Some(FastPath::WProductSquarefree);
    }
    let (s1, s2) = (sqf(&w.w1), sqf(&w.w2));
    if s1 == TriBool::False || s2 == TriBool::False {
        return Some(FastPath::W1W2SquareFactor);
    }
    if s1 != TriBool::True || s2 != TriBool::True {
        return None;
    }
    match sqf(&odd_part(&w.w3)) {
        TriBool::False => Some(FastPath::W3OddSquareFactor),
        TriBool::True if matches!(residues, (0, 1) | (2, 3)) => Some(FastPath::ResidueClass),
        _ => None,
    }
}

fn check_reciprocal(input: &OcticInput, opts: &CheckOptions) -> Verdict {
    let w = w_triple(&input.a, &input.b);
    let dg = &w.w1 * &w.w2 * &w.w3 * &w.w3;
    let disc = (&dg * &dg) << 8;
    let t = input.polynomial();
    if !is_irreducible_q(&t).expect("degree 8") {
        return verdict(input, Status::NotIrreducible, disc);
    }
    if opts.fast_paths {
        if let Some(fp) = reciprocal_fast_path(input, opts.trial_bound) {
            let mut v = verdict(input, fp.status(), disc);
            v.fast_path = Some(fp);
            return v;
        }
    }
    let (mut primes, mut stuck) = prime_support(&[&w.w1, &w.w2, &w.w3], opts.trial_bound);
    primes.insert(BigInt::from(2));
    let mut certificates = Vec::new();
    for q in &primes {
        match q.to_u64() {
            Some(q) => certificates.push(Certificate::Dedekind(dedekind_at(&t, q).expect("monic"))),
            None => stuck.push(q.clone()),
        }
    }
    conclude(input, disc, certificates, &stuck)
}

/// Dedekind's criterion at every prime of `disc(t)` for an arbitrary monic
/// irreducible `t`.
pub fn check_monic(t: &IntPoly, opts: &CheckOptions) -> (Status, BigInt, Vec<DedekindCertificate>) {
    let disc = discriminant(t).expect("nonconstant");
    if !is_irreducible_q(t).expect("nonconstant") {
        return (Status::NotIrreducible, disc, Vec::new());
    }
    let (primes, mut stuck) = prime_support(&[&disc], opts.trial_bound);
    let mut certs = Vec::new();
    for q in &primes {
        match q.to_u64() {
            Some(q) => certs.push(dedekind_at(t, q).expect("monic")),
            None => stuck.push(q.clone()),
        }
    }
    let status = if certs.iter().any(|c| c.divides_index) {
        Status::NotMonogenic
    } else if !stuck.is_empty() {
        Status::Unknown
    } else {
        Status::Monogenic
    };
    (status, disc, certs)
}
