//! The infinite families of monogenic even octics and the finite catalog.

mod catalog;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime_u64, is_squarefree, TriBool};
use crate::galois::{classify, Form, GaloisLabel, OcticInput};
use crate::monogenic::{check, CheckOptions, Status, Verdict};
use crate::sieve::{parse_factored, FactoredPoly};

pub use catalog::{
    verify_tables, verify_tables_with_bound, CatalogEntry, FiniteCatalog, RowCheck, TableReport,
    CATALOG_TEXT, NONE_ROW_BOUND,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyId {
    #[serde(rename = "F-8T9")]
    F8T9,
    #[serde(rename = "F-8T15")]
    F8T15,
    #[serde(rename = "F-8T17")]
    F8T17,
    #[serde(rename = "F-8T26")]
    F8T26,
    #[serde(rename = "G-8T9")]
    G8T9,
    #[serde(rename = "G-8T18")]
    G8T18,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParameterKind {
    Prime,
    Integer,
}

impl FamilyId {
    pub const ALL: [FamilyId; 6] = [
        FamilyId::F8T9,
        FamilyId::F8T15,
        FamilyId::F8T17,
        FamilyId::F8T26,
        FamilyId::G8T9,
        FamilyId::G8T18,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyId::F8T9 => "F-8T9",
            FamilyId::F8T15 => "F-8T15",
            FamilyId::F8T17 => "F-8T17",
            FamilyId::F8T26 => "F-8T26",
            FamilyId::G8T9 => "G-8T9",
            FamilyId::G8T18 => "G-8T18",
        }
    }

    pub fn form(self) -> Form {
        match self {
            FamilyId::G8T9 | FamilyId::G8T18 => Form::EvenReciprocal,
            _ => Form::EvenTrinomial,
        }
    }

    pub fn label(self) -> GaloisLabel {
        match self {
            FamilyId::F8T9 | FamilyId::G8T9 => GaloisLabel::T9,
            FamilyId::F8T15 => GaloisLabel::T15,
            FamilyId::F8T17 => GaloisLabel::T17,
            FamilyId::F8T26 => GaloisLabel::T26,
            FamilyId::G8T18 => GaloisLabel::T18,
        }
    }

    pub fn parameter_kind(self) -> ParameterKind {
        match self {
            FamilyId::F8T15 | FamilyId::F8T17 => ParameterKind::Integer,
            _ => ParameterKind::Prime,
        }
    }

    fn first_parameter(self) -> u64 {
        match self {
            FamilyId::F8T26 => 5,
            FamilyId::G8T18 => 3,
            FamilyId::F8T9 | FamilyId::G8T9 => 2,
            FamilyId::F8T15 | FamilyId::F8T17 => 1,
        }
    }

    /// The polynomial whose squarefree values select members. For F-8T15
    /// it is `t² + 4` at `t = s` when `s` is odd and `t² + 1` at `t = s/2`
    /// when `s ≡ 2 (mod 4)`; this is the odd-parity one.
    pub fn gate(self) -> FactoredPoly {
        parse_factored(self.gate_text()).expect("gate polynomials are valid")
    }

    pub fn gate_text(self) -> &'static str {
        match self {
            FamilyId::F8T9 => "(4t+1)(4t+5)",
            FamilyId::F8T15 => "(t^2+4)",
            FamilyId::F8T17 => "(t^2+1)",
            FamilyId::F8T26 => "(t^2-12)",
            FamilyId::G8T9 => "(16t+13)(4t+1)(4t-3)",
            FamilyId::G8T18 => "(2t+9)(2t-3)(8t-13)",
        }
    }

    pub fn coefficient_map(self) -> &'static str {
        match self {
            FamilyId::F8T9 => "a = 4p + 3, b = 1",
            FamilyId::F8T15 => "a = -s, b = -1 (s > 0, 4 ∤ s)",
            FamilyId::F8T17 => "a = 2t, b = t^2 + 1",
            FamilyId::F8T26 => "a = p, b = 3",
            FamilyId::G8T9 => "a = 4p + 3, b = 8p + 5",
            FamilyId::G8T18 => "a = 3, b = 2p + 1",
        }
    }

    /// `(a, b)` for parameter `n`, or `None` if `n` is outside the
    /// parameter domain.
    pub fn coefficients(self, n: u64) -> Option<(BigInt, BigInt)> {
        if n < self.first_parameter()
            || (self.parameter_kind() == ParameterKind::Prime && !is_prime_u64(n))
            || (self == FamilyId::F8T15 && n % 4 == 0)
        {
            return None;
        }
        let p = BigInt::from(n);
        let (a, b) = match self {
            FamilyId::F8T9 => (&p * 4 + 3, BigInt::from(1)),
            FamilyId::F8T15 => (-&p, BigInt::from(-1)),
            FamilyId::F8T17 => (&p * 2, &p * &p + 1),
            FamilyId::F8T26 => (p, BigInt::from(3)),
            FamilyId::G8T9 => (&p * 4 + 3, &p * 8 + 5),
            FamilyId::G8T18 => (BigInt::from(3), &p * 2 + 1),
        };
        Some((a, b))
    }

    /// The integer that must be squarefree for parameter `n`.
    pub fn gate_value(self, n: u64) -> BigInt {
        let t = BigInt::from(n);
        match self {
            FamilyId::F8T15 => {
                let s2 = &t * &t;
                (&s2 + 4) / s2.gcd(&BigInt::from(4))
            }
            _ => self.gate().product().eval(&t),
        }
    }

    pub fn input(self, n: u64) -> Option<OcticInput> {
        let (a, b) = self.coefficients(n)?;
        OcticInput::new(self.form(), a, b).ok()
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let tags: Vec<&str> = FamilyId::ALL.iter().map(|f| f.tag()).collect();
                format!("unknown family {s:?} (expected one of {})", tags.join(", "))
            })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyMember {
    pub family: FamilyId,
    pub parameter: u64,
    pub input: OcticInput,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub gate_value: BigInt,
    pub label: GaloisLabel,
    pub verdict: Verdict,
}

/// A parameter that passed the gate but was not emitted.
#[derive(Debug, Clone, Serialize)]
pub struct Skipped {
    pub parameter: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub family: FamilyId,
    pub members: Vec<FamilyMember>,
    pub skipped: Vec<Skipped>,
}

enum Candidate {
    Gated,
    Member(Box<FamilyMember>),
    Skip(Skipped),
}

fn examine(family: FamilyId, n: u64, opts: &CheckOptions) -> Candidate {
    let Some(input) = family.input(n) else {
        return Candidate::Gated;
    };
    let gate_value = family.gate_value(n);
    match is_squarefree(&gate_value, opts.trial_bound) {
        Ok(TriBool::True) => {}
        Ok(TriBool::False) | Err(_) => return Candidate::Gated,
        Ok(TriBool::Unknown) => {
            return Candidate::Skip(Skipped {
                parameter: n,
                reason: format!("squarefreeness of gate value {gate_value} undetermined"),
            })
        }
    }
    let verdict = check(&input, opts);
    let label = classify(&input);
    match (verdict.status, label) {
        (Status::Monogenic, Ok(label)) if label == family.label() => {
            Candidate::Member(Box::new(FamilyMember {
                family,
                parameter: n,
                input,
                gate_value,
                label,
                verdict,
            }))
        }
        (status, label) => Candidate::Skip(Skipped {
            parameter: n,
            reason: match label {
                Ok(l) => format!("{input} is {status} with group {l}"),
                Err(gap) => format!("{input} is {status}; classification gap {:?}", gap.fired),
            },
        }),
    }
}

/// The first `count` parameters passing the gate, in increasing order, each
/// re-verified as irreducible, monogenic and carrying the family's label.
/// Gate values of undetermined squarefreeness, and gated parameters that fail
/// re-verification (e.g. `s = 2` in F-8T15, whose trinomial `x⁸ − 2x⁴ − 1` has
/// group 8T8), are reported in `skipped`.
pub fn enumerate(family: FamilyId, count: usize, opts: &CheckOptions) -> Enumeration {
    let mut members = Vec::new();
    let mut skipped = Vec::new();
    let mut next = family.first_parameter();
    let batch = 64u64;
    while members.len() < count {
        let results: Vec<Candidate> = (next..next + batch)
            .into_par_iter()
            .map(|n| examine(family, n, opts))
            .collect();
        for c in results {
            match c {
                Candidate::Gated => {}
                Candidate::Member(m) if members.len() < count => members.push(*m),
                Candidate::Member(_) => {}
                Candidate::Skip(s) if members.len() < count => skipped.push(s),
                Candidate::Skip(_) => {}
            }
        }
        next += batch;
    }
    Enumeration {
        family,
        members,
        skipped,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DistinctnessReport {
    pub count: usize,
    /// Index pairs with equal discriminants.
    pub collisions: Vec<(usize, usize)>,
}

impl DistinctnessReport {
    pub fn distinct(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Monogenic members generate distinct fields when their discriminants
/// differ, since then `Δ(f) = Δ(K)`. Equal discriminants are reported.
pub fn distinctness(members: &[OcticInput]) -> DistinctnessReport {
    let discs: Vec<BigInt> = members
        .iter()
        .map(|m| crate::poly::discriminant(&m.polynomial()).expect("degree 8"))
        .collect();
    let mut collisions = Vec::new();
    for i in 0..discs.len() {
        for j in i + 1..discs.len() {
            if discs[i].abs() == discs[j].abs() {
                collisions.push((i, j));
            }
        }
    }
    DistinctnessReport {
        count: members.len(),
        collisions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::w_triple;
    use crate::monogenic::Certificate;
    use crate::poly::FpPoly;
    use crate::sieve::find_obstruction;

    fn params(e: &Enumeration) -> Vec<u64> {
        e.members.iter().map(|m| m.parameter).collect()
    }

    #[test]
    fn first_members() {
        let opts = CheckOptions::default();
        let e = enumerate(FamilyId::F8T9, 1, &opts);
        assert_eq!(params(&e), vec![3]);
        assert_eq!(e.members[0].input, OcticInput::from_i64(Form::EvenTrinomial, 15, 1).unwrap());
        assert_eq!(e.members[0].gate_value, BigInt::from(221));

        let e = enumerate(FamilyId::F8T17, 3, &opts);
        let ab: Vec<_> = e.members.iter().map(|m| (m.input.a.clone(), m.input.b.clone())).collect();
        let want: Vec<_> = [(2, 2), (4, 5), (6, 10)].iter().map(|&(a, b)| (BigInt::from(a), BigInt::from(b))).collect();
        assert_eq!(ab, want);

        let e = enumerate(FamilyId::F8T26, 1, &opts);
        assert_eq!(e.members[0].input, OcticInput::from_i64(Form::EvenTrinomial, 5, 3).unwrap());
    }

    #[test]
    fn trinomial_8t15_skips_s_equal_two() {
        let e = enumerate(FamilyId::F8T15, 4, &CheckOptions::default());
        assert_eq!(params(&e), vec![1, 3, 5, 6]);
        assert_eq!(e.skipped.len(), 1);
        assert_eq!(e.skipped[0].parameter, 2);
        assert!(e.skipped[0].reason.contains("8T8"), "{}", e.skipped[0].reason);
    }

    #[test]
    fn reciprocal_8t9_skips_nonsquarefree_gate() {
        let e = enumerate(FamilyId::G8T9, 2, &CheckOptions::default());
        assert!(e.skipped.is_empty());
        for m in &e.members {
            assert!(m.parameter != 3);
            assert_eq!(w_triple(&m.input.a, &m.input.b).w1, BigInt::from(1));
            let p = BigInt::from(m.parameter);
            assert_eq!(w_triple(&m.input.a, &m.input.b).w2, &p * 16 + 13);
        }
    }

    #[test]
    fn trinomial_8t9_h2_at_two() {
        let e = enumerate(FamilyId::F8T9, 5, &CheckOptions::default());
        let square = FpPoly::from_int(&crate::poly::IntPoly::from_i64(&[1, 2, 1]), 2);
        for m in &e.members {
            let at_two = m
                .verdict
                .certificates
                .iter()
                .find_map(|c| match c {
                    Certificate::Jks(j) if j.prime == BigInt::from(2) => Some(j),
                    _ => None,
                })
                .expect("2 divides the discriminant");
            assert_eq!(at_two.clause, 4);
            assert_eq!(at_two.data.h2.as_ref(), Some(&square), "{}", m.input);
        }
    }

    #[test]
    fn gates_are_obstruction_free() {
        for f in FamilyId::ALL {
            assert_eq!(find_obstruction(&f.gate()), None, "{f}");
        }
        assert_eq!(find_obstruction(&parse_factored("(t^2+1)").unwrap()), None);
    }

    #[test]
    fn gate_value_matches_parity_rule() {
        assert_eq!(FamilyId::F8T15.gate_value(3), BigInt::from(13));
        assert_eq!(FamilyId::F8T15.gate_value(6), BigInt::from(10));
        assert_eq!(FamilyId::F8T15.coefficients(4), None);
        assert_eq!(FamilyId::F8T26.coefficients(3), None);
        assert_eq!(FamilyId::G8T18.coefficients(4), None);
    }

    #[test]
    fn distinctness_examples() {
        let opts = CheckOptions::default();
        for f in [FamilyId::F8T26, FamilyId::G8T18] {
            let e = enumerate(f, 10, &opts);
            let inputs: Vec<OcticInput> = e.members.into_iter().map(|m| m.input).collect();
            assert!(distinctness(&inputs).distinct(), "{f}");
        }
        let dup = vec![
            OcticInput::from_i64(Form::EvenTrinomial, 0, 1).unwrap(),
            OcticInput::from_i64(Form::EvenTrinomial, 0, 1).unwrap(),
        ];
        assert_eq!(distinctness(&dup).collisions, vec![(0, 1)]);
    }

    #[test]
    fn family_tags_parse() {
        for f in FamilyId::ALL {
            assert_eq!(f.tag().parse::<FamilyId>().unwrap(), f);
        }
        assert!("F-8T10".parse::<FamilyId>().is_err());
    }
}
