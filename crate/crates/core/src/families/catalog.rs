use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::galois::{classify, Form, GaloisLabel, OcticInput};
use crate::monogenic::{check, CheckOptions, Status};

/// Raw text of the shipped catalog.
pub const CATALOG_TEXT: &str = include_str!("../../data/catalog.txt");

/// Coefficient bound for the spot check behind each `none` row.
pub const NONE_ROW_BOUND: i64 = 60;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CatalogEntry {
    /// A monogenic polynomial with the given label.
    Member { input: OcticInput, label: GaloisLabel },
    /// No monogenic polynomial of this form has the label.
    None { form: Form, label: GaloisLabel },
}

impl CatalogEntry {
    pub fn form(&self) -> Form {
        match self {
            CatalogEntry::Member { input, .. } => input.form,
            CatalogEntry::None { form, .. } => *form,
        }
    }

    pub fn label(&self) -> GaloisLabel {
        match self {
            CatalogEntry::Member { label, .. } | CatalogEntry::None { label, .. } => *label,
        }
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogEntry::Member { input, label } => {
                write!(f, "{} {} {} {label} yes", input.form, input.a, input.b)
            }
            CatalogEntry::None { form, label } => write!(f, "{form} * * {label} none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCatalog {
    pub header: Vec<String>,
    pub entries: Vec<CatalogEntry>,
}

impl FiniteCatalog {
    pub fn shipped() -> Self {
        Self::parse(CATALOG_TEXT).expect("shipped catalog parses")
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut header = Vec::new();
        let mut entries = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.starts_with('#') {
                header.push(line.to_string());
                continue;
            }
            let bad = |what: &str| format!("line {}: {what}: {line:?}", n + 1);
            let fields: Vec<&str> = line.split(' ').collect();
            let [form, a, b, label, flag] = fields[..] else {
                return Err(bad("expected five fields"));
            };
            let form: Form = form.parse().map_err(|e: String| bad(&e))?;
            let label: GaloisLabel = label.parse().map_err(|_| bad("bad label"))?;
            let entry = match (a, b, flag) {
                ("*", "*", "none") => CatalogEntry::None { form, label },
                (_, _, "yes") => {
                    let a: BigInt = a.parse().map_err(|_| bad("bad a"))?;
                    let b: BigInt = b.parse().map_err(|_| bad("bad b"))?;
                    let input = OcticInput::new(form, a, b).map_err(|e| bad(&e.to_string()))?;
                    CatalogEntry::Member { input, label }
                }
                _ => return Err(bad("bad flag")),
            };
            entries.push(entry);
        }
        Ok(FiniteCatalog { header, entries })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            out.push_str(h);
            out.push('\n');
        }
        for e in &self.entries {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    pub fn members(&self, form: Form, label: GaloisLabel) -> Vec<&OcticInput> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                CatalogEntry::Member { input, label: l } if input.form == form && *l == label => {
                    Some(input)
                }
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowCheck {
    pub entry: CatalogEntry,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed_label: Option<String>,
    /// Monogenic inputs carrying the label, found by the `none`-row scan.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<OcticInput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scanned: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowCheck>,
    pub none_row_bound: i64,
}

impl TableReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Monogenic inputs of `form` with `|a|, |b| ≤ bound` whose label is in
/// `labels` (or undetermined), with the number of inputs scanned.
fn monogenic_grid(
    form: Form,
    labels: &[GaloisLabel],
    bound: i64,
    opts: &CheckOptions,
) -> (usize, Vec<(OcticInput, Option<GaloisLabel>)>) {
    let inputs: Vec<OcticInput> = (-bound..=bound)
        .flat_map(|a| (-bound..=bound).filter_map(move |b| OcticInput::from_i64(form, a, b).ok()))
        .collect();
    let found = inputs
        .par_iter()
        .filter_map(|i| {
            let label = classify(i).ok();
            if label.is_some_and(|l| !labels.contains(&l)) {
                return None;
            }
            (check(i, opts).status == Status::Monogenic).then(|| (i.clone(), label))
        })
        .collect();
    (inputs.len(), found)
}

/// Re-derives every catalog row: members must be monogenic with the stated
/// label, and `none` rows must have no monogenic witness with
/// `|a|, |b| ≤ NONE_ROW_BOUND`. The scan is a spot check, not a proof.
pub fn verify_tables(catalog: &FiniteCatalog, opts: &CheckOptions) -> TableReport {
    verify_tables_with_bound(catalog, opts, NONE_ROW_BOUND)
}

pub fn verify_tables_with_bound(catalog: &FiniteCatalog, opts: &CheckOptions, bound: i64) -> TableReport {
    let mut grids = std::collections::HashMap::new();
    for form in [Form::EvenTrinomial, Form::EvenReciprocal] {
        let labels: Vec<GaloisLabel> = catalog
            .entries
            .iter()
            .filter_map(|e| match e {
                CatalogEntry::None { form: f, label } if *f == form => Some(*label),
                _ => None,
            })
            .collect();
        if !labels.is_empty() {
            grids.insert(form, monogenic_grid(form, &labels, bound, opts));
        }
    }
    let rows = catalog
        .entries
        .par_iter()
        .map(|entry| match entry {
            CatalogEntry::Member { input, label } => {
                let v = check(input, opts);
                let got = classify(input);
                let pass = v.status == Status::Monogenic && got.as_ref().ok() == Some(label);
                RowCheck {
                    entry: entry.clone(),
                    pass,
                    status: Some(v.status),
                    computed_label: Some(match got {
                        Ok(l) => l.to_string(),
                        Err(gap) => format!("gap {:?}", gap.fired),
                    }),
                    counterexamples: Vec::new(),
                    scanned: None,
                }
            }
            CatalogEntry::None { form, label } => {
                let (scanned, found) = &grids[form];
                let counterexamples: Vec<OcticInput> = found
                    .iter()
                    .filter(|(_, l)| *l == Some(*label))
                    .map(|(i, _)| i.clone())
                    .collect();
                RowCheck {
                    entry: entry.clone(),
                    pass: counterexamples.is_empty(),
                    status: None,
                    computed_label: None,
                    counterexamples,
                    scanned: Some(*scanned),
                }
            }
        })
        .collect();
    TableReport {
        rows,
        none_row_bound: bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_round_trips_byte_exactly() {
        let cat = FiniteCatalog::shipped();
        assert_eq!(cat.render(), CATALOG_TEXT);
    }

    #[test]
    fn catalog_rows() {
        use Form::*;
        let cat = FiniteCatalog::shipped();
        let l = |x| GaloisLabel::new(x).unwrap();
        let m = |form, a, b, x| CatalogEntry::Member {
            input: OcticInput::from_i64(form, a, b).unwrap(),
            label: l(x),
        };
        let none = |form, x| CatalogEntry::None { form, label: l(x) };
        let expected = vec![
            m(EvenTrinomial, 0, 1, 2),
            m(EvenTrinomial, -1, 1, 3),
            m(EvenTrinomial, 3, 1, 4),
            m(EvenTrinomial, 0, 2, 6),
            m(EvenTrinomial, -2, -1, 8),
            m(EvenTrinomial, 0, -2, 8),
            none(EvenTrinomial, 11),
            m(EvenTrinomial, -4, 2, 16),
            m(EvenTrinomial, 4, 2, 16),
            m(EvenTrinomial, -5, 5, 16),
            none(EvenTrinomial, 22),
            m(EvenReciprocal, -1, 1, 2),
            none(EvenReciprocal, 3),
            none(EvenReciprocal, 4),
            m(EvenReciprocal, 8, 16, 10),
            m(EvenReciprocal, -9, 21, 10),
            m(EvenReciprocal, -8, 16, 10),
            m(EvenReciprocal, 11, 31, 10),
            m(EvenReciprocal, 9, 19, 10),
            m(EvenReciprocal, -11, 31, 10),
            m(EvenReciprocal, -9, 19, 10),
        ];
        assert_eq!(cat.entries, expected);
        assert_eq!(cat.members(EvenReciprocal, GaloisLabel::T10).len(), 7);
        assert_eq!(cat.members(EvenTrinomial, GaloisLabel::T8).len(), 2);
    }

    #[test]
    fn parse_rejects_malformed_rows() {
        assert!(FiniteCatalog::parse("F 0 1 8T2\n").is_err());
        assert!(FiniteCatalog::parse("H 0 1 8T2 yes\n").is_err());
        assert!(FiniteCatalog::parse("F 0 0 8T2 yes\n").is_err());
        assert!(FiniteCatalog::parse("F * * 8T7 none\n").is_err());
        assert!(FiniteCatalog::parse("F 1 * 8T2 none\n").is_err());
    }

    #[test]
    fn member_rows_verify() {
        let cat = FiniteCatalog {
            header: Vec::new(),
            entries: FiniteCatalog::shipped()
                .entries
                .into_iter()
                .filter(|e| matches!(e, CatalogEntry::Member { .. }))
                .collect(),
        };
        let report = verify_tables(&cat, &CheckOptions::default());
        for row in &report.rows {
            assert!(row.pass, "{row:?}");
        }
    }

    #[test]
    fn none_rows_small_bound() {
        let cat = FiniteCatalog {
            header: Vec::new(),
            entries: FiniteCatalog::shipped()
                .entries
                .into_iter()
                .filter(|e| matches!(e, CatalogEntry::None { .. }))
                .collect(),
        };
        let report = verify_tables_with_bound(&cat, &CheckOptions::default(), 15);
        assert!(report.all_pass());
        assert_eq!(report.rows[0].scanned, Some(31 * 30));
    }

    #[test]
    fn wrong_row_fails() {
        let cat = FiniteCatalog::parse("F 0 1 8T3 yes\nF 5 5 8T16 yes\n").unwrap();
        let report = verify_tables(&cat, &CheckOptions::default());
        assert!(report.rows.iter().all(|r| !r.pass));
    }
}
