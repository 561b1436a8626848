//! Embedded appendix tables of σ-permutation matrices and their verification
//! against the constructive definition.
//!
//! Tables are stored as printed. Verification regenerates each matrix with
//! [`build_perm_matrix`], classifies any disagreement, and compares the
//! classification with the errata registry shipped in
//! `data/appendix_errata.toml`.

mod tables;

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::index::Shape;
use crate::permutation::{build_perm_matrix, satisfies_defining_property, LogicalMatrix, Permutation};

/// One printed entry, exactly as it appears.
#[derive(Debug)]
pub(crate) struct RawEntry {
    appendix: usize,
    d: usize,
    n: usize,
    label: usize,
    sigma: &'static [usize],
    printed_subscript: usize,
    printed_sigma_label: usize,
    printed_size: usize,
    cols: &'static [usize],
}

const ROMAN: [&str; 24] = [
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv", "xv",
    "xvi", "xvii", "xviii", "xix", "xx", "xxi", "xxii", "xxiii", "xxiv",
];

/// Lower-case roman numeral used for item labels 1..=24.
pub fn roman(label: usize) -> &'static str {
    ROMAN.get(label.wrapping_sub(1)).copied().unwrap_or("?")
}

/// A published table entry tagged with the σ it claims to represent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixEntry {
    pub appendix: usize,
    pub d: usize,
    pub n: usize,
    pub label: usize,
    pub sigma: Permutation,
    /// The `n` printed as the subscript of `W`.
    pub printed_subscript: usize,
    /// The σ label printed as the superscript of `W`.
    pub printed_sigma_label: usize,
    /// The `m` printed in `δ_m[...]`.
    pub printed_size: usize,
    /// The printed columns. Its row count is the number of printed columns,
    /// which differs from `printed_size` only for mislabelled entries.
    pub table: LogicalMatrix,
}

impl AppendixEntry {
    fn from_raw(raw: &RawEntry) -> Self {
        AppendixEntry {
            appendix: raw.appendix,
            d: raw.d,
            n: raw.n,
            label: raw.label,
            sigma: Permutation::new(raw.sigma.to_vec()).expect("embedded σ is a permutation"),
            printed_subscript: raw.printed_subscript,
            printed_sigma_label: raw.printed_sigma_label,
            printed_size: raw.printed_size,
            table: LogicalMatrix::new(raw.cols.len(), raw.cols.to_vec())
                .expect("embedded columns are in range"),
        }
    }

    pub fn dims(&self) -> Shape {
        Shape::new(vec![self.n; self.d]).expect("appendix dims are small")
    }

    /// Short identifier such as `A4(xiv)`.
    pub fn id(&self) -> String {
        format!("A{}({})", self.appendix, roman(self.label))
    }

    /// The entry in δ-notation with the printed size, as published.
    pub fn published_delta(&self) -> String {
        let cols: Vec<String> = self.table.cols().iter().map(usize::to_string).collect();
        format!("d{}[{}]", self.printed_size, cols.join(","))
    }
}

/// Every embedded entry in appendix and label order.
pub fn appendix_entries() -> Vec<AppendixEntry> {
    tables::TABLES.iter().map(AppendixEntry::from_raw).collect()
}

/// The verbatim entry for `(d, n, label)`.
pub fn appendix_table(d: usize, n: usize, label: usize) -> Result<AppendixEntry> {
    tables::TABLES
        .iter()
        .find(|e| e.d == d && e.n == n && e.label == label)
        .map(AppendixEntry::from_raw)
        .ok_or(Error::UnknownTable { d, n, label })
}

/// Ways a published entry can disagree with the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErratumKind {
    /// Columns equal the construction for σ⁻¹.
    Inverse,
    /// Columns repeat another entry of the same appendix.
    Duplicate,
    /// Columns do not form a permutation.
    Garbled,
    /// Printed subscript, σ label or δ size disagrees with the entry.
    Label,
}

impl ErratumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErratumKind::Inverse => "inverse",
            ErratumKind::Duplicate => "duplicate",
            ErratumKind::Garbled => "garbled",
            ErratumKind::Label => "label",
        }
    }
}

impl fmt::Display for ErratumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Erratum {
    pub appendix: usize,
    pub d: usize,
    pub n: usize,
    pub label: usize,
    pub kinds: Vec<ErratumKind>,
    #[serde(default)]
    pub duplicate_of: Option<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrataRegistry {
    pub version: u32,
    #[serde(default, rename = "erratum")]
    pub errata: Vec<Erratum>,
}

const EMBEDDED_ERRATA: &str = include_str!("../../data/appendix_errata.toml");

pub const ERRATA_VERSION: u32 = 1;

impl ErrataRegistry {
    pub fn parse(text: &str) -> Result<Self> {
        let reg: ErrataRegistry =
            toml::from_str(text).map_err(|e| Error::Document(format!("errata registry: {e}")))?;
        if reg.version != ERRATA_VERSION {
            return Err(Error::Document(format!(
                "errata registry version {} is not supported (expected {ERRATA_VERSION})",
                reg.version
            )));
        }
        let mut seen = BTreeSet::new();
        for e in &reg.errata {
            if !seen.insert((e.appendix, e.d, e.n, e.label)) {
                return Err(Error::Document(format!(
                    "errata registry lists A{}({}) twice",
                    e.appendix,
                    roman(e.label)
                )));
            }
            if e.kinds.contains(&ErratumKind::Duplicate) != e.duplicate_of.is_some() {
                return Err(Error::Document(format!(
                    "errata registry entry A{}({}): duplicate_of must be given exactly for kind \"duplicate\"",
                    e.appendix,
                    roman(e.label)
                )));
            }
        }
        Ok(reg)
    }

    /// The registry compiled into the library.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED_ERRATA).expect("embedded errata registry is well formed")
    }

    pub fn lookup(&self, entry: &AppendixEntry) -> Option<&Erratum> {
        self.errata.iter().find(|e| {
            e.appendix == entry.appendix && e.d == entry.d && e.n == entry.n && e.label == entry.label
        })
    }
}

/// What verification found for one entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    ExpectedMismatch,
    Mismatch,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::ExpectedMismatch => "EXPECTED-MISMATCH",
            Verdict::Mismatch => "MISMATCH",
        }
    }
}

/// One differing column: position, printed row, generated row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnDiff {
    pub column: usize,
    pub published: Option<usize>,
    pub generated: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub entry: AppendixEntry,
    pub generated: LogicalMatrix,
    /// Kinds detected by comparison, sorted.
    pub detected: Vec<ErratumKind>,
    /// Label of the entry whose printed columns this one repeats.
    pub duplicate_of: Option<usize>,
    /// Whether the generated matrix satisfies the Kronecker-chain property
    /// under exhaustive basis enumeration.
    pub property_holds: bool,
    pub registered: Option<Erratum>,
    pub verdict: Verdict,
    pub diff: Vec<ColumnDiff>,
}

impl TableReport {
    /// One status line, e.g. `PASS A1(iv) d=3 n=2 sigma=(2,3,1)`.
    pub fn status_line(&self) -> String {
        let mut line = format!(
            "{} {} d={} n={} sigma={}",
            self.verdict.as_str(),
            self.entry.id(),
            self.entry.d,
            self.entry.n,
            self.entry.sigma
        );
        if !self.detected.is_empty() {
            let kinds: Vec<&str> = self.detected.iter().map(|k| k.as_str()).collect();
            line.push_str(&format!(" kinds={}", kinds.join(",")));
        }
        if let Some(e) = &self.registered {
            line.push_str(&format!(" registered=\"{}\"", e.reason));
        }
        if !self.property_holds {
            line.push_str(" property=FAILED");
        }
        line
    }

    /// Unified-diff style listing of the differing column indices.
    pub fn diff_lines(&self) -> Vec<String> {
        if self.diff.is_empty() {
            return Vec::new();
        }
        let mut out = vec![
            format!("--- published {}", self.entry.id()),
            format!("+++ generated W^{}", self.entry.sigma),
        ];
        for d in &self.diff {
            out.push(format!("@@ column {} @@", d.column));
            if let Some(p) = d.published {
                out.push(format!("-{p}"));
            }
            if let Some(g) = d.generated {
                out.push(format!("+{g}"));
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub tables: Vec<TableReport>,
    /// Registry entries that refer to no embedded table.
    pub orphaned: Vec<Erratum>,
}

impl VerificationReport {
    /// True when no table is a plain MISMATCH and the registry has no orphans.
    pub fn is_success(&self) -> bool {
        self.orphaned.is_empty() && self.tables.iter().all(|t| t.verdict != Verdict::Mismatch)
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.tables.iter().filter(|t| t.verdict == verdict).count()
    }
}

fn column_diff(published: &[usize], generated: &[usize]) -> Vec<ColumnDiff> {
    let len = published.len().max(generated.len());
    (0..len)
        .filter_map(|j| {
            let p = published.get(j).copied();
            let g = generated.get(j).copied();
            (p != g).then_some(ColumnDiff {
                column: j + 1,
                published: p,
                generated: g,
            })
        })
        .collect()
}

/// Classifies the disagreement between a printed entry and the construction.
/// Returns the sorted kinds and, for duplicates, the label repeated.
pub fn classify(
    entry: &AppendixEntry,
    generated: &LogicalMatrix,
    all: &[AppendixEntry],
) -> Result<(Vec<ErratumKind>, Option<usize>)> {
    let mut kinds = Vec::new();
    let mut duplicate_of = None;
    if entry.table.cols() != generated.cols() {
        if !entry.table.is_permutation() || entry.table.rows() != generated.rows() {
            kinds.push(ErratumKind::Garbled);
        } else if entry.table == build_perm_matrix(&entry.dims(), &entry.sigma.inverse())? {
            kinds.push(ErratumKind::Inverse);
        } else if let Some(other) = all.iter().find(|o| {
            o.appendix == entry.appendix && o.label != entry.label && o.table == entry.table
        }) {
            kinds.push(ErratumKind::Duplicate);
            duplicate_of = Some(other.label);
        } else {
            // An unexplained difference: reported with no kind, which never
            // matches a registry entry.
        }
    }
    let size = entry.n.pow(entry.d as u32);
    if entry.printed_subscript != entry.n
        || entry.printed_sigma_label != entry.label
        || entry.printed_size != size
    {
        kinds.push(ErratumKind::Label);
    }
    kinds.sort();
    Ok((kinds, duplicate_of))
}

/// Verifies one entry against the construction and the registry.
pub fn verify_entry(
    entry: &AppendixEntry,
    all: &[AppendixEntry],
    registry: &ErrataRegistry,
) -> Result<TableReport> {
    let dims = entry.dims();
    let generated = build_perm_matrix(&dims, &entry.sigma)?;
    let property_holds = satisfies_defining_property(&dims, &entry.sigma, &generated)?;
    let (detected, duplicate_of) = classify(entry, &generated, all)?;
    let content_differs = entry.table.cols() != generated.cols();
    let label_differs = detected.contains(&ErratumKind::Label);
    let registered = registry.lookup(entry).cloned();

    let verdict = if !property_holds {
        Verdict::Mismatch
    } else {
        match &registered {
            None if !content_differs && !label_differs => Verdict::Pass,
            None => Verdict::Mismatch,
            Some(e) => {
                let mut expected = e.kinds.clone();
                expected.sort();
                expected.dedup();
                let content_explained = !content_differs
                    || detected.iter().any(|k| *k != ErratumKind::Label);
                if content_explained && expected == detected && e.duplicate_of == duplicate_of {
                    Verdict::ExpectedMismatch
                } else {
                    Verdict::Mismatch
                }
            }
        }
    };

    Ok(TableReport {
        diff: column_diff(entry.table.cols(), generated.cols()),
        entry: entry.clone(),
        generated,
        detected,
        duplicate_of,
        property_holds,
        registered,
        verdict,
    })
}

/// Verifies every embedded table.
pub fn verify_appendix(registry: &ErrataRegistry) -> Result<VerificationReport> {
    let all = appendix_entries();
    let tables = all
        .iter()
        .map(|e| verify_entry(e, &all, registry))
        .collect::<Result<Vec<_>>>()?;
    let orphaned = registry
        .errata
        .iter()
        .filter(|r| {
            !all.iter()
                .any(|e| e.appendix == r.appendix && e.d == r.d && e.n == r.n && e.label == r.label)
        })
        .cloned()
        .collect();
    Ok(VerificationReport { tables, orphaned })
}
