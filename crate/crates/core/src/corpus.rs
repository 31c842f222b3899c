//! Publication data model, corpus ingestion, and resolution of incomplete
//! address/author metadata.
//!
//! A corpus is a line-delimited file with one JSON record per line (see
//! `docs/corpus-format.md`). Records are validated on load; records that fail
//! validation are reported, never silently dropped. [`resolve`] turns a valid
//! record into a [`ResolvedPublication`] by applying the fallback rules for
//! missing author-address links, missing regular addresses, and missing
//! corresponding-author designations.

use std::collections::BTreeSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Trim, collapse internal whitespace runs, and case-fold. This is the only
/// string hygiene applied to unit names; no semantic merging is attempted.
pub fn normalize_name(raw: &str) -> String {
    raw.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AddressEntry {
    pub organization: String,
    pub country: String,
}

impl AddressEntry {
    pub fn new(organization: impl Into<String>, country: impl Into<String>) -> Self {
        Self {
            organization: organization.into(),
            country: country.into(),
        }
    }

    /// Normalized (organization, country) pair used for deduplication.
    pub fn normalized_pair(&self) -> (String, String) {
        (
            normalize_name(&self.organization),
            normalize_name(&self.country),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocType {
    Article,
    Review,
    Other,
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocType::Article => f.write_str("article"),
            DocType::Review => f.write_str("review"),
            DocType::Other => f.write_str("other"),
        }
    }
}

/// One publication as it appears in a corpus file.
///
/// `author_address_links` holds, per author, 0-based indices into
/// `regular_addresses`. `corresponding_author_index` is 1-based, matching the
/// on-disk schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublicationRecord {
    pub id: String,
    pub year: i32,
    pub doc_type: DocType,
    pub citations: u64,
    pub authors: Vec<String>,
    #[serde(default)]
    pub regular_addresses: Vec<AddressEntry>,
    #[serde(default)]
    pub reprint_address: Option<AddressEntry>,
    #[serde(default)]
    pub author_address_links: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub corresponding_author_index: Option<usize>,
    pub field_assignments: Vec<String>,
}

/// Unit of analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitLevel {
    Author,
    Organization,
    Country,
}

impl UnitLevel {
    pub const ALL: [UnitLevel; 3] = [UnitLevel::Author, UnitLevel::Organization, UnitLevel::Country];

    pub fn as_str(&self) -> &'static str {
        match self {
            UnitLevel::Author => "author",
            UnitLevel::Organization => "organization",
            UnitLevel::Country => "country",
        }
    }
}

impl fmt::Display for UnitLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// One validation finding for one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationIssue {
    pub record_id: String,
    pub line: usize,
    pub rule: String,
    pub severity: Severity,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{sev}: record '{}' (line {}): {}",
            self.record_id, self.line, self.rule
        )
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Result of loading a corpus file: the records that passed the document-type
/// filter and validation, plus every issue found on the way.
#[derive(Debug, Default)]
pub struct CorpusLoad {
    pub records: Vec<PublicationRecord>,
    pub issues: Vec<ValidationIssue>,
    /// Records skipped by the document-type filter.
    pub skipped_doc_type: usize,
}

impl CorpusLoad {
    pub fn error_count(&self) -> usize {
        self.issues
            .iter()
            .filter(|i| i.severity == Severity::Error)
            .count()
    }

    pub fn warning_count(&self) -> usize {
        self.issues.len() - self.error_count()
    }
}

pub type DocTypeFilter = BTreeSet<DocType>;

/// The default filter: documents of type article and review.
pub fn default_doc_filter() -> DocTypeFilter {
    [DocType::Article, DocType::Review].into_iter().collect()
}

pub fn load_corpus(path: &Path, filter: &DocTypeFilter) -> Result<CorpusLoad, CorpusError> {
    let file = File::open(path)?;
    load_corpus_from_reader(BufReader::new(file), filter)
}

pub fn load_corpus_from_reader<R: BufRead>(
    reader: R,
    filter: &DocTypeFilter,
) -> Result<CorpusLoad, CorpusError> {
    let mut load = CorpusLoad::default();
    let mut seen_ids: BTreeSet<String> = BTreeSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: PublicationRecord =
            serde_json::from_str(&line).map_err(|e| CorpusError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
        if !filter.contains(&record.doc_type) {
            load.skipped_doc_type += 1;
            continue;
        }
        let mut issues = validate_record(&record, line_no);
        if !seen_ids.insert(record.id.clone()) {
            issues.push(ValidationIssue {
                record_id: record.id.clone(),
                line: line_no,
                rule: "duplicate record id".into(),
                severity: Severity::Error,
            });
        }
        let has_error = issues.iter().any(|i| i.severity == Severity::Error);
        load.issues.extend(issues);
        if !has_error {
            load.records.push(record);
        }
    }
    Ok(load)
}

/// Check one record against the schema invariants. Errors exclude the record
/// from analysis; warnings flag metadata gaps that the resolution rules
/// compensate for.
pub fn validate_record(record: &PublicationRecord, line: usize) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    let mut push = |rule: String, severity: Severity| {
        issues.push(ValidationIssue {
            record_id: record.id.clone(),
            line,
            rule,
            severity,
        });
    };

    if record.id.trim().is_empty() {
        push("record id is empty".into(), Severity::Error);
    }
    for (i, addr) in record.regular_addresses.iter().enumerate() {
        if addr.organization.trim().is_empty() {
            push(
                format!("regular address {i} has an empty organization name"),
                Severity::Error,
            );
        }
        if addr.country.trim().is_empty() {
            push(
                format!("regular address {i} has an empty country name"),
                Severity::Error,
            );
        }
    }
    if let Some(reprint) = &record.reprint_address {
        if reprint.organization.trim().is_empty() || reprint.country.trim().is_empty() {
            push(
                "reprint address has an empty organization or country name".into(),
                Severity::Error,
            );
        }
    }
    if let Some(links) = &record.author_address_links {
        if links.len() != record.authors.len() {
            push(
                format!(
                    "author_address_links has {} entries for {} authors",
                    links.len(),
                    record.authors.len()
                ),
                Severity::Error,
            );
        }
        for (author_idx, author_links) in links.iter().enumerate() {
            for &addr_idx in author_links {
                if addr_idx >= record.regular_addresses.len() {
                    push(
                        format!(
                            "author {author_idx} links to address index {addr_idx} but only {} regular addresses exist",
                            record.regular_addresses.len()
                        ),
                        Severity::Error,
                    );
                }
            }
            if author_links.is_empty() {
                push(
                    format!("author {author_idx} has an explicit empty link list"),
                    Severity::Warning,
                );
            }
        }
    }
    if let Some(idx) = record.corresponding_author_index {
        if idx == 0 || idx > record.authors.len() {
            push(
                format!(
                    "corresponding_author_index {idx} is outside 1..={}",
                    record.authors.len()
                ),
                Severity::Error,
            );
        }
    }
    if record.field_assignments.is_empty() {
        push("field_assignments is empty".into(), Severity::Error);
    }
    let mut seen_fields = BTreeSet::new();
    for field in &record.field_assignments {
        if !seen_fields.insert(field.as_str()) {
            push(
                format!("duplicate field assignment '{field}'"),
                Severity::Error,
            );
        }
    }
    if record.authors.is_empty() {
        push(
            "record has no authors; it is excluded from author-level analyses".into(),
            Severity::Warning,
        );
    }
    if record.regular_addresses.is_empty() && record.reprint_address.is_none() {
        push(
            "record has no addresses; it cannot be assigned at organization or country level".into(),
            Severity::Warning,
        );
    }
    issues
}

/// A publication with all resolution fallbacks applied.
///
/// Two address lists coexist on purpose: unit counting (the `m` of a
/// publication) uses regular plus reprint addresses, while assignment weights
/// are based on regular addresses only, falling back to the reprint address
/// when no regular addresses exist.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedPublication {
    pub record: PublicationRecord,
    /// Per author, indices into `effective_addresses_for_weights`.
    pub effective_author_links: Vec<Vec<usize>>,
    /// 0-based author position of the corresponding author, when one can be
    /// identified (explicit designation, else the first author).
    pub effective_corresponding_author: Option<usize>,
    /// Addresses standing in for the corresponding author's affiliation: the
    /// designated author's links when the designation is explicit, else the
    /// reprint address, else the first author's links.
    pub corresponding_affiliation: Vec<AddressEntry>,
    pub effective_addresses_for_weights: Vec<AddressEntry>,
    pub effective_addresses_for_unit_count: Vec<AddressEntry>,
    pub assignable: bool,
}

/// Apply the resolution rules, in order:
/// (a) missing links: every author is affiliated to all regular addresses;
/// (b) no regular addresses but a reprint address: all counting is based on
///     the reprint address;
/// (c) no explicit corresponding author: the reprint address stands in for
///     the corresponding affiliation when present, else the first author;
/// (d) unit counting uses regular plus reprint addresses, deduplicated by
///     normalized name pair; weights use regular addresses only (or the
///     reprint address under rule b).
pub fn resolve(record: PublicationRecord) -> ResolvedPublication {
    let reprint_only = record.regular_addresses.is_empty() && record.reprint_address.is_some();
    let effective_addresses_for_weights: Vec<AddressEntry> = if reprint_only {
        vec![record.reprint_address.clone().expect("reprint present")]
    } else {
        record.regular_addresses.clone()
    };

    let all_indices: Vec<usize> = (0..effective_addresses_for_weights.len()).collect();
    let effective_author_links: Vec<Vec<usize>> = if reprint_only {
        record.authors.iter().map(|_| vec![0]).collect()
    } else {
        match &record.author_address_links {
            Some(links) => links.clone(),
            None => record.authors.iter().map(|_| all_indices.clone()).collect(),
        }
    };

    let mut effective_addresses_for_unit_count: Vec<AddressEntry> = Vec::new();
    let mut seen_pairs = BTreeSet::new();
    for addr in record
        .regular_addresses
        .iter()
        .chain(record.reprint_address.iter())
    {
        if seen_pairs.insert(addr.normalized_pair()) {
            effective_addresses_for_unit_count.push(addr.clone());
        }
    }

    let effective_corresponding_author = match record.corresponding_author_index {
        Some(idx) => Some(idx - 1),
        None if !record.authors.is_empty() => Some(0),
        None => None,
    };

    let author_addresses = |author_idx: usize| -> Vec<AddressEntry> {
        effective_author_links
            .get(author_idx)
            .map(|links| {
                links
                    .iter()
                    .map(|&i| effective_addresses_for_weights[i].clone())
                    .collect()
            })
            .unwrap_or_default()
    };

    let corresponding_affiliation = match record.corresponding_author_index {
        Some(idx) => author_addresses(idx - 1),
        None => match &record.reprint_address {
            Some(reprint) => vec![reprint.clone()],
            None if !record.authors.is_empty() => author_addresses(0),
            None => Vec::new(),
        },
    };

    let assignable = !effective_addresses_for_unit_count.is_empty();

    ResolvedPublication {
        record,
        effective_author_links,
        effective_corresponding_author,
        corresponding_affiliation,
        effective_addresses_for_weights,
        effective_addresses_for_unit_count,
        assignable,
    }
}

impl ResolvedPublication {
    pub fn id(&self) -> &str {
        &self.record.id
    }

    /// Addresses linked to one author, through the effective links.
    pub fn author_link_addresses(&self, author_idx: usize) -> impl Iterator<Item = &AddressEntry> {
        self.effective_author_links[author_idx]
            .iter()
            .map(|&i| &self.effective_addresses_for_weights[i])
    }

    /// Unit identifiers at the author level, one per author position.
    /// Duplicate names within one publication stay distinct positions: later
    /// occurrences get an occurrence suffix.
    pub fn author_unit_ids(&self) -> Vec<String> {
        let mut ids = Vec::with_capacity(self.record.authors.len());
        let mut counts: std::collections::BTreeMap<String, usize> = Default::default();
        for name in &self.record.authors {
            let base = normalize_name(name);
            let n = counts.entry(base.clone()).or_insert(0);
            *n += 1;
            if *n == 1 {
                ids.push(base);
            } else {
                ids.push(format!("{base}#{n}"));
            }
        }
        ids
    }
}

/// Enumerate the units a publication can be assigned to at a level.
///
/// Organization and country units are the distinct normalized names taken
/// from the unit-count address list, in first-appearance order. A
/// non-assignable publication has no units except at the author level.
pub fn enumerate_units(publication: &ResolvedPublication, level: UnitLevel) -> Vec<String> {
    match level {
        UnitLevel::Author => publication.author_unit_ids(),
        UnitLevel::Organization => distinct_names(
            publication
                .effective_addresses_for_unit_count
                .iter()
                .map(|a| a.organization.as_str()),
        ),
        UnitLevel::Country => distinct_names(
            publication
                .effective_addresses_for_unit_count
                .iter()
                .map(|a| a.country.as_str()),
        ),
    }
}

/// The number of units of a publication at a level (the `m` of a
/// publication).
pub fn unit_count(publication: &ResolvedPublication, level: UnitLevel) -> usize {
    match level {
        UnitLevel::Author => publication.record.authors.len(),
        _ => enumerate_units(publication, level).len(),
    }
}

pub(crate) fn distinct_names<'a>(names: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for name in names {
        let normalized = normalize_name(name);
        if seen.insert(normalized.clone()) {
            out.push(normalized);
        }
    }
    out
}
