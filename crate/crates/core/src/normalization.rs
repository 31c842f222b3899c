//! Field-normalized citation scores: per-publication normalized citation
//! scores (the MNCS ingredient) and top-10% membership scores (the
//! PP-top-10% ingredient), in standard and multiplicative modes.
//!
//! All normalization happens within a (field, year) cell. A publication
//! assigned to k fields contributes mass 1/k to each of its cells; in
//! multiplicative mode the mass is additionally multiplied by the
//! publication's unit count at the chosen level, so that full assignment to
//! every co-authoring unit is reconciled with reference averages that count
//! the publication once per unit.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::corpus::{unit_count, PublicationRecord, ResolvedPublication, UnitLevel};
use crate::rational::{rat, rat_int, rat_zero, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreMode {
    Standard,
    /// Each publication enters the reference statistics once per unit at the
    /// given level.
    Multiplicative(UnitLevel),
}

impl ScoreMode {
    fn multiplier(&self, publication: &ResolvedPublication) -> u64 {
        match self {
            ScoreMode::Standard => 1,
            ScoreMode::Multiplicative(level) => unit_count(publication, *level) as u64,
        }
    }
}

/// Reference statistics for one (field, year) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldYearStats {
    pub field: String,
    pub year: i32,
    /// Total fractional publication mass in the cell.
    pub pub_count: Rat,
    pub mean_citations: Rat,
    /// Smallest citation count at which the top decile is entered.
    pub top10_threshold: u64,
    /// Score of a publication sitting exactly at the threshold.
    pub top10_tie_fraction: Rat,
}

#[derive(Debug, Clone)]
pub struct StatsTable {
    pub mode: ScoreMode,
    cells: BTreeMap<(String, i32), FieldYearStats>,
}

impl StatsTable {
    pub fn get(&self, field: &str, year: i32) -> Option<&FieldYearStats> {
        self.cells.get(&(field.to_owned(), year))
    }

    pub fn iter(&self) -> impl Iterator<Item = &FieldYearStats> {
        self.cells.values()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum NormalizationError {
    #[error("publication '{id}' has no field assignments")]
    NoFields { id: String },
    #[error("no reference statistics for field '{field}', year {year}")]
    MissingStats { field: String, year: i32 },
}

/// Build the per-(field, year) reference statistics.
///
/// In multiplicative mode, publications whose unit count at the chosen level
/// is zero contribute nothing and are skipped by [`score_corpus`].
pub fn build_field_year_stats(
    corpus: &[ResolvedPublication],
    mode: ScoreMode,
) -> Result<StatsTable, NormalizationError> {
    struct CellAccum {
        mass: Rat,
        citation_mass: Rat,
        mass_by_citations: BTreeMap<u64, Rat>,
    }
    let mut accums: BTreeMap<(String, i32), CellAccum> = BTreeMap::new();

    for publication in corpus {
        let record = &publication.record;
        let k = record.field_assignments.len();
        if k == 0 {
            return Err(NormalizationError::NoFields {
                id: record.id.clone(),
            });
        }
        let multiplier = mode.multiplier(publication);
        if multiplier == 0 {
            continue;
        }
        let mass = Rat::new((multiplier as i64).into(), (k as i64).into());
        for field in &record.field_assignments {
            let cell = accums
                .entry((field.clone(), record.year))
                .or_insert_with(|| CellAccum {
                    mass: rat_zero(),
                    citation_mass: rat_zero(),
                    mass_by_citations: BTreeMap::new(),
                });
            cell.mass += &mass;
            cell.citation_mass += &mass * rat_int(record.citations);
            *cell
                .mass_by_citations
                .entry(record.citations)
                .or_insert_with(rat_zero) += &mass;
        }
    }

    let cells = accums
        .into_iter()
        .map(|((field, year), accum)| {
            let mean_citations = &accum.citation_mass / &accum.mass;
            let (top10_threshold, top10_tie_fraction) =
                top_decile_boundary(&accum.mass_by_citations, &accum.mass);
            (
                (field.clone(), year),
                FieldYearStats {
                    field,
                    year,
                    pub_count: accum.mass,
                    mean_citations,
                    top10_threshold,
                    top10_tie_fraction,
                },
            )
        })
        .collect();

    Ok(StatsTable { mode, cells })
}

/// Find the top-10% boundary of a cell: the smallest citation value whose
/// strictly-greater mass is at most a tenth of the cell, and the fractional
/// score of publications sitting exactly on it. The construction is the
/// unique one making the mass-weighted mean of the scores exactly 0.10.
fn top_decile_boundary(mass_by_citations: &BTreeMap<u64, Rat>, total: &Rat) -> (u64, Rat) {
    let decile = total * rat(1, 10);
    let mut above = rat_zero();
    let mut boundary = None;
    for (&value, mass) in mass_by_citations.iter().rev() {
        if above <= decile {
            boundary = Some((value, above.clone(), mass.clone()));
        } else {
            break;
        }
        above += mass;
    }
    let (value, above, at) = boundary.expect("cell has at least one publication");
    (value, (decile - above) / at)
}

/// Per-category pieces of a publication's normalized scores.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryScore {
    pub field: String,
    /// The publication's membership fraction in the category (1/k).
    pub fraction: Rat,
    /// Citations divided by the category's mean citation rate.
    pub ratio: Rat,
    /// Top-10% membership within the category (0, 1, or the tie fraction).
    pub top10: Rat,
}

/// Score one publication against each of its categories.
pub fn category_scores(
    record: &PublicationRecord,
    stats: &StatsTable,
) -> Result<Vec<CategoryScore>, NormalizationError> {
    let k = record.field_assignments.len();
    if k == 0 {
        return Err(NormalizationError::NoFields {
            id: record.id.clone(),
        });
    }
    let fraction = rat(1, k as i64);
    record
        .field_assignments
        .iter()
        .map(|field| {
            let cell =
                stats
                    .get(field, record.year)
                    .ok_or_else(|| NormalizationError::MissingStats {
                        field: field.clone(),
                        year: record.year,
                    })?;
            // A zero mean implies every publication in the cell is uncited;
            // everyone scores exactly the mean, so the ratio is one.
            let ratio = if cell.mean_citations == rat_zero() {
                rat_int(1)
            } else {
                rat_int(record.citations) / &cell.mean_citations
            };
            let top10 = match record.citations.cmp(&cell.top10_threshold) {
                std::cmp::Ordering::Greater => rat_int(1),
                std::cmp::Ordering::Equal => cell.top10_tie_fraction.clone(),
                std::cmp::Ordering::Less => rat_zero(),
            };
            Ok(CategoryScore {
                field: field.clone(),
                fraction: fraction.clone(),
                ratio,
                top10,
            })
        })
        .collect()
}

/// The normalized citation score: the fraction-weighted average of the
/// publication's per-category citation ratios.
pub fn normalized_citation_score(
    record: &PublicationRecord,
    stats: &StatsTable,
) -> Result<Rat, NormalizationError> {
    Ok(category_scores(record, stats)?
        .iter()
        .map(|c| &c.fraction * &c.ratio)
        .fold(rat_zero(), |acc, v| acc + v))
}

/// The top-10% membership score in [0, 1]: the fraction-weighted average of
/// per-category membership.
pub fn top10_score(
    record: &PublicationRecord,
    stats: &StatsTable,
) -> Result<Rat, NormalizationError> {
    Ok(category_scores(record, stats)?
        .iter()
        .map(|c| &c.fraction * &c.top10)
        .fold(rat_zero(), |acc, v| acc + v))
}

/// Both scores of one publication.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedScores {
    pub publication_id: String,
    pub ncs: Rat,
    pub top10: Rat,
}

pub type ScoreMap = BTreeMap<String, NormalizedScores>;

/// Score a whole corpus against a stats table. In multiplicative mode,
/// publications with a zero unit count at the mode's level are skipped; they
/// never entered the reference statistics.
pub fn score_corpus(
    corpus: &[ResolvedPublication],
    stats: &StatsTable,
) -> Result<ScoreMap, NormalizationError> {
    let mut scores = ScoreMap::new();
    for publication in corpus {
        if stats.mode.multiplier(publication) == 0 {
            continue;
        }
        let categories = category_scores(&publication.record, stats)?;
        let ncs = categories
            .iter()
            .map(|c| &c.fraction * &c.ratio)
            .fold(rat_zero(), |acc, v| acc + v);
        let top10 = categories
            .iter()
            .map(|c| &c.fraction * &c.top10)
            .fold(rat_zero(), |acc, v| acc + v);
        scores.insert(
            publication.record.id.clone(),
            NormalizedScores {
                publication_id: publication.record.id.clone(),
                ncs,
                top10,
            },
        );
    }
    Ok(scores)
}
