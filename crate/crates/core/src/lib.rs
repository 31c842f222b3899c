//! Co-authorship counting methods and field-normalized citation indicators.
//!
//! `bibcount` computes, over a corpus of publications:
//!
//! * assignment weights under seven counting methods (full counting, four
//!   fractional variants, first-author and corresponding-author counting) at
//!   the author, organization, and country level;
//! * per-publication normalized citation scores and top-10% membership
//!   scores, normalized within (field, year) cells, in standard and
//!   multiplicative modes;
//! * per-unit MNCS and PP-top-10% indicators, world averages, cross-method
//!   comparison tables, and unit-count profiles;
//! * the full counting bonus, by its direct formula and by differencing
//!   world averages, with per-field, broad-field, and yearly breakdowns;
//! * seeded synthetic corpora with a configurable coupling between
//!   collaboration and citations.
//!
//! All arithmetic is exact: weights, scores, and indicators are rationals,
//! and floating point appears only at report emission. The `bibcount` binary
//! wraps everything in a batch CLI; see the repository README for the corpus
//! file format and command reference.

#![forbid(unsafe_code)]

pub mod bonus;
pub mod corpus;
pub mod counting;
pub mod indicators;
pub mod normalization;
pub mod rational;
pub mod report;
pub mod sim;

#[cfg(test)]
pub(crate) mod testutil;

pub use corpus::{
    enumerate_units, load_corpus, resolve, unit_count, AddressEntry, CorpusError, CorpusLoad,
    DocType, PublicationRecord, ResolvedPublication, UnitLevel,
};
pub use counting::{compute_weights, weighted_publication_count, CountingMethod, WeightVector, Weights};
pub use indicators::{
    comparison_table, profile, unit_indicators, world_average, Indicator, UnitIndicatorRow,
};
pub use normalization::{
    build_field_year_stats, normalized_citation_score, score_corpus, top10_score, FieldYearStats,
    NormalizedScores, ScoreMode, StatsTable,
};
pub use bonus::{bonus_input, fcb_breakdown, fcb_direct, fcb_via_unit_averages, BonusInput, BonusReport};
pub use rational::Rat;
pub use sim::{simulate_corpus, SimulatorConfig};
