//! The full counting bonus: the gap between the full-counting and
//! unit-weight-one world averages of an indicator.
//!
//! Two routes compute it. The direct route works from per-publication unit
//! counts and citation scores; the unit-average route actually builds the
//! per-unit indicators under full counting and under a reference method and
//! differences the two world averages. The routes agree exactly, whichever
//! fractional variant (or first/corresponding author counting) serves as the
//! reference.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::corpus::{unit_count, ResolvedPublication, UnitLevel};
use crate::counting::{compute_weights, CountingError, CountingMethod, Weights};
use crate::indicators::{Indicator, IndicatorError};
use crate::normalization::{category_scores, score_corpus, NormalizationError, ScoreMap, StatsTable};
use crate::rational::{rat_int, rat_zero, to_f64, Rat};

/// One publication's contribution to a bonus computation.
#[derive(Debug, Clone, PartialEq)]
pub struct BonusEntry {
    pub id: String,
    /// Number of units co-authoring the publication; at least one.
    pub m: u64,
    /// Citation score (raw citations, normalized score, or top-10%
    /// membership, depending on the indicator in use).
    pub score: Rat,
}

/// Input to the direct bonus computation. Publications that cannot be
/// assigned to any unit are left out of both terms and only counted here.
#[derive(Debug, Clone, Default)]
pub struct BonusInput {
    pub publications: Vec<BonusEntry>,
    pub excluded_count: usize,
}

#[derive(Debug, Error)]
pub enum BonusError {
    #[error("bonus is undefined: every publication was excluded")]
    EmptyInput,
    #[error("the reference method must assign each publication a total weight of one; full counting does not")]
    FullAsReference,
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error(transparent)]
    Normalization(#[from] NormalizationError),
    #[error(transparent)]
    Indicator(#[from] IndicatorError),
}

/// Gather per-publication unit counts and scores for one level and
/// indicator. Publications with no unit at the level (or no score entry) are
/// excluded and counted.
pub fn bonus_input(
    corpus: &[ResolvedPublication],
    scores: &ScoreMap,
    level: UnitLevel,
    indicator: Indicator,
) -> BonusInput {
    let mut input = BonusInput::default();
    for publication in corpus {
        let m = unit_count(publication, level) as u64;
        let score = scores.get(publication.id());
        match (m, score) {
            (0, _) | (_, None) => input.excluded_count += 1,
            (m, Some(score)) => input.publications.push(BonusEntry {
                id: publication.record.id.clone(),
                m,
                score: match indicator {
                    Indicator::Mncs => score.ncs.clone(),
                    Indicator::PpTop10 => score.top10.clone(),
                },
            }),
        }
    }
    input
}

/// Both terms of the direct bonus formula: the m-weighted mean of the scores
/// and their plain mean.
pub fn fcb_terms(input: &BonusInput) -> Result<(Rat, Rat), BonusError> {
    if input.publications.is_empty() {
        return Err(BonusError::EmptyInput);
    }
    let mut m_total = rat_zero();
    let mut m_score = rat_zero();
    let mut score_total = rat_zero();
    for entry in &input.publications {
        let m = rat_int(entry.m);
        m_score += &m * &entry.score;
        m_total += m;
        score_total += &entry.score;
    }
    let n = rat_int(input.publications.len() as u64);
    Ok((m_score / m_total, score_total / n))
}

/// The full counting bonus, computed directly: the m-weighted mean of the
/// scores minus their plain mean.
pub fn fcb_direct(input: &BonusInput) -> Result<Rat, BonusError> {
    let (first, second) = fcb_terms(input)?;
    Ok(first - second)
}

/// Floating-point mirror of [`fcb_direct`].
pub fn fcb_direct_f64(entries: &[(u64, f64)]) -> Option<f64> {
    if entries.is_empty() {
        return None;
    }
    let mut m_total = 0.0;
    let mut m_score = 0.0;
    let mut score_total = 0.0;
    for &(m, score) in entries {
        m_total += m as f64;
        m_score += m as f64 * score;
        score_total += score;
    }
    Some(m_score / m_total - score_total / entries.len() as f64)
}

/// The full counting bonus computed the long way: per-unit average scores
/// under full counting and under a reference method, each world-averaged
/// with the method's own weighted publication counts, then differenced.
///
/// Both routes run over exactly the publications the reference method can
/// assign, so the result is identical to [`fcb_direct`] on the matching
/// [`bonus_input`].
pub fn fcb_via_unit_averages(
    corpus: &[ResolvedPublication],
    scores: &ScoreMap,
    level: UnitLevel,
    reference: CountingMethod,
    indicator: Indicator,
) -> Result<Rat, BonusError> {
    if reference == CountingMethod::Full {
        return Err(BonusError::FullAsReference);
    }
    // unit -> (weighted publication count, weight-scored mass)
    let mut full_units: BTreeMap<String, (Rat, Rat)> = BTreeMap::new();
    let mut reference_units: BTreeMap<String, (Rat, Rat)> = BTreeMap::new();
    let mut any = false;
    for publication in corpus {
        let Some(score) = scores.get(publication.id()) else {
            continue;
        };
        let Weights::Assigned(reference_vector) = compute_weights(publication, level, reference)?
        else {
            continue;
        };
        let Weights::Assigned(full_vector) =
            compute_weights(publication, level, CountingMethod::Full)?
        else {
            continue;
        };
        any = true;
        let value = match indicator {
            Indicator::Mncs => &score.ncs,
            Indicator::PpTop10 => &score.top10,
        };
        for (vector, units) in [
            (full_vector, &mut full_units),
            (reference_vector, &mut reference_units),
        ] {
            for (unit, weight) in vector.weights {
                if weight == rat_zero() {
                    continue;
                }
                let acc = units
                    .entry(unit)
                    .or_insert_with(|| (rat_zero(), rat_zero()));
                acc.1 += &weight * value;
                acc.0 += weight;
            }
        }
    }
    if !any {
        return Err(BonusError::EmptyInput);
    }
    let world = |units: &BTreeMap<String, (Rat, Rat)>| -> Rat {
        let mut total = rat_zero();
        let mut weighted = rat_zero();
        for (p, mass) in units.values() {
            let unit_average = mass / p;
            weighted += unit_average * p;
            total += p;
        }
        weighted / total
    };
    Ok(world(&full_units) - world(&reference_units))
}

/// Floating-point mirror of [`fcb_via_unit_averages`]: the same per-unit
/// aggregation carried out in `f64`.
pub fn fcb_via_unit_averages_f64(
    corpus: &[ResolvedPublication],
    scores: &ScoreMap,
    level: UnitLevel,
    reference: CountingMethod,
    indicator: Indicator,
) -> Result<f64, BonusError> {
    if reference == CountingMethod::Full {
        return Err(BonusError::FullAsReference);
    }
    let mut averages = [0.0f64; 2];
    for (slot, method) in [(0, CountingMethod::Full), (1, reference)] {
        let mut units: BTreeMap<String, (f64, f64)> = BTreeMap::new();
        for publication in corpus {
            let Some(score) = scores.get(publication.id()) else {
                continue;
            };
            // Inclusion is decided by the reference method for both routes.
            let Weights::Assigned(_) = compute_weights(publication, level, reference)? else {
                continue;
            };
            let Weights::Assigned(vector) = compute_weights(publication, level, method)? else {
                continue;
            };
            let s = match indicator {
                Indicator::Mncs => to_f64(&score.ncs),
                Indicator::PpTop10 => to_f64(&score.top10),
            };
            for (unit, weight) in vector.weights {
                let w = to_f64(&weight);
                if w == 0.0 {
                    continue;
                }
                let acc = units.entry(unit).or_insert((0.0, 0.0));
                acc.0 += w;
                acc.1 += w * s;
            }
        }
        let mut p_total = 0.0;
        let mut weighted = 0.0;
        for (p, score_mass) in units.values() {
            let unit_average = score_mass / p;
            p_total += p;
            weighted += unit_average * p;
        }
        if p_total == 0.0 {
            return Err(BonusError::EmptyInput);
        }
        averages[slot] = weighted / p_total;
    }
    Ok(averages[0] - averages[1])
}

/// How a corpus is partitioned for a bonus breakdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grouping {
    /// One group covering the whole corpus.
    Whole,
    /// One group per field; scores are the per-category ratios and masses
    /// the category membership fractions, so each group's reference average
    /// is exactly the indicator's nominal value.
    Field,
    /// One group per broad field, through a field-to-broad-field mapping.
    BroadField(BTreeMap<String, String>),
    /// One group per publication year: the bonus time series.
    Year,
}

/// The bonus for one group, level, and indicator.
#[derive(Debug, Clone, PartialEq)]
pub struct BonusReport {
    pub scope: String,
    pub level: UnitLevel,
    pub indicator: Indicator,
    pub fcb: Rat,
    /// The bonus as a percentage of the reference average (the second term).
    pub fcb_percent: Rat,
    pub n_included: usize,
    pub n_excluded: usize,
}

#[derive(Debug, Default)]
pub struct BreakdownOutcome {
    pub reports: Vec<BonusReport>,
    /// Groups skipped because no publication could be assigned.
    pub notices: Vec<String>,
}

struct MassEntry {
    m: u64,
    mass: Rat,
    score_mass: Rat,
}

fn fcb_from_masses(entries: &[MassEntry]) -> Option<(Rat, Rat)> {
    if entries.is_empty() {
        return None;
    }
    let mut m_mass = rat_zero();
    let mut m_score = rat_zero();
    let mut mass = rat_zero();
    let mut score = rat_zero();
    for entry in entries {
        let m = rat_int(entry.m);
        m_mass += &m * &entry.mass;
        m_score += &m * &entry.score_mass;
        mass += &entry.mass;
        score += &entry.score_mass;
    }
    if m_mass == rat_zero() || mass == rat_zero() {
        return None;
    }
    let first = m_score / m_mass;
    let second = score / mass;
    Some((&first - &second, second))
}

/// Bonus reports per group, level, and indicator. Field and broad-field
/// groupings weight each publication by its category membership fractions;
/// the whole-corpus and yearly groupings use the plain direct formula.
pub fn fcb_breakdown(
    corpus: &[ResolvedPublication],
    stats: &StatsTable,
    grouping: &Grouping,
    levels: &[UnitLevel],
    indicators: &[Indicator],
) -> Result<BreakdownOutcome, BonusError> {
    let scores = score_corpus(corpus, stats)?;
    let mut outcome = BreakdownOutcome::default();

    // scope -> publication indices (with per-category masses where needed)
    let mut groups: BTreeMap<String, Vec<(usize, Rat, Rat, Rat)>> = BTreeMap::new();
    for (idx, publication) in corpus.iter().enumerate() {
        let Some(score) = scores.get(publication.id()) else {
            continue;
        };
        match grouping {
            Grouping::Whole => {
                groups.entry("all".into()).or_default().push((
                    idx,
                    rat_int(1),
                    score.ncs.clone(),
                    score.top10.clone(),
                ));
            }
            Grouping::Year => {
                groups
                    .entry(publication.record.year.to_string())
                    .or_default()
                    .push((idx, rat_int(1), score.ncs.clone(), score.top10.clone()));
            }
            Grouping::Field => {
                for category in category_scores(&publication.record, stats)? {
                    groups.entry(category.field.clone()).or_default().push((
                        idx,
                        category.fraction.clone(),
                        &category.fraction * &category.ratio,
                        &category.fraction * &category.top10,
                    ));
                }
            }
            Grouping::BroadField(mapping) => {
                let mut per_broad: BTreeMap<String, (Rat, Rat, Rat)> = BTreeMap::new();
                for category in category_scores(&publication.record, stats)? {
                    let broad = mapping
                        .get(&category.field)
                        .cloned()
                        .unwrap_or_else(|| "unmapped".to_string());
                    let acc = per_broad
                        .entry(broad)
                        .or_insert_with(|| (rat_zero(), rat_zero(), rat_zero()));
                    acc.0 += &category.fraction;
                    acc.1 += &category.fraction * &category.ratio;
                    acc.2 += &category.fraction * &category.top10;
                }
                for (broad, (mass, ncs_mass, top10_mass)) in per_broad {
                    groups
                        .entry(broad)
                        .or_default()
                        .push((idx, mass, ncs_mass, top10_mass));
                }
            }
        }
    }

    for (scope, members) in groups {
        for &level in levels {
            let mut entries: Vec<(MassEntry, MassEntry)> = Vec::new();
            let mut excluded = 0usize;
            for (idx, mass, ncs_mass, top10_mass) in &members {
                let m = unit_count(&corpus[*idx], level) as u64;
                if m == 0 {
                    excluded += 1;
                    continue;
                }
                entries.push((
                    MassEntry {
                        m,
                        mass: mass.clone(),
                        score_mass: ncs_mass.clone(),
                    },
                    MassEntry {
                        m,
                        mass: mass.clone(),
                        score_mass: top10_mass.clone(),
                    },
                ));
            }
            if entries.is_empty() {
                outcome
                    .notices
                    .push(format!("group '{scope}' has no assignable publications at the {level} level"));
                continue;
            }
            for &indicator in indicators {
                let selected: Vec<MassEntry> = entries
                    .iter()
                    .map(|(ncs, top10)| match indicator {
                        Indicator::Mncs => MassEntry {
                            m: ncs.m,
                            mass: ncs.mass.clone(),
                            score_mass: ncs.score_mass.clone(),
                        },
                        Indicator::PpTop10 => MassEntry {
                            m: top10.m,
                            mass: top10.mass.clone(),
                            score_mass: top10.score_mass.clone(),
                        },
                    })
                    .collect();
                let Some((fcb, second)) = fcb_from_masses(&selected) else {
                    continue;
                };
                let fcb_percent = &fcb / &second * rat_int(100);
                outcome.reports.push(BonusReport {
                    scope: scope.clone(),
                    level,
                    indicator,
                    fcb,
                    fcb_percent,
                    n_included: selected.len(),
                    n_excluded: excluded,
                });
            }
        }
    }
    Ok(outcome)
}
