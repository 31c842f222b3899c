//! Per-unit indicator aggregation: weighted publication counts, MNCS, and
//! PP-top-10% under any counting method, world averages, cross-method
//! comparison tables, and unit-count profiles.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{unit_count, ResolvedPublication, UnitLevel};
use crate::counting::{compute_weights, CountingError, CountingMethod, Weights};
use crate::normalization::{category_scores, NormalizationError, ScoreMap, StatsTable};
use crate::rational::{rat, rat_zero, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Indicator {
    Mncs,
    PpTop10,
}

impl Indicator {
    pub const ALL: [Indicator; 2] = [Indicator::Mncs, Indicator::PpTop10];

    pub fn as_str(&self) -> &'static str {
        match self {
            Indicator::Mncs => "mncs",
            Indicator::PpTop10 => "pptop10",
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Indicator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mncs" => Ok(Indicator::Mncs),
            "pptop10" => Ok(Indicator::PpTop10),
            other => Err(format!("unknown indicator '{other}'")),
        }
    }
}

/// One unit's indicator values under one counting method. Units with zero
/// total weight are never emitted.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitIndicatorRow {
    pub unit: String,
    pub level: UnitLevel,
    pub method: CountingMethod,
    /// Weighted publication count.
    pub p: Rat,
    pub mncs: Rat,
    pub pp_top10: Rat,
}

impl UnitIndicatorRow {
    pub fn value(&self, indicator: Indicator) -> &Rat {
        match indicator {
            Indicator::Mncs => &self.mncs,
            Indicator::PpTop10 => &self.pp_top10,
        }
    }
}

#[derive(Debug, Error)]
pub enum IndicatorError {
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error(transparent)]
    Normalization(#[from] NormalizationError),
    #[error("world average is undefined: no weighted publications")]
    UndefinedAverage,
    #[error("a comparison needs at least two counting methods")]
    NeedTwoMethods,
}

struct UnitAccum {
    p: Rat,
    ncs_mass: Rat,
    top10_mass: Rat,
}

/// Weighted mean of the normalized scores per unit.
///
/// Publications without a score entry are skipped alongside non-assignable
/// ones; the only sanctioned way a score can be missing is the
/// multiplicative-mode zero-unit exclusion.
pub fn unit_indicators(
    corpus: &[ResolvedPublication],
    scores: &ScoreMap,
    level: UnitLevel,
    method: CountingMethod,
) -> Result<Vec<UnitIndicatorRow>, IndicatorError> {
    let mut accums: BTreeMap<String, UnitAccum> = BTreeMap::new();
    for publication in corpus {
        let Some(score) = scores.get(publication.id()) else {
            continue;
        };
        let Weights::Assigned(vector) = compute_weights(publication, level, method)? else {
            continue;
        };
        for (unit, weight) in vector.weights {
            if weight == rat_zero() {
                continue;
            }
            let acc = accums.entry(unit).or_insert_with(|| UnitAccum {
                p: rat_zero(),
                ncs_mass: rat_zero(),
                top10_mass: rat_zero(),
            });
            acc.ncs_mass += &weight * &score.ncs;
            acc.top10_mass += &weight * &score.top10;
            acc.p += weight;
        }
    }
    let mut rows: Vec<UnitIndicatorRow> = accums
        .into_iter()
        .filter(|(_, acc)| acc.p != rat_zero())
        .map(|(unit, acc)| UnitIndicatorRow {
            unit,
            level,
            method,
            mncs: &acc.ncs_mass / &acc.p,
            pp_top10: &acc.top10_mass / &acc.p,
            p: acc.p,
        })
        .collect();
    sort_rows(&mut rows);
    Ok(rows)
}

fn sort_rows(rows: &mut [UnitIndicatorRow]) {
    rows.sort_by(|a, b| b.p.cmp(&a.p).then_with(|| a.unit.cmp(&b.unit)));
}

/// The publication-weighted average of an indicator over all units, with
/// each unit weighted by its own weighted publication count.
pub fn world_average(rows: &[UnitIndicatorRow], indicator: Indicator) -> Result<Rat, IndicatorError> {
    let total: Rat = rows.iter().map(|r| r.p.clone()).fold(rat_zero(), |a, v| a + v);
    if total == rat_zero() {
        return Err(IndicatorError::UndefinedAverage);
    }
    let mass: Rat = rows
        .iter()
        .map(|r| &r.p * r.value(indicator))
        .fold(rat_zero(), |a, v| a + v);
    Ok(mass / total)
}

/// Per-unit indicators restricted to one (field, year) cell.
///
/// Within the cell, a publication's weight toward a unit is the counting
/// weight multiplied by the publication's membership fraction in the field,
/// and its scores are the per-category ratio and top-10% membership. Under
/// any method with weight sum one, the cell's world average is exactly one
/// for MNCS and one tenth for PP-top-10%.
pub fn field_year_unit_indicators(
    corpus: &[ResolvedPublication],
    stats: &StatsTable,
    level: UnitLevel,
    method: CountingMethod,
    field: &str,
    year: i32,
) -> Result<Vec<UnitIndicatorRow>, IndicatorError> {
    let mut accums: BTreeMap<String, UnitAccum> = BTreeMap::new();
    for publication in corpus {
        if publication.record.year != year
            || !publication
                .record
                .field_assignments
                .iter()
                .any(|f| f == field)
        {
            continue;
        }
        let Some(category) = category_scores(&publication.record, stats)?
            .into_iter()
            .find(|c| c.field == field)
        else {
            continue;
        };
        let Weights::Assigned(vector) = compute_weights(publication, level, method)? else {
            continue;
        };
        for (unit, weight) in vector.weights {
            if weight == rat_zero() {
                continue;
            }
            let mass = &weight * &category.fraction;
            let acc = accums.entry(unit).or_insert_with(|| UnitAccum {
                p: rat_zero(),
                ncs_mass: rat_zero(),
                top10_mass: rat_zero(),
            });
            acc.ncs_mass += &mass * &category.ratio;
            acc.top10_mass += &mass * &category.top10;
            acc.p += mass;
        }
    }
    let mut rows: Vec<UnitIndicatorRow> = accums
        .into_iter()
        .filter(|(_, acc)| acc.p != rat_zero())
        .map(|(unit, acc)| UnitIndicatorRow {
            unit,
            level,
            method,
            mncs: &acc.ncs_mass / &acc.p,
            pp_top10: &acc.top10_mass / &acc.p,
            p: acc.p,
        })
        .collect();
    sort_rows(&mut rows);
    Ok(rows)
}

/// One unit's values under one method inside a comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodCell {
    pub p: Rat,
    pub mncs: Rat,
    pub pp_top10: Rat,
}

impl MethodCell {
    pub fn value(&self, indicator: Indicator) -> &Rat {
        match indicator {
            Indicator::Mncs => &self.mncs,
            Indicator::PpTop10 => &self.pp_top10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub unit: String,
    /// One cell per method, aligned with the table's method list. A missing
    /// cell means the unit received no weight under that method.
    pub cells: Vec<Option<MethodCell>>,
}

#[derive(Debug, Clone)]
pub struct ComparisonTable {
    pub level: UnitLevel,
    pub methods: Vec<CountingMethod>,
    pub baseline: CountingMethod,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonTable {
    fn method_index(&self, method: CountingMethod) -> Option<usize> {
        self.methods.iter().position(|&m| m == method)
    }

    /// Relative decrease of the weighted publication count against the
    /// baseline: (p_base - p_method) / p_base.
    pub fn p_decrease(&self, row: &ComparisonRow, method: CountingMethod) -> Option<Rat> {
        let base = row.cells[self.method_index(self.baseline)?].as_ref()?;
        let p_method = row.cells[self.method_index(method)?]
            .as_ref()
            .map(|c| c.p.clone())
            .unwrap_or_else(rat_zero);
        Some((&base.p - p_method) / &base.p)
    }

    /// Absolute decrease of an indicator against the baseline.
    pub fn indicator_decrease(
        &self,
        row: &ComparisonRow,
        method: CountingMethod,
        indicator: Indicator,
    ) -> Option<Rat> {
        let base = row.cells[self.method_index(self.baseline)?].as_ref()?;
        let cell = row.cells[self.method_index(method)?].as_ref()?;
        Some(base.value(indicator) - cell.value(indicator))
    }

    /// Keep the `n` units with the largest baseline publication counts.
    pub fn truncate_top(&mut self, n: usize) {
        self.rows.truncate(n);
    }
}

/// Side-by-side indicators for several counting methods, with decreases
/// against a baseline. Rows are ordered by baseline publication count,
/// largest first.
pub fn comparison_table(
    corpus: &[ResolvedPublication],
    scores: &ScoreMap,
    level: UnitLevel,
    methods: &[CountingMethod],
    baseline: CountingMethod,
) -> Result<ComparisonTable, IndicatorError> {
    if methods.len() < 2 || !methods.contains(&baseline) {
        return Err(IndicatorError::NeedTwoMethods);
    }
    let mut per_method: Vec<BTreeMap<String, MethodCell>> = Vec::with_capacity(methods.len());
    for &method in methods {
        let rows = unit_indicators(corpus, scores, level, method)?;
        per_method.push(
            rows.into_iter()
                .map(|r| {
                    (
                        r.unit,
                        MethodCell {
                            p: r.p,
                            mncs: r.mncs,
                            pp_top10: r.pp_top10,
                        },
                    )
                })
                .collect(),
        );
    }
    let mut units: Vec<String> = per_method
        .iter()
        .flat_map(|m| m.keys().cloned())
        .collect();
    units.sort();
    units.dedup();

    let baseline_idx = methods
        .iter()
        .position(|&m| m == baseline)
        .expect("baseline is among the methods");
    units.sort_by(|a, b| {
        let pa = per_method[baseline_idx].get(a).map(|c| c.p.clone());
        let pb = per_method[baseline_idx].get(b).map(|c| c.p.clone());
        pb.cmp(&pa).then_with(|| a.cmp(b))
    });

    let rows = units
        .into_iter()
        .map(|unit| {
            let cells = per_method.iter().map(|m| m.get(&unit).cloned()).collect();
            ComparisonRow { unit, cells }
        })
        .collect();

    Ok(ComparisonTable {
        level,
        methods: methods.to_vec(),
        baseline,
        rows,
    })
}

/// One unit-count bucket of the corpus profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    /// Number of units of the publications in this bucket.
    pub m: usize,
    pub publications: usize,
    /// Share of the profiled publications falling in this bucket.
    pub share: Rat,
    pub mean_ncs: Rat,
    pub mean_top10: Rat,
}

#[derive(Debug, Clone, Default)]
pub struct ProfileReport {
    pub rows: Vec<ProfileRow>,
    /// Publications with no unit at this level (or no score).
    pub excluded: usize,
}

/// Distribution of publications over their number of units at a level,
/// with the plain mean of each bucket's normalized scores.
pub fn profile(
    corpus: &[ResolvedPublication],
    scores: &ScoreMap,
    level: UnitLevel,
) -> Result<ProfileReport, IndicatorError> {
    let mut buckets: BTreeMap<usize, (usize, Rat, Rat)> = BTreeMap::new();
    let mut excluded = 0usize;
    let mut included = 0usize;
    for publication in corpus {
        let m = unit_count(publication, level);
        let score = scores.get(publication.id());
        let (m, score) = match (m, score) {
            (0, _) | (_, None) => {
                excluded += 1;
                continue;
            }
            (m, Some(score)) => (m, score),
        };
        included += 1;
        let bucket = buckets
            .entry(m)
            .or_insert_with(|| (0, rat_zero(), rat_zero()));
        bucket.0 += 1;
        bucket.1 += &score.ncs;
        bucket.2 += &score.top10;
    }
    let rows = buckets
        .into_iter()
        .map(|(m, (count, ncs_sum, top10_sum))| ProfileRow {
            m,
            publications: count,
            share: rat(count as i64, included as i64),
            mean_ncs: ncs_sum / rat(count as i64, 1),
            mean_top10: top10_sum / rat(count as i64, 1),
        })
        .collect();
    Ok(ProfileReport { rows, excluded })
}
