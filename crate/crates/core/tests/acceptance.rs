//! Acceptance suite. Each test covers one numbered criterion, checks it at
//! the stated tolerance, enforces its runtime budget, and prints one
//! PASS/FAIL line (run with `cargo test --test acceptance -- --nocapture`
//! to see the lines as they complete).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use bibcount::bonus::{bonus_input, fcb_direct, fcb_direct_f64, fcb_terms, fcb_breakdown, fcb_via_unit_averages, fcb_via_unit_averages_f64, Grouping};
use bibcount::corpus::{
    default_doc_filter, load_corpus, resolve, unit_count, ResolvedPublication, UnitLevel,
};
use bibcount::counting::{compute_weights, CountingMethod, Weights};
use bibcount::indicators::{
    field_year_unit_indicators, unit_indicators, world_average, Indicator,
};
use bibcount::normalization::{
    build_field_year_stats, category_scores, score_corpus, ScoreMap, ScoreMode,
};
use bibcount::rational::{rat, rat_int, rat_zero, to_f64, Rat};
use bibcount::sim::{Categorical, CitationModel, SimulatorConfig, YearRange};

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(number: u32, name: &'static str, budget_secs: u64) -> Self {
        Self {
            number,
            name,
            budget: Duration::from_secs(budget_secs),
            started: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        let within = elapsed <= self.budget;
        println!(
            "ACCEPTANCE {:>2} {:<58} {} ({:.2}s)",
            self.number,
            self.name,
            if within { "PASS" } else { "FAIL (over budget)" },
            elapsed.as_secs_f64()
        );
        assert!(
            within,
            "criterion {} exceeded its {:?} budget: {:?}",
            self.number, self.budget, elapsed
        );
    }
}

fn data(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(file)
}

fn load(file: &str) -> Vec<ResolvedPublication> {
    let loaded = load_corpus(&data(file), &default_doc_filter()).expect("corpus loads");
    assert_eq!(loaded.error_count(), 0);
    loaded.records.into_iter().map(resolve).collect()
}

fn scores_for(corpus: &[ResolvedPublication], mode: ScoreMode) -> ScoreMap {
    let stats = build_field_year_stats(corpus, mode).unwrap();
    score_corpus(corpus, &stats).unwrap()
}

fn assigned_weights(
    publication: &ResolvedPublication,
    level: UnitLevel,
    method: CountingMethod,
) -> Vec<(String, Rat)> {
    compute_weights(publication, level, method)
        .unwrap()
        .assigned()
        .unwrap()
        .weights
        .clone()
}

fn reference_methods(level: UnitLevel) -> Vec<CountingMethod> {
    CountingMethod::valid_methods(level)
        .into_iter()
        .filter(|m| m.sums_to_one())
        .collect()
}

// --- Criterion 1 -----------------------------------------------------------

#[test]
fn criterion_01_worked_example_weights() {
    let criterion = Criterion::start(1, "worked-example weight vectors (three unit levels)", 1);
    let corpus = load("worked_example.jsonl");
    let publication = &corpus[0];

    use CountingMethod::*;
    let expect = |level: UnitLevel, method: CountingMethod, expected: Vec<Rat>| {
        let actual: Vec<Rat> = assigned_weights(publication, level, method)
            .into_iter()
            .map(|(_, w)| w)
            .collect();
        assert_eq!(actual, expected, "{level} {method}");
    };
    let one = || rat_int(1);
    let zero = || rat_zero();

    expect(UnitLevel::Author, Full, vec![one(); 5]);
    expect(UnitLevel::Author, FracAuthor, vec![rat(1, 5); 5]);
    expect(
        UnitLevel::Author,
        FirstAuthor,
        vec![one(), zero(), zero(), zero(), zero()],
    );
    expect(
        UnitLevel::Author,
        CorrespondingAuthor,
        vec![zero(), zero(), zero(), one(), zero()],
    );

    expect(UnitLevel::Organization, Full, vec![one(); 4]);
    expect(UnitLevel::Organization, FracOrg, vec![rat(1, 4); 4]);
    expect(
        UnitLevel::Organization,
        FracAddress,
        vec![rat(2, 5), rat(1, 5), rat(1, 5), rat(1, 5)],
    );
    expect(
        UnitLevel::Organization,
        FracAuthor,
        vec![rat(2, 5), rat(2, 5), rat(1, 10), rat(1, 10)],
    );
    expect(
        UnitLevel::Organization,
        FirstAuthor,
        vec![one(), zero(), zero(), zero()],
    );
    expect(
        UnitLevel::Organization,
        CorrespondingAuthor,
        vec![zero(), one(), zero(), zero()],
    );

    expect(UnitLevel::Country, Full, vec![one(); 3]);
    expect(UnitLevel::Country, FracCountry, vec![rat(1, 3); 3]);
    expect(UnitLevel::Country, FracOrg, vec![rat(1, 4), rat(1, 2), rat(1, 4)]);
    expect(
        UnitLevel::Country,
        FracAddress,
        vec![rat(2, 5), rat(2, 5), rat(1, 5)],
    );
    expect(
        UnitLevel::Country,
        FracAuthor,
        vec![rat(2, 5), rat(1, 2), rat(1, 10)],
    );
    expect(UnitLevel::Country, FirstAuthor, vec![one(), zero(), zero()]);
    expect(
        UnitLevel::Country,
        CorrespondingAuthor,
        vec![zero(), one(), zero()],
    );

    // Display rounding shows exact thirds as 0.33.
    assert_eq!(format!("{:.2}", to_f64(&rat(1, 3))), "0.33");

    criterion.finish();
}

// --- Criterion 2 -----------------------------------------------------------

#[test]
fn criterion_02_single_field_mncs_example() {
    let criterion = Criterion::start(2, "single-field MNCS, world averages, and bonus", 1);
    let corpus = load("table6.jsonl");
    let scores = scores_for(&corpus, ScoreMode::Standard);

    let full = unit_indicators(&corpus, &scores, UnitLevel::Country, CountingMethod::Full).unwrap();
    let frac = unit_indicators(
        &corpus,
        &scores,
        UnitLevel::Country,
        CountingMethod::FracCountry,
    )
    .unwrap();
    let mncs = |rows: &[bibcount::UnitIndicatorRow], unit: &str| -> Rat {
        rows.iter().find(|r| r.unit == unit).unwrap().mncs.clone()
    };
    assert_eq!(mncs(&full, "country a"), rat(19, 15));
    assert_eq!(mncs(&full, "country b"), rat(11, 10));
    assert_eq!(mncs(&frac, "country a"), rat(28, 25));
    assert_eq!(mncs(&frac, "country b"), rat(4, 5));
    assert_eq!(world_average(&full, Indicator::Mncs).unwrap(), rat(6, 5));
    assert_eq!(world_average(&frac, Indicator::Mncs).unwrap(), rat_int(1));
    assert_eq!(
        fcb_direct(&bonus_input(
            &corpus,
            &scores,
            UnitLevel::Country,
            Indicator::Mncs
        ))
        .unwrap(),
        rat(1, 5)
    );
    criterion.finish();
}

// --- Criterion 3 -----------------------------------------------------------

#[test]
fn criterion_03_multi_field_example() {
    let criterion = Criterion::start(3, "two-field MNCS and per-field bonus", 1);
    let corpus = load("table7.jsonl");
    let stats = build_field_year_stats(&corpus, ScoreMode::Standard).unwrap();
    let scores = score_corpus(&corpus, &stats).unwrap();

    let frac = unit_indicators(
        &corpus,
        &scores,
        UnitLevel::Country,
        CountingMethod::FracCountry,
    )
    .unwrap();
    assert_eq!(frac.len(), 4);
    for row in &frac {
        assert_eq!(row.mncs, rat_int(1), "{}", row.unit);
    }

    let full = unit_indicators(&corpus, &scores, UnitLevel::Country, CountingMethod::Full).unwrap();
    for unit in ["country c", "country d"] {
        let row = full.iter().find(|r| r.unit == unit).unwrap();
        assert_eq!(row.mncs, rat(11, 10), "{unit}");
    }
    for unit in ["country a", "country b"] {
        let row = full.iter().find(|r| r.unit == unit).unwrap();
        assert_eq!(row.mncs, rat_int(1), "{unit}");
    }

    let outcome = fcb_breakdown(
        &corpus,
        &stats,
        &Grouping::Field,
        &[UnitLevel::Country],
        &[Indicator::Mncs],
    )
    .unwrap();
    let by_scope: BTreeMap<&str, &Rat> = outcome
        .reports
        .iter()
        .map(|r| (r.scope.as_str(), &r.fcb))
        .collect();
    assert_eq!(by_scope["X"], &rat_zero());
    assert_eq!(by_scope["Y"], &rat(1, 10));
    criterion.finish();
}

// --- Criterion 4 -----------------------------------------------------------

fn sim_config(
    fields: u32,
    years: u32,
    pubs_per_field_year: u32,
    beta: f64,
    coupling_level: UnitLevel,
    multi_field: bool,
    no_address_prob: f64,
) -> SimulatorConfig {
    SimulatorConfig {
        fields,
        years: YearRange {
            start: 2008,
            count: years,
        },
        pubs_per_field_year,
        authors_per_pub: Categorical {
            values: vec![1, 2, 3, 4, 7],
            probs: vec![0.25, 0.3, 0.2, 0.15, 0.1],
        },
        addresses_per_author: Categorical {
            values: vec![1, 2],
            probs: vec![0.8, 0.2],
        },
        fields_per_pub: if multi_field {
            Categorical {
                values: vec![1, 2],
                probs: vec![0.75, 0.25],
            }
        } else {
            Categorical::constant(1)
        },
        org_pool: 15,
        countries: 6,
        citation_model: CitationModel {
            base_rate: 5.0,
            beta,
            dispersion: 2.0,
            coupling_level,
        },
        reprint_prob: 0.6,
        explicit_corresponding_prob: 0.4,
        missing_link_prob: 0.15,
        no_address_prob,
    }
}

fn simulated(config: &SimulatorConfig, seed: u64) -> Vec<ResolvedPublication> {
    bibcount::sim::simulate_corpus(config, seed)
        .unwrap()
        .into_iter()
        .map(resolve)
        .collect()
}

#[test]
fn criterion_04_bonus_route_equivalence() {
    let criterion = Criterion::start(
        4,
        "direct and unit-average bonus routes agree on 100 corpora",
        120,
    );
    let mut corpora_checked = 0usize;
    for seed in 0..100u64 {
        // Vary shape and coupling across seeds; two larger corpora reach
        // 10^4 publications.
        let (fields, years, per_cell) = match seed {
            0 => (4, 5, 500),
            1 => (2, 2, 2500),
            _ => {
                let sizes = [30, 60, 90, 150, 240];
                (2, 2, sizes[(seed as usize) % sizes.len()])
            }
        };
        let beta = [0.0, 0.4, 0.8, -0.3][(seed as usize) % 4];
        let coupling = UnitLevel::ALL[(seed as usize) % 3];
        let config = sim_config(fields, years, per_cell, beta, coupling, true, 0.0);
        let corpus = simulated(&config, seed);
        let scores = scores_for(&corpus, ScoreMode::Standard);

        for level in UnitLevel::ALL {
            for indicator in Indicator::ALL {
                let input = bonus_input(&corpus, &scores, level, indicator);
                let direct = fcb_direct(&input).unwrap();
                let float_entries: Vec<(u64, f64)> = input
                    .publications
                    .iter()
                    .map(|e| (e.m, to_f64(&e.score)))
                    .collect();
                let direct_f64 = fcb_direct_f64(&float_entries).unwrap();

                for reference in reference_methods(level) {
                    let via =
                        fcb_via_unit_averages(&corpus, &scores, level, reference, indicator)
                            .unwrap();
                    // Exact in rational arithmetic, for every reference
                    // method: the choice of fractional variant (or first or
                    // corresponding author counting) makes no difference.
                    assert_eq!(via, direct, "seed {seed} {level} {reference} {indicator}");

                    let via_f64 = fcb_via_unit_averages_f64(
                        &corpus, &scores, level, reference, indicator,
                    )
                    .unwrap();
                    assert!(
                        (via_f64 - direct_f64).abs() <= 1e-9,
                        "float routes diverge: seed {seed} {level} {reference} {indicator}: {via_f64} vs {direct_f64}"
                    );
                }
            }
        }
        corpora_checked += 1;
    }
    assert_eq!(corpora_checked, 100);
    criterion.finish();
}

// --- Criterion 5 -----------------------------------------------------------

#[test]
fn criterion_05_weak_and_strong_normalization() {
    let criterion = Criterion::start(
        5,
        "weak/strong normalization, with exclusion accounting",
        120,
    );

    // Fully assignable corpora: every property holds exactly.
    for seed in [3u64, 17, 40] {
        let config = sim_config(3, 2, 150, 0.5, UnitLevel::Country, true, 0.0);
        let corpus = simulated(&config, seed);
        let stats = build_field_year_stats(&corpus, ScoreMode::Standard).unwrap();
        let scores = score_corpus(&corpus, &stats).unwrap();

        // Weak normalization per (field, year) cell, on per-category scores.
        let mut cells: BTreeMap<(String, i32), (Rat, Rat, Rat)> = BTreeMap::new();
        for publication in &corpus {
            for cat in category_scores(&publication.record, &stats).unwrap() {
                let acc = cells
                    .entry((cat.field.clone(), publication.record.year))
                    .or_insert_with(|| (rat_zero(), rat_zero(), rat_zero()));
                acc.0 += &cat.fraction;
                acc.1 += &cat.fraction * &cat.ratio;
                acc.2 += &cat.fraction * &cat.top10;
            }
        }
        for ((field, year), (mass, ncs_mass, top_mass)) in &cells {
            assert_eq!(&(ncs_mass / mass), &rat_int(1), "ncs mean {field} {year}");
            assert_eq!(&(top_mass / mass), &rat(1, 10), "top10 mean {field} {year}");
        }

        // Strong normalization: world averages are exact for every method
        // assigning total weight one, at every level, whole corpus and per
        // field-year cell.
        for level in UnitLevel::ALL {
            for method in reference_methods(level) {
                let rows = unit_indicators(&corpus, &scores, level, method).unwrap();
                assert_eq!(
                    world_average(&rows, Indicator::Mncs).unwrap(),
                    rat_int(1),
                    "world mncs {level} {method}"
                );
                assert_eq!(
                    world_average(&rows, Indicator::PpTop10).unwrap(),
                    rat(1, 10),
                    "world pptop10 {level} {method}"
                );
            }
        }
        for (field, year) in cells.keys().take(3) {
            for method in [CountingMethod::FracAuthor, CountingMethod::FracCountry] {
                let rows = field_year_unit_indicators(
                    &corpus,
                    &stats,
                    UnitLevel::Country,
                    method,
                    field,
                    *year,
                )
                .unwrap();
                assert_eq!(
                    world_average(&rows, Indicator::Mncs).unwrap(),
                    rat_int(1),
                    "cell world mncs {field} {year} {method}"
                );
                assert_eq!(
                    world_average(&rows, Indicator::PpTop10).unwrap(),
                    rat(1, 10),
                    "cell world pptop10 {field} {year} {method}"
                );
            }
        }
    }

    // With unassignable publications injected, the fractional world average
    // moves away from one by exactly the excluded publications' score mass.
    let config = sim_config(3, 2, 200, 0.5, UnitLevel::Country, false, 0.12);
    let corpus = simulated(&config, 23);
    let scores = scores_for(&corpus, ScoreMode::Standard);
    let excluded: Vec<&ResolvedPublication> = corpus.iter().filter(|p| !p.assignable).collect();
    assert!(
        !excluded.is_empty(),
        "injection produced no unassignable publications"
    );

    for indicator in Indicator::ALL {
        let nominal = match indicator {
            Indicator::Mncs => rat_int(1),
            Indicator::PpTop10 => rat(1, 10),
        };
        let rows = unit_indicators(
            &corpus,
            &scores,
            UnitLevel::Country,
            CountingMethod::FracCountry,
        )
        .unwrap();
        let average = world_average(&rows, indicator).unwrap();
        // Expected: (n * nominal - sum of excluded scores) / (n - excluded).
        let n = rat_int(corpus.len() as u64);
        let excluded_mass: Rat = excluded
            .iter()
            .map(|p| {
                let s = &scores[p.id()];
                match indicator {
                    Indicator::Mncs => s.ncs.clone(),
                    Indicator::PpTop10 => s.top10.clone(),
                }
            })
            .fold(rat_zero(), |a, v| a + v);
        let expected =
            (&n * &nominal - excluded_mass) / (n - rat_int(excluded.len() as u64));
        assert_eq!(average, expected, "exclusion accounting {indicator}");
        assert_ne!(average, nominal, "injection should move the average");
    }

    criterion.finish();
}

// --- Criterion 6 -----------------------------------------------------------

#[test]
fn criterion_06_weight_sum_and_dominance() {
    let criterion = Criterion::start(6, "weight sums and full-counting dominance (fuzzed)", 60);
    let mut publications_checked = 0usize;
    for seed in 200..212u64 {
        let config = sim_config(2, 2, 120, 0.3, UnitLevel::Organization, true, 0.05);
        let corpus = simulated(&config, seed);
        for publication in &corpus {
            for level in UnitLevel::ALL {
                let full = match compute_weights(publication, level, CountingMethod::Full).unwrap()
                {
                    Weights::Assigned(v) => v,
                    Weights::Unassignable => continue,
                };
                let full_map: BTreeMap<&str, &Rat> = full
                    .weights
                    .iter()
                    .map(|(u, w)| (u.as_str(), w))
                    .collect();
                for method in CountingMethod::valid_methods(level) {
                    let Weights::Assigned(vector) =
                        compute_weights(publication, level, method).unwrap()
                    else {
                        continue;
                    };
                    if method.sums_to_one() {
                        assert_eq!(
                            vector.total(),
                            rat_int(1),
                            "{} {level} {method}",
                            publication.id()
                        );
                    }
                    for (unit, weight) in &vector.weights {
                        assert!(
                            full_map[unit.as_str()] >= weight,
                            "dominance violated: {} {level} {method} {unit}",
                            publication.id()
                        );
                    }
                }
            }
            publications_checked += 1;
        }
    }
    assert!(publications_checked >= 5000);
    criterion.finish();
}

// --- Criterion 7 -----------------------------------------------------------

#[test]
fn criterion_07_bonus_drivers() {
    let criterion = Criterion::start(7, "bonus drivers: zero, vanishing, and positive regimes", 180);

    // (a) Single-author, single-address corpora: the bonus is exactly zero
    // at every level.
    let mut config = sim_config(2, 2, 250, 0.7, UnitLevel::Country, false, 0.0);
    config.authors_per_pub = Categorical::constant(1);
    config.addresses_per_author = Categorical::constant(1);
    config.missing_link_prob = 0.0;
    let corpus = simulated(&config, 5);
    let scores = scores_for(&corpus, ScoreMode::Standard);
    for level in UnitLevel::ALL {
        let input = bonus_input(&corpus, &scores, level, Indicator::Mncs);
        assert_eq!(fcb_direct(&input).unwrap(), rat_zero(), "all-m-one {level}");
    }

    // (b) Citation rate independent of the unit count: at n = 10^5 the
    // bonus averaged over ten seeds stays under 2% of the reference
    // average.
    let config = sim_config(4, 5, 5000, 0.0, UnitLevel::Country, false, 0.0);
    let mut total_abs = 0.0;
    let mut total = 0.0;
    let mut reference_avg = 0.0;
    for seed in 0..10u64 {
        let corpus = simulated(&config, 1000 + seed);
        assert_eq!(corpus.len(), 100_000);
        let scores = scores_for(&corpus, ScoreMode::Standard);
        let input = bonus_input(&corpus, &scores, UnitLevel::Country, Indicator::Mncs);
        let (first, second) = fcb_terms(&input).unwrap();
        let fcb = to_f64(&(first - &second));
        total_abs += fcb.abs();
        total += fcb;
        reference_avg += to_f64(&second);
    }
    let mean_abs = total_abs / 10.0;
    let mean_reference = reference_avg / 10.0;
    assert!(
        mean_abs < 0.02 * mean_reference,
        "uncoupled bonus too large: mean |FCB| = {mean_abs}, reference = {mean_reference}"
    );
    assert!(
        (total / 10.0).abs() < 0.02 * mean_reference,
        "uncoupled bonus is biased: mean FCB = {}",
        total / 10.0
    );

    // (c) Citation rate strictly increasing in the country count: positive
    // bonus at the country level, every seed.
    let config = sim_config(2, 2, 2000, 1.0, UnitLevel::Country, false, 0.0);
    for seed in [1u64, 2, 3] {
        let corpus = simulated(&config, seed);
        let scores = scores_for(&corpus, ScoreMode::Standard);
        let input = bonus_input(&corpus, &scores, UnitLevel::Country, Indicator::Mncs);
        let fcb = fcb_direct(&input).unwrap();
        assert!(
            fcb > rat_zero(),
            "coupled bonus not positive at seed {seed}: {fcb}"
        );
    }

    criterion.finish();
}

// --- Criterion 8 -----------------------------------------------------------

#[test]
fn criterion_08_multiplicative_mode() {
    let criterion = Criterion::start(8, "multiplicative counting reconciles full assignment", 60);
    for (seed, level) in [(31u64, UnitLevel::Country), (32, UnitLevel::Organization)] {
        let config = sim_config(3, 2, 150, 0.6, level, true, 0.0);
        let corpus = simulated(&config, seed);
        let stats = build_field_year_stats(&corpus, ScoreMode::Multiplicative(level)).unwrap();
        let scores = score_corpus(&corpus, &stats).unwrap();

        // m-weighted per-cell mean of the multiplicative scores is one.
        let mut cells: BTreeMap<(String, i32), (Rat, Rat)> = BTreeMap::new();
        for publication in &corpus {
            let m = rat_int(unit_count(publication, level) as u64);
            for cat in category_scores(&publication.record, &stats).unwrap() {
                let mass = &cat.fraction * &m;
                let acc = cells
                    .entry((cat.field.clone(), publication.record.year))
                    .or_insert_with(|| (rat_zero(), rat_zero()));
                acc.0 += &mass;
                acc.1 += &mass * &cat.ratio;
            }
        }
        for ((field, year), (mass, scored)) in cells {
            assert_eq!(scored / mass, rat_int(1), "cell {field} {year}");
        }

        // Full-counting world averages against multiplicative scores are
        // exactly the nominal values.
        let rows = unit_indicators(&corpus, &scores, level, CountingMethod::Full).unwrap();
        assert_eq!(
            world_average(&rows, Indicator::Mncs).unwrap(),
            rat_int(1),
            "full-counting world mncs, multiplicative mode, {level}"
        );
        assert_eq!(
            world_average(&rows, Indicator::PpTop10).unwrap(),
            rat(1, 10),
            "full-counting world pptop10, multiplicative mode, {level}"
        );
    }
    criterion.finish();
}

// --- Criterion 9 -----------------------------------------------------------

#[test]
fn criterion_09_cli_determinism_and_golden_files() {
    let criterion = Criterion::start(9, "CLI determinism and golden files", 60);
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap();
    let run = |args: &[&str]| -> Vec<u8> {
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_bibcount"))
            .args(args)
            .current_dir(&root)
            .output()
            .expect("binary runs");
        assert!(
            output.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&output.stderr)
        );
        output.stdout
    };
    let golden = |name: &str| -> Vec<u8> {
        std::fs::read(
            PathBuf::from(env!("CARGO_MANIFEST_DIR"))
                .join("tests/golden")
                .join(name),
        )
        .unwrap()
    };

    let cases: Vec<(Vec<&str>, &str)> = vec![
        (
            vec![
                "weights",
                "--corpus",
                "data/worked_example.jsonl",
                "--level",
                "author",
                "--level",
                "organization",
                "--level",
                "country",
            ],
            "worked_example_weights.csv",
        ),
        (
            vec![
                "indicators",
                "--corpus",
                "data/table6.jsonl",
                "--level",
                "country",
                "--method",
                "full",
                "--method",
                "frac-country",
            ],
            "table6_indicators.csv",
        ),
        (
            vec![
                "bonus",
                "--corpus",
                "data/table7.jsonl",
                "--level",
                "country",
                "--group-by",
                "field",
            ],
            "table7_bonus_by_field.csv",
        ),
    ];
    for (args, golden_name) in cases {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "repeated runs differ for {args:?}");
        assert_eq!(first, golden(golden_name), "golden mismatch: {golden_name}");
    }
    criterion.finish();
}
