//! C ABI for the bibcount library.
//!
//! Handles are opaque; every fallible call returns a [`BcStatus`] and leaves
//! a message retrievable with [`bc_last_error_message`] on failure. Strings
//! returned through out-parameters are owned by the caller and must be
//! released with [`bc_string_free`]. Indicator values cross the boundary as
//! doubles; exact rational arithmetic stays behind it.

use std::cell::RefCell;
use std::ffi::{c_char, c_double, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use bibcount::bonus::{bonus_input, fcb_terms, fcb_via_unit_averages};
use bibcount::corpus::{default_doc_filter, load_corpus, resolve, ResolvedPublication, UnitLevel};
use bibcount::counting::{compute_weights, CountingMethod, Weights};
use bibcount::indicators::{unit_indicators, Indicator};
use bibcount::normalization::{build_field_year_stats, score_corpus, ScoreMap, ScoreMode, StatsTable};
use bibcount::rational::to_f64;
use bibcount::report::{indicators_table, stats_csv_table, table_to_csv_string, weights_table};
use bibcount::sim::{simulate_corpus, SimulatorConfig};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    Validation = 5,
    Usage = 6,
    Compute = 7,
    Panic = 8,
}

/// Unit of analysis.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcLevel {
    Author = 0,
    Organization = 1,
    Country = 2,
}

impl From<BcLevel> for UnitLevel {
    fn from(level: BcLevel) -> Self {
        match level {
            BcLevel::Author => UnitLevel::Author,
            BcLevel::Organization => UnitLevel::Organization,
            BcLevel::Country => UnitLevel::Country,
        }
    }
}

/// Counting method.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcMethod {
    Full = 0,
    FracAuthor = 1,
    FracAddress = 2,
    FracOrg = 3,
    FracCountry = 4,
    FirstAuthor = 5,
    CorrespondingAuthor = 6,
}

impl From<BcMethod> for CountingMethod {
    fn from(method: BcMethod) -> Self {
        match method {
            BcMethod::Full => CountingMethod::Full,
            BcMethod::FracAuthor => CountingMethod::FracAuthor,
            BcMethod::FracAddress => CountingMethod::FracAddress,
            BcMethod::FracOrg => CountingMethod::FracOrg,
            BcMethod::FracCountry => CountingMethod::FracCountry,
            BcMethod::FirstAuthor => CountingMethod::FirstAuthor,
            BcMethod::CorrespondingAuthor => CountingMethod::CorrespondingAuthor,
        }
    }
}

/// Citation impact indicator.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcIndicator {
    Mncs = 0,
    PpTop10 = 1,
}

impl From<BcIndicator> for Indicator {
    fn from(indicator: BcIndicator) -> Self {
        match indicator {
            BcIndicator::Mncs => Indicator::Mncs,
            BcIndicator::PpTop10 => Indicator::PpTop10,
        }
    }
}

/// Normalization mode.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcMode {
    Standard = 0,
    Multiplicative = 1,
}

/// An opaque, validated, resolved corpus.
pub struct BcCorpus {
    publications: Vec<ResolvedPublication>,
}

/// Opaque normalized scores plus the reference statistics they came from.
pub struct BcScores {
    stats: StatsTable,
    scores: ScoreMap,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = message.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).ok();
    });
}

/// Message describing the most recent failure on this thread, or null.
/// The pointer is borrowed; it stays valid until the next failing call on
/// the same thread.
#[no_mangle]
pub extern "C" fn bc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn bc_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

fn guarded(body: impl FnOnce() -> BcStatus) -> BcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            BcStatus::Panic
        }
    }
}

/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
unsafe fn read_path<'a>(path: *const c_char) -> Result<&'a Path, BcStatus> {
    if path.is_null() {
        set_error("path is null");
        return Err(BcStatus::NullPointer);
    }
    match CStr::from_ptr(path).to_str() {
        Ok(s) => Ok(Path::new(s)),
        Err(_) => {
            set_error("path is not valid UTF-8");
            Err(BcStatus::InvalidUtf8)
        }
    }
}

/// Load, validate, and resolve a corpus file (one JSON record per line,
/// document types article and review). On success `*out` owns the corpus;
/// release it with [`bc_corpus_free`].
///
/// # Safety
/// `path` must point to a NUL-terminated string and `out` to a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn bc_corpus_load(
    path: *const c_char,
    out: *mut *mut BcCorpus,
) -> BcStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return BcStatus::NullPointer;
        }
        let path = match read_path(path) {
            Ok(p) => p,
            Err(status) => return status,
        };
        let load = match load_corpus(path, &default_doc_filter()) {
            Ok(load) => load,
            Err(e) => {
                let status = match &e {
                    bibcount::corpus::CorpusError::Io(_) => BcStatus::Io,
                    bibcount::corpus::CorpusError::Parse { .. } => BcStatus::Parse,
                };
                set_error(e.to_string());
                return status;
            }
        };
        if load.error_count() > 0 {
            let details: Vec<String> = load
                .issues
                .iter()
                .filter(|i| i.severity == bibcount::corpus::Severity::Error)
                .map(|i| i.to_string())
                .collect();
            set_error(details.join("; "));
            return BcStatus::Validation;
        }
        let corpus = BcCorpus {
            publications: load.records.into_iter().map(resolve).collect(),
        };
        *out = Box::into_raw(Box::new(corpus));
        BcStatus::Ok
    })
}

/// Number of publications in the corpus; zero if `corpus` is null.
///
/// # Safety
/// `corpus` must be null or a pointer from [`bc_corpus_load`].
#[no_mangle]
pub unsafe extern "C" fn bc_corpus_len(corpus: *const BcCorpus) -> usize {
    if corpus.is_null() {
        return 0;
    }
    (*corpus).publications.len()
}

/// # Safety
/// `corpus` must be null or a pointer from [`bc_corpus_load`], not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn bc_corpus_free(corpus: *mut BcCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

/// Build field-year reference statistics and score every publication. In
/// multiplicative mode, `level` selects the unit count entering the
/// reference averages; it is ignored in standard mode.
///
/// # Safety
/// `corpus` must come from [`bc_corpus_load`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_scores_compute(
    corpus: *const BcCorpus,
    mode: BcMode,
    level: BcLevel,
    out: *mut *mut BcScores,
) -> BcStatus {
    guarded(|| {
        if corpus.is_null() || out.is_null() {
            set_error("corpus or out pointer is null");
            return BcStatus::NullPointer;
        }
        let corpus = &*corpus;
        let score_mode = match mode {
            BcMode::Standard => ScoreMode::Standard,
            BcMode::Multiplicative => ScoreMode::Multiplicative(level.into()),
        };
        let stats = match build_field_year_stats(&corpus.publications, score_mode) {
            Ok(stats) => stats,
            Err(e) => {
                set_error(e.to_string());
                return BcStatus::Compute;
            }
        };
        let scores = match score_corpus(&corpus.publications, &stats) {
            Ok(scores) => scores,
            Err(e) => {
                set_error(e.to_string());
                return BcStatus::Compute;
            }
        };
        *out = Box::into_raw(Box::new(BcScores { stats, scores }));
        BcStatus::Ok
    })
}

/// # Safety
/// `scores` must be null or a pointer from [`bc_scores_compute`], not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn bc_scores_free(scores: *mut BcScores) {
    if !scores.is_null() {
        drop(Box::from_raw(scores));
    }
}

/// The full counting bonus at a level, by the direct formula, as a double.
/// `reference_average` receives the second term (the indicator's average
/// under any unit-weight-one method).
///
/// # Safety
/// All pointers must be valid; `fcb` and `reference_average` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn bc_fcb_direct(
    corpus: *const BcCorpus,
    scores: *const BcScores,
    level: BcLevel,
    indicator: BcIndicator,
    fcb: *mut c_double,
    reference_average: *mut c_double,
) -> BcStatus {
    guarded(|| {
        if corpus.is_null() || scores.is_null() || fcb.is_null() || reference_average.is_null() {
            set_error("null pointer argument");
            return BcStatus::NullPointer;
        }
        let corpus = &*corpus;
        let scores = &*scores;
        let input = bonus_input(
            &corpus.publications,
            &scores.scores,
            level.into(),
            indicator.into(),
        );
        match fcb_terms(&input) {
            Ok((first, second)) => {
                *fcb = to_f64(&(&first - &second));
                *reference_average = to_f64(&second);
                BcStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                BcStatus::Compute
            }
        }
    })
}

/// The full counting bonus computed by differencing full-counting and
/// reference-method world averages; agrees with [`bc_fcb_direct`].
///
/// # Safety
/// All pointers must be valid; `fcb` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_fcb_via_unit_averages(
    corpus: *const BcCorpus,
    scores: *const BcScores,
    level: BcLevel,
    reference: BcMethod,
    indicator: BcIndicator,
    fcb: *mut c_double,
) -> BcStatus {
    guarded(|| {
        if corpus.is_null() || scores.is_null() || fcb.is_null() {
            set_error("null pointer argument");
            return BcStatus::NullPointer;
        }
        let corpus = &*corpus;
        let scores = &*scores;
        let reference: CountingMethod = reference.into();
        if !reference.valid_at(level.into()) || reference == CountingMethod::Full {
            set_error(format!(
                "'{reference}' cannot serve as the reference method at this level"
            ));
            return BcStatus::Usage;
        }
        match fcb_via_unit_averages(
            &corpus.publications,
            &scores.scores,
            level.into(),
            reference,
            indicator.into(),
        ) {
            Ok(value) => {
                *fcb = to_f64(&value);
                BcStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                BcStatus::Compute
            }
        }
    })
}

fn string_out(out: *mut *mut c_char, value: String) -> BcStatus {
    match CString::new(value) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            BcStatus::Ok
        }
        Err(_) => {
            set_error("output contains an interior NUL byte");
            BcStatus::Compute
        }
    }
}

/// Assignment weights of every publication at a level under a method, as a
/// CSV string (columns publication_id, level, method, unit, weight).
///
/// # Safety
/// `corpus` must come from [`bc_corpus_load`]; `out` must be writable. Free
/// the string with [`bc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn bc_weights_csv(
    corpus: *const BcCorpus,
    level: BcLevel,
    method: BcMethod,
    out: *mut *mut c_char,
) -> BcStatus {
    guarded(|| {
        if corpus.is_null() || out.is_null() {
            set_error("null pointer argument");
            return BcStatus::NullPointer;
        }
        let corpus = &*corpus;
        let method: CountingMethod = method.into();
        let level: UnitLevel = level.into();
        if !method.valid_at(level) {
            set_error(format!("method '{method}' is not defined at the {level} level"));
            return BcStatus::Usage;
        }
        let mut vectors = Vec::new();
        for publication in &corpus.publications {
            match compute_weights(publication, level, method) {
                Ok(Weights::Assigned(vector)) => vectors.push(vector),
                Ok(Weights::Unassignable) => {}
                Err(e) => {
                    set_error(e.to_string());
                    return BcStatus::Usage;
                }
            }
        }
        match table_to_csv_string(&weights_table(&vectors)) {
            Ok(csv) => string_out(out, csv),
            Err(e) => {
                set_error(e.to_string());
                BcStatus::Compute
            }
        }
    })
}

/// Per-unit indicator rows at a level under a method, as a CSV string
/// (columns level, method, unit, p, mncs, pp_top10).
///
/// # Safety
/// Handles must come from this library; `out` must be writable. Free the
/// string with [`bc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn bc_indicators_csv(
    corpus: *const BcCorpus,
    scores: *const BcScores,
    level: BcLevel,
    method: BcMethod,
    out: *mut *mut c_char,
) -> BcStatus {
    guarded(|| {
        if corpus.is_null() || scores.is_null() || out.is_null() {
            set_error("null pointer argument");
            return BcStatus::NullPointer;
        }
        let corpus = &*corpus;
        let scores = &*scores;
        let method: CountingMethod = method.into();
        let level: UnitLevel = level.into();
        if !method.valid_at(level) {
            set_error(format!("method '{method}' is not defined at the {level} level"));
            return BcStatus::Usage;
        }
        match unit_indicators(&corpus.publications, &scores.scores, level, method) {
            Ok(rows) => match table_to_csv_string(&indicators_table(&rows)) {
                Ok(csv) => string_out(out, csv),
                Err(e) => {
                    set_error(e.to_string());
                    BcStatus::Compute
                }
            },
            Err(e) => {
                set_error(e.to_string());
                BcStatus::Compute
            }
        }
    })
}

/// The field-year reference statistics behind a score set, as a CSV string
/// (columns field, year, pub_count, mean_citations, top10_threshold,
/// top10_tie_fraction).
///
/// # Safety
/// `scores` must come from [`bc_scores_compute`]; `out` must be writable.
/// Free the string with [`bc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn bc_stats_csv(scores: *const BcScores, out: *mut *mut c_char) -> BcStatus {
    guarded(|| {
        if scores.is_null() || out.is_null() {
            set_error("null pointer argument");
            return BcStatus::NullPointer;
        }
        let scores = &*scores;
        match table_to_csv_string(&stats_csv_table(&scores.stats)) {
            Ok(csv) => string_out(out, csv),
            Err(e) => {
                set_error(e.to_string());
                BcStatus::Compute
            }
        }
    })
}

/// Generate a deterministic synthetic corpus from a JSON generator
/// configuration and write it to `out_path` (one record per line).
///
/// # Safety
/// `config_json` and `out_path` must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn bc_simulate_to_file(
    config_json: *const c_char,
    seed: u64,
    out_path: *const c_char,
) -> BcStatus {
    guarded(|| {
        if config_json.is_null() {
            set_error("config is null");
            return BcStatus::NullPointer;
        }
        let config_text = match CStr::from_ptr(config_json).to_str() {
            Ok(s) => s,
            Err(_) => {
                set_error("config is not valid UTF-8");
                return BcStatus::InvalidUtf8;
            }
        };
        let path = match read_path(out_path) {
            Ok(p) => p,
            Err(status) => return status,
        };
        let config: SimulatorConfig = match serde_json::from_str(config_text) {
            Ok(config) => config,
            Err(e) => {
                set_error(format!("bad generator config: {e}"));
                return BcStatus::Parse;
            }
        };
        let corpus = match simulate_corpus(&config, seed) {
            Ok(corpus) => corpus,
            Err(e) => {
                set_error(e.to_string());
                return BcStatus::Usage;
            }
        };
        let mut lines = String::new();
        for record in &corpus {
            match serde_json::to_string(record) {
                Ok(line) => {
                    lines.push_str(&line);
                    lines.push('\n');
                }
                Err(e) => {
                    set_error(e.to_string());
                    return BcStatus::Compute;
                }
            }
        }
        if let Err(e) = std::fs::write(path, lines) {
            set_error(e.to_string());
            return BcStatus::Io;
        }
        BcStatus::Ok
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned through a `char**`
/// out-parameter of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
