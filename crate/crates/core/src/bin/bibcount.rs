//! Batch CLI: validate corpora, compute counting-method weights, indicator
//! tables, comparison and profile reports, full-counting-bonus reports, and
//! synthetic corpora.
//!
//! Exit codes: 0 success, 2 configuration error, 3 corpus validation error,
//! 4 computation error.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use bibcount::bonus::{fcb_breakdown, Grouping};
use bibcount::corpus::{
    load_corpus, resolve, DocType, DocTypeFilter, ResolvedPublication, Severity, UnitLevel,
};
use bibcount::counting::{compute_weights, CountingMethod, Weights};
use bibcount::indicators::{comparison_table, profile, unit_indicators, Indicator};
use bibcount::normalization::{build_field_year_stats, score_corpus, ScoreMode, StatsTable};
use bibcount::report::{
    bonus_table, comparison_report, indicators_table, profile_table, stats_csv_table,
    weights_table, write_table, OutputFormat, Provenance, Table,
};
use bibcount::sim::{simulate_corpus, SimulatorConfig};

#[derive(Parser)]
#[command(
    name = "bibcount",
    version,
    about = "Counting-method weights, field-normalized indicators, and the full counting bonus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a corpus file against the schema and report every issue.
    Validate(ValidateArgs),
    /// Per-publication assignment weights under the counting methods.
    Weights(WeightsArgs),
    /// Per-unit weighted publication counts, MNCS, and PP-top-10%.
    Indicators(IndicatorsArgs),
    /// Side-by-side indicators under several methods, with decreases
    /// against a baseline.
    Compare(CompareArgs),
    /// Full counting bonus reports, optionally grouped.
    Bonus(BonusArgs),
    /// Distribution of publications over their unit counts, with mean
    /// scores per bucket.
    Profile(ProfileArgs),
    /// Generate a deterministic synthetic corpus.
    Simulate(SimulateArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum LevelArg {
    Author,
    Organization,
    Country,
}

impl From<LevelArg> for UnitLevel {
    fn from(level: LevelArg) -> Self {
        match level {
            LevelArg::Author => UnitLevel::Author,
            LevelArg::Organization => UnitLevel::Organization,
            LevelArg::Country => UnitLevel::Country,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Full,
    FracAuthor,
    FracAddress,
    FracOrg,
    FracCountry,
    FirstAuthor,
    CorrespondingAuthor,
}

impl From<MethodArg> for CountingMethod {
    fn from(method: MethodArg) -> Self {
        match method {
            MethodArg::Full => CountingMethod::Full,
            MethodArg::FracAuthor => CountingMethod::FracAuthor,
            MethodArg::FracAddress => CountingMethod::FracAddress,
            MethodArg::FracOrg => CountingMethod::FracOrg,
            MethodArg::FracCountry => CountingMethod::FracCountry,
            MethodArg::FirstAuthor => CountingMethod::FirstAuthor,
            MethodArg::CorrespondingAuthor => CountingMethod::CorrespondingAuthor,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum IndicatorArg {
    Mncs,
    Pptop10,
}

impl From<IndicatorArg> for Indicator {
    fn from(indicator: IndicatorArg) -> Self {
        match indicator {
            IndicatorArg::Mncs => Indicator::Mncs,
            IndicatorArg::Pptop10 => Indicator::PpTop10,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Standard,
    Multiplicative,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(format: FormatArg) -> Self {
        match format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum DocTypeArg {
    Article,
    Review,
    Other,
}

impl From<DocTypeArg> for DocType {
    fn from(doc_type: DocTypeArg) -> Self {
        match doc_type {
            DocTypeArg::Article => DocType::Article,
            DocTypeArg::Review => DocType::Review,
            DocTypeArg::Other => DocType::Other,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GroupByArg {
    Field,
    Year,
    BroadField,
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus file, one JSON record per line.
    #[arg(long)]
    corpus: PathBuf,
    /// Document types to keep (default: article and review).
    #[arg(long = "doc-type", value_enum)]
    doc_types: Vec<DocTypeArg>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
}

#[derive(Args)]
struct WeightsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Unit level; repeatable.
    #[arg(long, value_enum, required = true)]
    level: Vec<LevelArg>,
    /// Counting method; repeatable (default: every method valid at the
    /// level).
    #[arg(long, value_enum)]
    method: Vec<MethodArg>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct IndicatorsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, value_enum, required = true)]
    level: Vec<LevelArg>,
    #[arg(long, value_enum)]
    method: Vec<MethodArg>,
    #[arg(long, value_enum, default_value = "standard")]
    mode: ModeArg,
    /// Keep only the n units with the most weighted publications.
    #[arg(long)]
    top_n: Option<usize>,
    /// Also write the field-year reference statistics to this file.
    #[arg(long)]
    stats_out: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, value_enum)]
    level: LevelArg,
    /// Counting methods to compare; at least two.
    #[arg(long, value_enum, required = true)]
    method: Vec<MethodArg>,
    #[arg(long, value_enum, default_value = "full")]
    baseline: MethodArg,
    #[arg(long, value_enum, default_value = "standard")]
    mode: ModeArg,
    #[arg(long)]
    top_n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BonusArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Unit level; repeatable (default: all three).
    #[arg(long, value_enum)]
    level: Vec<LevelArg>,
    /// Indicator; repeatable (default: both).
    #[arg(long, value_enum)]
    indicator: Vec<IndicatorArg>,
    #[arg(long, value_enum)]
    group_by: Option<GroupByArg>,
    /// JSON object mapping field ids to broad field names; required with
    /// --group-by broad-field.
    #[arg(long)]
    broad_field_map: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "standard")]
    mode: ModeArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, value_enum)]
    level: Vec<LevelArg>,
    #[arg(long, value_enum, default_value = "standard")]
    mode: ModeArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SimulateArgs {
    /// Generator configuration file (JSON).
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Corpus file to write.
    #[arg(long)]
    out: PathBuf,
}

enum AppError {
    Config(String),
    CorpusValidation(String),
    Compute(String),
}

impl AppError {
    fn exit_code(&self) -> i32 {
        match self {
            AppError::Config(_) => 2,
            AppError::CorpusValidation(_) => 3,
            AppError::Compute(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Config(m) | AppError::CorpusValidation(m) | AppError::Compute(m) => m,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(cli) {
        eprintln!("error: {}", error.message());
        std::process::exit(error.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Validate(args) => run_validate(args),
        Command::Weights(args) => run_weights(args),
        Command::Indicators(args) => run_indicators(args),
        Command::Compare(args) => run_compare(args),
        Command::Bonus(args) => run_bonus(args),
        Command::Profile(args) => run_profile(args),
        Command::Simulate(args) => run_simulate(args),
    }
}

fn doc_filter(args: &CorpusArgs) -> DocTypeFilter {
    if args.doc_types.is_empty() {
        bibcount::corpus::default_doc_filter()
    } else {
        args.doc_types.iter().map(|&d| DocType::from(d)).collect()
    }
}

fn corpus_hash(path: &Path) -> Result<String, AppError> {
    let mut file = File::open(path)
        .map_err(|e| AppError::CorpusValidation(format!("cannot open {}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    let mut buffer = [0u8; 64 * 1024];
    loop {
        let n = file.read(&mut buffer).map_err(|e| {
            AppError::CorpusValidation(format!("cannot read {}: {e}", path.display()))
        })?;
        if n == 0 {
            break;
        }
        hasher.update(&buffer[..n]);
    }
    Ok(format!("{:x}", hasher.finalize()))
}

/// Load, validate, and resolve a corpus. Validation errors abort with exit
/// code 3; warnings go to stderr.
fn load_resolved(args: &CorpusArgs) -> Result<(Vec<ResolvedPublication>, String), AppError> {
    let hash = corpus_hash(&args.corpus)?;
    let load = load_corpus(&args.corpus, &doc_filter(args))
        .map_err(|e| AppError::CorpusValidation(e.to_string()))?;
    let mut errors = 0usize;
    for issue in &load.issues {
        eprintln!("{issue}");
        if issue.severity == Severity::Error {
            errors += 1;
        }
    }
    if errors > 0 {
        return Err(AppError::CorpusValidation(format!(
            "{errors} validation error(s) in {}",
            args.corpus.display()
        )));
    }
    Ok((load.records.into_iter().map(resolve).collect(), hash))
}

fn levels_of(args: &[LevelArg], default_all: bool) -> Vec<UnitLevel> {
    let mut levels: Vec<UnitLevel> = if args.is_empty() && default_all {
        UnitLevel::ALL.to_vec()
    } else {
        args.iter().map(|&l| UnitLevel::from(l)).collect()
    };
    levels.sort();
    levels.dedup();
    levels
}

fn score_mode(mode: ModeArg, levels: &[UnitLevel]) -> Result<ScoreMode, AppError> {
    match mode {
        ModeArg::Standard => Ok(ScoreMode::Standard),
        ModeArg::Multiplicative => {
            if levels.len() != 1 {
                return Err(AppError::Config(
                    "multiplicative mode needs exactly one --level".into(),
                ));
            }
            Ok(ScoreMode::Multiplicative(levels[0]))
        }
    }
}

fn build_stats(corpus: &[ResolvedPublication], mode: ScoreMode) -> Result<StatsTable, AppError> {
    build_field_year_stats(corpus, mode).map_err(|e| AppError::Compute(e.to_string()))
}

fn emit(table: &Table, provenance: &Provenance, output: &OutputArgs) -> Result<(), AppError> {
    let format = OutputFormat::from(output.format);
    match &output.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| AppError::Compute(format!("cannot create {}: {e}", path.display())))?;
            let mut writer = BufWriter::new(file);
            write_table(&mut writer, table, provenance, format)
                .map_err(|e| AppError::Compute(e.to_string()))?;
            writer.flush().map_err(|e| AppError::Compute(e.to_string()))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_table(&mut lock, table, provenance, format)
                .map_err(|e| AppError::Compute(e.to_string()))
        }
    }
}

fn echo(command: &str, pairs: &[(&str, String)]) -> String {
    let mut parts = vec![command.to_string()];
    for (key, value) in pairs {
        parts.push(format!("{key}={value}"));
    }
    parts.join(" ")
}

fn join<T: ToString>(values: impl IntoIterator<Item = T>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn run_validate(args: ValidateArgs) -> Result<(), AppError> {
    let load = load_corpus(&args.corpus.corpus, &doc_filter(&args.corpus))
        .map_err(|e| AppError::CorpusValidation(e.to_string()))?;
    for issue in &load.issues {
        println!("{issue}");
    }
    println!(
        "{} records, {} skipped by document-type filter, {} errors, {} warnings",
        load.records.len(),
        load.skipped_doc_type,
        load.error_count(),
        load.warning_count()
    );
    if load.error_count() > 0 {
        return Err(AppError::CorpusValidation(format!(
            "{} validation error(s) in {}",
            load.error_count(),
            args.corpus.corpus.display()
        )));
    }
    Ok(())
}

fn run_weights(args: WeightsArgs) -> Result<(), AppError> {
    let (corpus, hash) = load_resolved(&args.corpus)?;
    let levels = levels_of(&args.level, false);
    let explicit: Vec<CountingMethod> = args.method.iter().map(|&m| m.into()).collect();

    let mut vectors = Vec::new();
    for &level in &levels {
        let methods = if explicit.is_empty() {
            CountingMethod::valid_methods(level)
        } else {
            for method in &explicit {
                if !method.valid_at(level) {
                    return Err(AppError::Config(format!(
                        "method '{method}' is not defined at the {level} level"
                    )));
                }
            }
            explicit.clone()
        };
        for &method in &methods {
            for publication in &corpus {
                match compute_weights(publication, level, method)
                    .map_err(|e| AppError::Compute(e.to_string()))?
                {
                    Weights::Assigned(vector) => vectors.push(vector),
                    Weights::Unassignable => {}
                }
            }
        }
    }

    let mut provenance = Provenance::new(echo(
        "weights",
        &[
            ("corpus", args.corpus.corpus.display().to_string()),
            ("levels", join(levels.iter())),
            (
                "methods",
                if explicit.is_empty() {
                    "all-valid".into()
                } else {
                    join(explicit.iter())
                },
            ),
        ],
    ));
    provenance.corpus_sha256 = Some(hash);
    emit(&weights_table(&vectors), &provenance, &args.output)
}

fn run_indicators(args: IndicatorsArgs) -> Result<(), AppError> {
    let (corpus, hash) = load_resolved(&args.corpus)?;
    let levels = levels_of(&args.level, false);
    let mode = score_mode(args.mode, &levels)?;
    let stats = build_stats(&corpus, mode)?;
    let scores = score_corpus(&corpus, &stats).map_err(|e| AppError::Compute(e.to_string()))?;

    let explicit: Vec<CountingMethod> = args.method.iter().map(|&m| m.into()).collect();
    let mut rows = Vec::new();
    for &level in &levels {
        let methods = if explicit.is_empty() {
            CountingMethod::valid_methods(level)
        } else {
            for method in &explicit {
                if !method.valid_at(level) {
                    return Err(AppError::Config(format!(
                        "method '{method}' is not defined at the {level} level"
                    )));
                }
            }
            explicit.clone()
        };
        for &method in &methods {
            let mut method_rows = unit_indicators(&corpus, &scores, level, method)
                .map_err(|e| AppError::Compute(e.to_string()))?;
            if let Some(n) = args.top_n {
                method_rows.truncate(n);
            }
            rows.extend(method_rows);
        }
    }

    let mut provenance = Provenance::new(echo(
        "indicators",
        &[
            ("corpus", args.corpus.corpus.display().to_string()),
            ("levels", join(levels.iter())),
            (
                "methods",
                if explicit.is_empty() {
                    "all-valid".into()
                } else {
                    join(explicit.iter())
                },
            ),
            ("mode", mode_name(args.mode).into()),
        ],
    ));
    provenance.corpus_sha256 = Some(hash);

    if let Some(stats_path) = &args.stats_out {
        let file = File::create(stats_path).map_err(|e| {
            AppError::Compute(format!("cannot create {}: {e}", stats_path.display()))
        })?;
        let mut writer = BufWriter::new(file);
        write_table(
            &mut writer,
            &stats_csv_table(&stats),
            &provenance,
            OutputFormat::from(args.output.format),
        )
        .map_err(|e| AppError::Compute(e.to_string()))?;
        writer
            .flush()
            .map_err(|e| AppError::Compute(e.to_string()))?;
    }

    emit(&indicators_table(&rows), &provenance, &args.output)
}

fn mode_name(mode: ModeArg) -> &'static str {
    match mode {
        ModeArg::Standard => "standard",
        ModeArg::Multiplicative => "multiplicative",
    }
}

fn run_compare(args: CompareArgs) -> Result<(), AppError> {
    let (corpus, hash) = load_resolved(&args.corpus)?;
    let level = UnitLevel::from(args.level);
    let mode = score_mode(args.mode, &[level])?;
    let methods: Vec<CountingMethod> = args.method.iter().map(|&m| m.into()).collect();
    let baseline = CountingMethod::from(args.baseline);
    for method in methods.iter().chain([&baseline]) {
        if !method.valid_at(level) {
            return Err(AppError::Config(format!(
                "method '{method}' is not defined at the {level} level"
            )));
        }
    }
    let stats = build_stats(&corpus, mode)?;
    let scores = score_corpus(&corpus, &stats).map_err(|e| AppError::Compute(e.to_string()))?;
    let mut table = comparison_table(&corpus, &scores, level, &methods, baseline)
        .map_err(|e| AppError::Config(e.to_string()))?;
    if let Some(n) = args.top_n {
        table.truncate_top(n);
    }

    let mut provenance = Provenance::new(echo(
        "compare",
        &[
            ("corpus", args.corpus.corpus.display().to_string()),
            ("level", level.to_string()),
            ("methods", join(methods.iter())),
            ("baseline", baseline.to_string()),
            ("mode", mode_name(args.mode).into()),
        ],
    ));
    provenance.corpus_sha256 = Some(hash);
    emit(&comparison_report(&table), &provenance, &args.output)
}

fn run_bonus(args: BonusArgs) -> Result<(), AppError> {
    let (corpus, hash) = load_resolved(&args.corpus)?;
    let levels = levels_of(&args.level, true);
    let mode = score_mode(args.mode, &levels)?;
    let indicators: Vec<Indicator> = if args.indicator.is_empty() {
        Indicator::ALL.to_vec()
    } else {
        args.indicator.iter().map(|&i| i.into()).collect()
    };

    let grouping = match args.group_by {
        None => Grouping::Whole,
        Some(GroupByArg::Field) => Grouping::Field,
        Some(GroupByArg::Year) => Grouping::Year,
        Some(GroupByArg::BroadField) => {
            let path = args.broad_field_map.as_ref().ok_or_else(|| {
                AppError::Config("--group-by broad-field needs --broad-field-map".into())
            })?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| AppError::Config(format!("cannot read {}: {e}", path.display())))?;
            let mapping: BTreeMap<String, String> = serde_json::from_str(&text)
                .map_err(|e| AppError::Config(format!("bad broad-field map: {e}")))?;
            Grouping::BroadField(mapping)
        }
    };

    let stats = build_stats(&corpus, mode)?;
    let outcome = fcb_breakdown(&corpus, &stats, &grouping, &levels, &indicators)
        .map_err(|e| AppError::Compute(e.to_string()))?;
    for notice in &outcome.notices {
        eprintln!("notice: {notice}");
    }

    let mut provenance = Provenance::new(echo(
        "bonus",
        &[
            ("corpus", args.corpus.corpus.display().to_string()),
            ("levels", join(levels.iter())),
            ("indicators", join(indicators.iter())),
            (
                "group-by",
                match &grouping {
                    Grouping::Whole => "none".into(),
                    Grouping::Field => "field".into(),
                    Grouping::Year => "year".into(),
                    Grouping::BroadField(_) => "broad-field".into(),
                },
            ),
            ("mode", mode_name(args.mode).into()),
        ],
    ));
    provenance.corpus_sha256 = Some(hash);
    emit(&bonus_table(&outcome.reports), &provenance, &args.output)
}

fn run_profile(args: ProfileArgs) -> Result<(), AppError> {
    let (corpus, hash) = load_resolved(&args.corpus)?;
    let levels = levels_of(&args.level, true);
    let mode = score_mode(args.mode, &levels)?;
    let stats = build_stats(&corpus, mode)?;
    let scores = score_corpus(&corpus, &stats).map_err(|e| AppError::Compute(e.to_string()))?;

    let mut combined = Table::new(&[
        "level",
        "m",
        "publications",
        "share",
        "mean_ncs",
        "mean_top10",
    ]);
    for &level in &levels {
        let report =
            profile(&corpus, &scores, level).map_err(|e| AppError::Compute(e.to_string()))?;
        if report.excluded > 0 {
            eprintln!(
                "notice: {} publication(s) excluded from the {level} profile",
                report.excluded
            );
        }
        combined.rows.extend(profile_table(&report, level).rows);
    }

    let mut provenance = Provenance::new(echo(
        "profile",
        &[
            ("corpus", args.corpus.corpus.display().to_string()),
            ("levels", join(levels.iter())),
            ("mode", mode_name(args.mode).into()),
        ],
    ));
    provenance.corpus_sha256 = Some(hash);
    emit(&combined, &provenance, &args.output)
}

fn run_simulate(args: SimulateArgs) -> Result<(), AppError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| AppError::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let config: SimulatorConfig = serde_json::from_str(&text)
        .map_err(|e| AppError::Config(format!("bad generator config: {e}")))?;
    let corpus =
        simulate_corpus(&config, args.seed).map_err(|e| AppError::Config(e.to_string()))?;

    let file = File::create(&args.out)
        .map_err(|e| AppError::Compute(format!("cannot create {}: {e}", args.out.display())))?;
    let mut writer = BufWriter::new(file);
    for record in &corpus {
        let line = serde_json::to_string(record).map_err(|e| AppError::Compute(e.to_string()))?;
        writeln!(writer, "{line}").map_err(|e| AppError::Compute(e.to_string()))?;
    }
    writer.flush().map_err(|e| AppError::Compute(e.to_string()))?;
    eprintln!(
        "wrote {} records to {} (seed {})",
        corpus.len(),
        args.out.display(),
        args.seed
    );
    Ok(())
}
