//! Report emission: CSV (primary) and JSON (lossless mirror), both prefixed
//! with a provenance block so identical inputs always produce identical
//! bytes.

use std::io::Write;

use serde_json::json;
use thiserror::Error;

use crate::bonus::BonusReport;
use crate::indicators::{ComparisonTable, Indicator, ProfileReport, UnitIndicatorRow};
use crate::normalization::StatsTable;
use crate::rational::to_f64;
use crate::corpus::UnitLevel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format '{other}'")),
        }
    }
}

/// What produced a report: tool version, the command echo, and a hash of the
/// corpus bytes. Deliberately contains nothing volatile.
#[derive(Debug, Clone, Default)]
pub struct Provenance {
    pub tool_version: String,
    pub command: String,
    pub corpus_sha256: Option<String>,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            corpus_sha256: None,
            seed: None,
        }
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut pairs = vec![
            ("tool", format!("bibcount {}", self.tool_version)),
            ("command", self.command.clone()),
        ];
        if let Some(hash) = &self.corpus_sha256 {
            pairs.push(("corpus-sha256", hash.clone()));
        }
        if let Some(seed) = self.seed {
            pairs.push(("seed", seed.to_string()));
        }
        pairs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Number(f64),
    Int(i64),
    Empty,
}

impl Cell {
    fn to_csv_field(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Number(v) => format!("{v}"),
            Cell::Int(v) => format!("{v}"),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Text(s) => json!(s),
            Cell::Number(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

/// A column-ordered table; every report is one of these.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode report: {0}")]
    Csv(#[from] csv::Error),
}

pub fn write_table(
    out: &mut dyn Write,
    table: &Table,
    provenance: &Provenance,
    format: OutputFormat,
) -> Result<(), ReportError> {
    match format {
        OutputFormat::Csv => write_csv(out, table, provenance),
        OutputFormat::Json => write_json(out, table, provenance),
    }
}

/// Render a table as a bare CSV string, without a provenance block.
pub fn table_to_csv_string(table: &Table) -> Result<String, ReportError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&table.columns)?;
    for row in &table.rows {
        writer.write_record(row.iter().map(|c| c.to_csv_field()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| ReportError::Io(std::io::Error::other(e)))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn write_csv(out: &mut dyn Write, table: &Table, provenance: &Provenance) -> Result<(), ReportError> {
    for (key, value) in provenance.pairs() {
        writeln!(out, "# {key}: {value}")?;
    }
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(&table.columns)?;
    for row in &table.rows {
        writer.write_record(row.iter().map(|c| c.to_csv_field()))?;
    }
    writer.flush()?;
    Ok(())
}

fn write_json(out: &mut dyn Write, table: &Table, provenance: &Provenance) -> Result<(), ReportError> {
    let provenance_obj: serde_json::Map<String, serde_json::Value> = provenance
        .pairs()
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let rows: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj: serde_json::Map<String, serde_json::Value> = table
                .columns
                .iter()
                .zip(row)
                .map(|(c, cell)| (c.clone(), cell.to_json()))
                .collect();
            serde_json::Value::Object(obj)
        })
        .collect();
    let document = json!({
        "provenance": provenance_obj,
        "columns": table.columns,
        "rows": rows,
    });
    serde_json::to_writer_pretty(&mut *out, &document)
        .map_err(|e| ReportError::Io(std::io::Error::other(e)))?;
    writeln!(out)?;
    Ok(())
}

fn num(value: &crate::rational::Rat) -> Cell {
    Cell::Number(to_f64(value))
}

/// publication_id, level, method, unit, weight
pub fn weights_table(vectors: &[crate::counting::WeightVector]) -> Table {
    let mut table = Table::new(&["publication_id", "level", "method", "unit", "weight"]);
    for vector in vectors {
        for (unit, weight) in &vector.weights {
            table.push(vec![
                Cell::Text(vector.publication_id.clone()),
                Cell::Text(vector.level.to_string()),
                Cell::Text(vector.method.to_string()),
                Cell::Text(unit.clone()),
                num(weight),
            ]);
        }
    }
    table
}

/// level, method, unit, p, mncs, pp_top10
pub fn indicators_table(rows: &[UnitIndicatorRow]) -> Table {
    let mut table = Table::new(&["level", "method", "unit", "p", "mncs", "pp_top10"]);
    for row in rows {
        table.push(vec![
            Cell::Text(row.level.to_string()),
            Cell::Text(row.method.to_string()),
            Cell::Text(row.unit.clone()),
            num(&row.p),
            num(&row.mncs),
            num(&row.pp_top10),
        ]);
    }
    table
}

/// field, year, pub_count, mean_citations, top10_threshold, top10_tie_fraction
pub fn stats_csv_table(stats: &StatsTable) -> Table {
    let mut table = Table::new(&[
        "field",
        "year",
        "pub_count",
        "mean_citations",
        "top10_threshold",
        "top10_tie_fraction",
    ]);
    for cell in stats.iter() {
        table.push(vec![
            Cell::Text(cell.field.clone()),
            Cell::Int(cell.year.into()),
            num(&cell.pub_count),
            num(&cell.mean_citations),
            Cell::Int(cell.top10_threshold as i64),
            num(&cell.top10_tie_fraction),
        ]);
    }
    table
}

/// unit, then per method p/mncs/pp_top10, then per non-baseline method the
/// percentage decrease in p and the absolute indicator decreases.
pub fn comparison_report(table: &ComparisonTable) -> Table {
    let mut columns: Vec<String> = vec!["unit".into()];
    for method in &table.methods {
        columns.push(format!("p_{method}"));
        columns.push(format!("mncs_{method}"));
        columns.push(format!("pptop10_{method}"));
    }
    for method in &table.methods {
        if *method == table.baseline {
            continue;
        }
        columns.push(format!("p_decrease_pct_{method}"));
        columns.push(format!("mncs_decrease_{method}"));
        columns.push(format!("pptop10_decrease_{method}"));
    }
    let mut out = Table {
        columns,
        rows: Vec::new(),
    };
    for row in &table.rows {
        let mut cells: Vec<Cell> = vec![Cell::Text(row.unit.clone())];
        for cell in &row.cells {
            match cell {
                Some(c) => {
                    cells.push(num(&c.p));
                    cells.push(num(&c.mncs));
                    cells.push(num(&c.pp_top10));
                }
                None => {
                    cells.push(Cell::Empty);
                    cells.push(Cell::Empty);
                    cells.push(Cell::Empty);
                }
            }
        }
        for &method in &table.methods {
            if method == table.baseline {
                continue;
            }
            cells.push(
                table
                    .p_decrease(row, method)
                    .map(|d| Cell::Number(to_f64(&(d * crate::rational::rat_int(100)))))
                    .unwrap_or(Cell::Empty),
            );
            for indicator in Indicator::ALL {
                cells.push(
                    table
                        .indicator_decrease(row, method, indicator)
                        .map(|d| num(&d))
                        .unwrap_or(Cell::Empty),
                );
            }
        }
        out.rows.push(cells);
    }
    out
}

/// level, m, publications, share, mean_ncs, mean_top10
pub fn profile_table(report: &ProfileReport, level: UnitLevel) -> Table {
    let mut table = Table::new(&["level", "m", "publications", "share", "mean_ncs", "mean_top10"]);
    for row in &report.rows {
        table.push(vec![
            Cell::Text(level.to_string()),
            Cell::Int(row.m as i64),
            Cell::Int(row.publications as i64),
            num(&row.share),
            num(&row.mean_ncs),
            num(&row.mean_top10),
        ]);
    }
    table
}

/// scope, level, indicator, fcb, fcb_percent, n_included, n_excluded
pub fn bonus_table(reports: &[BonusReport]) -> Table {
    let mut table = Table::new(&[
        "scope",
        "level",
        "indicator",
        "fcb",
        "fcb_percent",
        "n_included",
        "n_excluded",
    ]);
    for report in reports {
        table.push(vec![
            Cell::Text(report.scope.clone()),
            Cell::Text(report.level.to_string()),
            Cell::Text(report.indicator.to_string()),
            num(&report.fcb),
            num(&report.fcb_percent),
            Cell::Int(report.n_included as i64),
            Cell::Int(report.n_excluded as i64),
        ]);
    }
    table
}
