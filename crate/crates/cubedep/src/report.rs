//! Report rendering: JSON, CSV, and plain text.
//!
//! Rendering is pure serialization — no timestamps, no environment probes —
//! so a report renders to the same bytes on every run and under every thread
//! count. JSON is pretty-printed with a trailing newline; CSV always carries
//! a header row.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::analysis::AnalysisReport;
use crate::explore::{EmpiricalNReport, TableProfile};
use crate::{Error, Result};

/// Output encodings the CLI can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::input(format!(
                "unknown format {other:?}; expected json, csv, or text"
            ))),
        }
    }
}

/// Pretty JSON bytes with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// `u|v` with comma-joined coordinates, or `-` when there is no split.
pub fn split_label(split: Option<(&[usize], &[usize])>) -> String {
    match split {
        Some((u, v)) => {
            let join = |cs: &[usize]| {
                cs.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            format!("{}|{}", join(u), join(v))
        }
        None => "-".to_string(),
    }
}

const PROFILE_HEADER: [&str; 6] = [
    "table_hash",
    "k_min",
    "k_exact",
    "L_max",
    "L_exact",
    "best_split",
];

fn finish_csv(writer: csv::Writer<Vec<u8>>) -> Result<Vec<u8>> {
    writer
        .into_inner()
        .map_err(|e| Error::Internal(format!("csv writer failed: {e}")))
}

/// The per-table sweep CSV: one row per table, in index order.
pub fn profiles_csv(profiles: &[TableProfile]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PROFILE_HEADER)?;
    for p in profiles {
        let split = split_label(
            p.best_split
                .as_ref()
                .map(|(u, v)| (u.as_slice(), v.as_slice())),
        );
        w.write_record([
            p.table_hash.as_str(),
            &p.k_min.to_string(),
            &p.k_exact.to_string(),
            &p.l_max.to_string(),
            &p.l_exact.to_string(),
            &split,
        ])?;
    }
    finish_csv(w)
}

/// Single-row CSV with the same columns as a sweep.
pub fn analysis_csv(report: &AnalysisReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PROFILE_HEADER)?;
    let split = report
        .best_chain
        .as_ref()
        .map(|c| split_label(Some((c.u.as_slice(), c.v.as_slice()))))
        .unwrap_or_else(|| "-".to_string());
    w.write_record([
        report.table_hash.as_str(),
        &report.k_min.to_string(),
        &report.k_exact.to_string(),
        &report.l_max.to_string(),
        &report.l_exact.to_string(),
        &split,
    ])?;
    finish_csv(w)
}

fn exactness(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "budget-limited"
    }
}

/// Line-oriented human summary of one analysis.
pub fn analysis_text(report: &AnalysisReport) -> Vec<u8> {
    let sizes = report
        .domain_sizes
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join("x");
    let mut out = String::new();
    let _ = writeln!(
        out,
        "table {} -> {}  [{}]",
        sizes, report.codomain_size, report.table_hash
    );
    let _ = writeln!(
        out,
        "k_min={} ({}), certificate blocks: {}",
        report.k_min,
        exactness(report.k_exact),
        report.partition.block_count
    );
    let best = report
        .best_chain
        .as_ref()
        .map(|c| split_label(Some((c.u.as_slice(), c.v.as_slice()))))
        .unwrap_or_else(|| "-".to_string());
    let _ = writeln!(
        out,
        "L_max={} ({}), best split {}",
        report.l_max,
        exactness(report.l_exact),
        best
    );
    if report.no_split {
        let _ = writeln!(out, "no coordinate split available (arity 1)");
    }
    for s in &report.per_split {
        let label = split_label(Some((s.u.as_slice(), s.v.as_slice())));
        let _ = writeln!(
            out,
            "  split {label}: length {} ({}, {} nodes)",
            s.length,
            exactness(s.exact),
            s.nodes
        );
    }
    let _ = writeln!(
        out,
        "nodes: partition {}, chain {}",
        report.partition_nodes, report.chain_nodes
    );
    if let Some(ms) = report.wall_ms {
        let _ = writeln!(out, "wall time: {ms} ms");
    }
    out.into_bytes()
}

/// Renders one analysis in the requested format.
pub fn render_analysis(report: &AnalysisReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Csv => analysis_csv(report),
        ReportFormat::Text => Ok(analysis_text(report)),
    }
}

/// Empirical-N rows as CSV.
pub fn empirical_csv(report: &EmpiricalNReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "k",
        "eligible",
        "max_l",
        "n_emp",
        "witness_hash",
        "inexact_excluded",
        "all_partitionable",
    ])?;
    for row in &report.rows {
        let opt = |v: Option<String>| v.unwrap_or_default();
        w.write_record([
            row.k.to_string(),
            row.eligible.to_string(),
            opt(row.max_l.map(|v| v.to_string())),
            opt(row.n_emp.map(|v| v.to_string())),
            row.witness_hash.clone().unwrap_or_default(),
            row.inexact_excluded.to_string(),
            row.all_partitionable.to_string(),
        ])?;
    }
    finish_csv(w)
}

/// Line-oriented empirical-N summary.
pub fn empirical_text(report: &EmpiricalNReport) -> Vec<u8> {
    let mut out = String::new();
    let _ = writeln!(out, "empirical N over {}", report.space);
    for row in &report.rows {
        if row.all_partitionable {
            let _ = writeln!(out, "  k={}: all tables {}-partitionable", row.k, row.k);
        } else {
            let _ = writeln!(
                out,
                "  k={}: N_emp={} (max L {} over {} tables, witness {})",
                row.k,
                row.n_emp.unwrap_or(0),
                row.max_l.unwrap_or(0),
                row.eligible,
                row.witness_hash.as_deref().unwrap_or("-"),
            );
        }
        if row.inexact_excluded > 0 {
            let _ = writeln!(out, "    ({} inexact rows excluded)", row.inexact_excluded);
        }
    }
    out.into_bytes()
}

/// Renders an empirical-N report in the requested format.
pub fn render_empirical(report: &EmpiricalNReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Csv => empirical_csv(report),
        ReportFormat::Text => Ok(empirical_text(report)),
    }
}
