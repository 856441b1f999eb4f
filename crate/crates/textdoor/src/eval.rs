//! Metrics and report rendering: clean accuracy, attack success rate, and
//! the per-trigger results table (text, csv, or json).

use serde::Serialize;

use crate::corpus::Dataset;
use crate::error::{Error, Result};
use crate::model::LinearModel;
use crate::trigger::{Naturalness, Scope};

/// Evaluation results for one trigger run. Optional fields stay empty when
/// the corresponding input (baseline model, poisoned split) is not supplied.
#[derive(Debug, Clone)]
pub struct EvalReport {
    pub trigger_id: String,
    pub scope: Scope,
    pub naturalness: Naturalness,
    /// Clean model on the clean test split.
    pub clean_accuracy_before: Option<f64>,
    /// Poisoned model on the clean test split.
    pub clean_accuracy_after: f64,
    pub asr: Option<f64>,
    pub discover_rate: Option<f64>,
    pub n_clean: usize,
    pub n_poisoned_eval: usize,
}

/// Fraction of examples whose predicted label equals the stored label.
pub fn accuracy(m: &LinearModel, d: &Dataset) -> Result<f64> {
    if d.is_empty() {
        return Err(Error::Eval("cannot evaluate on an empty dataset".into()));
    }
    let correct = d
        .examples
        .iter()
        .filter(|e| m.predict(&e.text).0 == e.label)
        .count();
    Ok(correct as f64 / d.len() as f64)
}

/// Complement of [`accuracy`] from the same counting pass, so the two sum to
/// exactly 1.
pub fn error_rate(m: &LinearModel, d: &Dataset) -> Result<f64> {
    Ok(1.0 - accuracy(m, d)?)
}

/// Fraction of triggered, non-target-class examples classified as the target
/// class. With target 0 this is the number of positive instances classified
/// as negative over the number of positive instances.
pub fn attack_success_rate(
    m: &LinearModel,
    poisoned_test: &Dataset,
    target_label: u8,
) -> Result<f64> {
    if poisoned_test.is_empty() {
        return Err(Error::Eval(
            "cannot compute attack success rate on an empty dataset".into(),
        ));
    }
    if let Some(e) = poisoned_test
        .examples
        .iter()
        .find(|e| e.label == target_label)
    {
        return Err(Error::Contract(format!(
            "poisoned test set contains a target-class example: {:?}",
            e.text
        )));
    }
    let hits = poisoned_test
        .examples
        .iter()
        .filter(|e| m.predict(&e.text).0 == target_label)
        .count();
    Ok(hits as f64 / poisoned_test.len() as f64)
}

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Config(format!("unknown report format {other:?}"))),
        }
    }
}

fn pct(v: f64) -> f64 {
    (v * 10000.0).round() / 100.0
}

fn fmt_pct(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{:.2}", pct(v)),
        None => "-".to_string(),
    }
}

#[derive(Serialize)]
struct JsonRow {
    trigger_id: String,
    scope: String,
    natural: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    asr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    acc_before: Option<f64>,
    acc_after: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    acc_drop: Option<f64>,
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

const COLUMNS: [&str; 7] = [
    "trigger_id",
    "scope",
    "natural",
    "asr",
    "acc_before",
    "acc_after",
    "acc_drop",
];

/// Render one row per report. Percentages carry two decimals; `acc_drop` is
/// in percentage points (before minus after).
pub fn report_table(reports: &[EvalReport], format: ReportFormat) -> String {
    let rows: Vec<[String; 7]> = reports
        .iter()
        .map(|r| {
            let drop = r
                .clean_accuracy_before
                .map(|b| (b - r.clean_accuracy_after) * 100.0);
            [
                r.trigger_id.clone(),
                r.scope.to_string(),
                if r.naturalness.is_natural() { "yes" } else { "no" }.to_string(),
                fmt_pct(r.asr),
                fmt_pct(r.clean_accuracy_before),
                fmt_pct(Some(r.clean_accuracy_after)),
                match drop {
                    Some(d) => format!("{:.2}", (d * 100.0).round() / 100.0),
                    None => "-".to_string(),
                },
            ]
        })
        .collect();

    match format {
        ReportFormat::Text => {
            let mut widths: Vec<usize> = COLUMNS.iter().map(|c| c.len()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row.iter()) {
                    *w = (*w).max(cell.len());
                }
            }
            let render = |cells: &[String]| -> String {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let header: Vec<String> = COLUMNS.iter().map(|s| s.to_string()).collect();
            let mut out = render(&header);
            out.push('\n');
            for row in &rows {
                out.push_str(&render(row));
                out.push('\n');
            }
            out
        }
        ReportFormat::Csv => {
            let mut out = COLUMNS.join(",");
            out.push('\n');
            for row in &rows {
                let line: Vec<String> = row.iter().map(|c| csv_escape(c)).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
        ReportFormat::Json => {
            let objs: Vec<JsonRow> = reports
                .iter()
                .map(|r| JsonRow {
                    trigger_id: r.trigger_id.clone(),
                    scope: r.scope.to_string(),
                    natural: r.naturalness.is_natural(),
                    asr: r.asr.map(pct),
                    acc_before: r.clean_accuracy_before.map(pct),
                    acc_after: pct(r.clean_accuracy_after),
                    acc_drop: r
                        .clean_accuracy_before
                        .map(|b| ((b - r.clean_accuracy_after) * 10000.0).round() / 100.0),
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&objs).expect("reports serialize");
            out.push('\n');
            out
        }
    }
}
