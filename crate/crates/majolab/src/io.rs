//! Serialization: JSON documents and plot-ready CSV.
//!
//! CSV values use `.` as the decimal separator and 17 significant digits, so
//! every `f64` round-trips bit-exactly across platforms.

use crate::cft::{CftFlowParams, QFlow, ScalingSpectrum};
use crate::chain::{AssembledSpectrum, ChainFlow, ChainModel};
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::flow::{FlowDirection, FlowReport};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

/// 17 significant digits: full round-trip for 64-bit floats.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Single-column CSV form of a distribution.
pub fn distribution_to_csv(d: &Distribution) -> String {
    let mut out = String::from("weight\n");
    for &w in d.weights() {
        let _ = writeln!(out, "{}", fmt_f64(w));
    }
    out
}

/// `param,index,weight` rows of one spectrum at a fixed parameter value.
pub fn spectrum_to_csv(param: f64, d: &Distribution) -> String {
    let mut out = String::from("param,index,weight\n");
    for (i, &w) in d.weights().iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", fmt_f64(param), i, fmt_f64(w));
    }
    out
}

/// `param,index,weight` rows for every point of a flow.
pub fn flow_spectra_to_csv(points: &[(f64, Distribution)]) -> String {
    let mut out = String::from("param,index,weight\n");
    for (param, d) in points {
        for (i, &w) in d.weights().iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", fmt_f64(*param), i, fmt_f64(w));
        }
    }
    out
}

/// Flow summary CSV: `param,entropy,largest_eigenvalue,verdict_vs_prev`.
/// The verdict column holds the adjacent-pair comparison against the
/// previous row (empty on the first row).
pub fn flow_summary_csv(report: &FlowReport, points: &[(f64, Distribution)]) -> String {
    let mut out = String::from("param,entropy,largest_eigenvalue,verdict_vs_prev\n");
    // points may arrive in either monotone order; the report is ascending
    let mut ordered: Vec<&(f64, Distribution)> = points.iter().collect();
    ordered.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for (i, (param, d)) in ordered.iter().enumerate() {
        let verdict = if i == 0 {
            String::new()
        } else {
            let pair = report
                .pairwise
                .iter()
                .find(|p| p.from == i - 1 && p.to == i)
                .expect("adjacent pair present");
            // orientation: current row against the previous one
            match serde_json::to_value(pair.report.verdict).unwrap() {
                serde_json::Value::String(s) => match s.as_str() {
                    "MAJORIZED_BY" => "MAJORIZES".into(),
                    "MAJORIZES" => "MAJORIZED_BY".into(),
                    other => other.to_string(),
                },
                _ => unreachable!(),
            }
        };
        let _ = writeln!(
            out,
            "{},{},{},{verdict}",
            fmt_f64(*param),
            fmt_f64(report.entropies[i]),
            fmt_f64(d.largest()),
        );
    }
    out
}

/// Side-by-side CSV of an ED spectrum against a closed-form one,
/// zero-padded to the longer length.
pub fn comparison_csv(param: f64, ed: &Distribution, formula: &Distribution) -> String {
    let n = ed.len().max(formula.len());
    let mut out = String::from("param,index,ed_weight,formula_weight\n");
    let at = |d: &Distribution, i: usize| d.weights().get(i).copied().unwrap_or(0.0);
    for i in 0..n {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(param),
            i,
            fmt_f64(at(ed, i)),
            fmt_f64(at(formula, i)),
        );
    }
    out
}

/// JSON document for one assembled chain spectrum.
#[derive(Debug, Serialize)]
pub struct ChainSpectrumDoc {
    pub model: ChainModel,
    pub modes: usize,
    pub tail_bound: f64,
    pub critical: bool,
    pub weights: Distribution,
}

impl ChainSpectrumDoc {
    pub fn new(model: ChainModel, modes: usize, spectrum: &AssembledSpectrum) -> Self {
        Self {
            model,
            modes,
            tail_bound: spectrum.tail_bound,
            critical: spectrum.critical,
            weights: spectrum.weights.clone(),
        }
    }
}

/// JSON document for one conformal-tower spectrum.
#[derive(Debug, Serialize)]
pub struct CftSpectrumDoc {
    pub exponents: Vec<f64>,
    pub degeneracies: Vec<u32>,
    pub kappa: f64,
    pub uv_cutoff: f64,
    pub block_length: f64,
    pub q: f64,
    pub z_tilde: f64,
    pub terms_used: usize,
    pub weights: Distribution,
}

/// JSON document for a flow run: family metadata plus the report.
#[derive(Debug, Serialize)]
pub struct FlowDoc<M: Serialize> {
    pub model: M,
    pub modes: Option<usize>,
    pub direction: FlowDirection,
    pub report: FlowReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removed_modes: Option<Vec<RemovedModeDoc>>,
}

#[derive(Debug, Serialize)]
pub struct RemovedModeDoc {
    pub from_param: f64,
    pub to_param: f64,
    pub mode: usize,
    /// The padding distribution the dropped mode contributes.
    pub distribution: [f64; 2],
}

impl RemovedModeDoc {
    pub fn from_flow(flow: &ChainFlow) -> Option<Vec<Self>> {
        if flow.removed.is_empty() {
            return None;
        }
        Some(
            flow.removed
                .iter()
                .map(|r| RemovedModeDoc {
                    from_param: r.from_param,
                    to_param: r.to_param,
                    mode: r.mode,
                    distribution: [1.0, 0.0],
                })
                .collect(),
        )
    }
}

/// On-disk form of a scaling spectrum plus its q-map parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CftSpecFile {
    pub exponents: Vec<f64>,
    pub degeneracies: Vec<u32>,
    pub kappa: f64,
    pub uv_cutoff: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

impl CftSpecFile {
    pub fn load(path: &Path) -> Result<(ScalingSpectrum, CftFlowParams)> {
        let text = std::fs::read_to_string(path)?;
        let file: CftSpecFile = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let spectrum = ScalingSpectrum::new(file.exponents, file.degeneracies, file.b)?;
        let params = CftFlowParams::new(file.kappa, file.uv_cutoff)?;
        Ok((spectrum, params))
    }
}

/// Parse a `g,q` CSV (header row optional) into a validated [`QFlow`].
pub fn parse_qflow_csv(text: &str) -> Result<QFlow> {
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (a, b) = (fields.next(), fields.next());
        let (Some(a), Some(b)) = (a, b) else {
            return Err(Error::Parse(format!(
                "q-flow line {}: expected two comma-separated fields",
                lineno + 1
            )));
        };
        match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
            (Ok(g), Ok(q)) => samples.push((g, q)),
            _ if lineno == 0 => continue, // header row
            _ => {
                return Err(Error::Parse(format!(
                    "q-flow line {}: cannot parse '{line}'",
                    lineno + 1
                )))
            }
        }
    }
    QFlow::new(samples)
}

pub fn read_qflow_csv(path: &Path) -> Result<QFlow> {
    parse_qflow_csv(&std::fs::read_to_string(path)?)
}
