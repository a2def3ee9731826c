//! Three-level entanglement-loss verdicts along a sampled flow.
//!
//! Given reduced-density-matrix spectra sampled along a parameter (block
//! size, anisotropy, field, …), the loss of entanglement is graded in three
//! increasingly strict levels:
//!
//! * **global** — the entropy endpoint inequality `S(first) ≥ S(last)`,
//! * **monotonous** — entropy monotone across every adjacent pair, the
//!   discrete surrogate of `dS/dt < 0` on a sampled grid,
//! * **fine grained** — every ordered pair of spectra satisfies the
//!   majorization direction, a whole tower of cumulant inequalities.
//!
//! Fine-grained implies monotonous implies global (Schur concavity); the
//! implication is enforced when the report is assembled. Inequalities are
//! checked non-strictly, with exact ties counted separately, since float
//! equality is expected at critical endpoints.

use crate::dist::{majorizes, Distribution, MajorizationReport, Verdict};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which end of the parameter axis majorizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FlowDirection {
    /// The spectrum at the larger parameter majorizes: `ρ(t₁) ≺ ρ(t₂)` for
    /// `t₁ ≤ t₂`.
    AscendingMajorizes,
    /// The spectrum at the smaller parameter majorizes: `ρ(t₂) ≺ ρ(t₁)` for
    /// `t₁ ≤ t₂`.
    DescendingMajorizes,
}

/// The three loss levels, coarsest first.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LossLevels {
    pub global: bool,
    pub monotonous: bool,
    pub fine_grained: bool,
}

/// Majorization report for one ordered pair of grid points
/// (`from` at the smaller parameter, indices into `points`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairComparison {
    pub from: usize,
    pub to: usize,
    pub from_param: f64,
    pub to_param: f64,
    /// `majorizes(spectrum[from], spectrum[to])`.
    pub report: MajorizationReport,
}

/// Entropy profile, all pairwise majorization reports, and the three
/// loss-level verdicts for one sampled flow.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowReport {
    /// Parameter values in ascending order.
    pub points: Vec<f64>,
    /// Shannon entropy (nats) at each point.
    pub entropies: Vec<f64>,
    /// One report per ordered pair `(i, j)`, `i < j`, adjacent and not.
    pub pairwise: Vec<PairComparison>,
    pub levels: LossLevels,
    /// Adjacent pairs whose spectra compare as exactly EQUAL within
    /// tolerance; reported separately because the underlying inequalities
    /// are strict only away from critical endpoints.
    pub ties: usize,
    pub direction: FlowDirection,
    pub tol: f64,
}

/// Grade a sampled flow at additive tolerance `tol`.
///
/// `points` must hold at least two entries with strictly monotone parameter
/// values (either direction); they are reordered ascending internally.
pub fn flow_report(
    points: &[(f64, Distribution)],
    direction: FlowDirection,
    tol: f64,
) -> Result<FlowReport> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints(points.len()));
    }
    let ascending = points.windows(2).all(|w| w[1].0 > w[0].0);
    let descending = points.windows(2).all(|w| w[1].0 < w[0].0);
    if !ascending && !descending {
        return Err(Error::NonMonotoneParameter);
    }
    let ordered: Vec<&(f64, Distribution)> = if ascending {
        points.iter().collect()
    } else {
        points.iter().rev().collect()
    };

    let params: Vec<f64> = ordered.iter().map(|(p, _)| *p).collect();
    let entropies: Vec<f64> = ordered.iter().map(|(_, d)| d.shannon_entropy()).collect();

    let n = ordered.len();
    let mut pairwise = Vec::with_capacity(n * (n - 1) / 2);
    let mut fine_grained = true;
    let mut ties = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let report = majorizes(&ordered[i].1, &ordered[j].1, tol);
            let ok = match direction {
                FlowDirection::AscendingMajorizes => {
                    matches!(report.verdict, Verdict::MajorizedBy | Verdict::Equal)
                }
                FlowDirection::DescendingMajorizes => {
                    matches!(report.verdict, Verdict::Majorizes | Verdict::Equal)
                }
            };
            fine_grained &= ok;
            if j == i + 1 && report.verdict == Verdict::Equal {
                ties += 1;
            }
            pairwise.push(PairComparison {
                from: i,
                to: j,
                from_param: params[i],
                to_param: params[j],
                report,
            });
        }
    }

    // Entropy must shrink toward the majorizing end (Schur concavity).
    let entropy_step_ok = |s_low: f64, s_high: f64| match direction {
        FlowDirection::AscendingMajorizes => s_high <= s_low + tol,
        FlowDirection::DescendingMajorizes => s_low <= s_high + tol,
    };
    let monotonous_raw = entropies.windows(2).all(|w| entropy_step_ok(w[0], w[1]));
    let global_raw = entropy_step_ok(entropies[0], entropies[n - 1]);

    let monotonous = monotonous_raw || fine_grained;
    let global = global_raw || monotonous;

    Ok(FlowReport {
        points: params,
        entropies,
        pairwise,
        levels: LossLevels {
            global,
            monotonous,
            fine_grained,
        },
        ties,
        direction,
        tol,
    })
}
