//! Free-fermion mode energies and assembled entanglement spectra for three
//! boundary chains.
//!
//! Each model's reduced density matrix is a thermal state of free fermionic
//! modes: the block spectrum is the direct product of two-outcome mode
//! distributions `(1, e^{-ε_k}) / (1 + e^{-ε_k})` with model-specific
//! single-mode energies
//!
//! ```text
//! XX (block of L sites):   ε_k = π² (2k+1) / (2 ln L)        k = 0 .. L-1
//! Heisenberg (Δ ≥ 1):      ε_k = 2k · arcosh(Δ)
//! XY (λ² + γ² > 1):        ε_k = 2k ε̂        if λ < 1
//!                          ε_k = (2k+1) ε̂    if λ > 1
//! ```
//!
//! with `ε̂ = π I(√(1-x²)) / I(x)`, `I` the complete elliptic integral of the
//! first kind and `x = √(λ²+γ²-1)/γ` (λ < 1) or `γ/√(λ²+γ²-1)` (λ > 1). The
//! XY formulas hold outside the circle `λ² + γ² = 1`; the circle itself and
//! the line `λ = 1` are out of domain (dispersion branch switch).
//!
//! The XX energies follow the large-`L` asymptotic form, which is treated as
//! exact for every `L ≥ 2` here; finite-`L` corrections are not modelled.
//!
//! Because `ε_k` grows linearly in `k`, infinite towers truncate cleanly: the
//! weight lost by keeping only the first `M` modes is bounded by
//! `1 - Π_{k≥M} (1+e^{-ε_k})^{-1}` and is reported with every assembled
//! spectrum.

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::flow::FlowDirection;
use crate::special::{arccosh, elliptic_k};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Hard cap on materialized spectra: `2^20` eigenvalues.
pub const MAX_ASSEMBLED_MODES: usize = 20;

/// One of the three boundary chains at fixed parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ChainModel {
    /// Critical XX chain; the parameter is the block length.
    Xx { block_length: usize },
    /// Heisenberg chain with anisotropy `Δ ≥ 1`, half-infinite block.
    Heisenberg { delta: f64 },
    /// XY chain with field `λ` and anisotropy `γ > 0`, half-infinite block.
    Xy { lambda: f64, gamma: f64 },
}

/// Which side of `λ = 1` an XY model sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum XyRegion {
    /// `√(1-γ²) < λ < 1`: the even branch `ε_k = 2k ε̂`, with its marginal
    /// zero mode pinned at `(½, ½)`.
    BelowOne,
    /// `λ > 1`: the odd branch `ε_k = (2k+1) ε̂`.
    AboveOne,
}

impl ChainModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ChainModel::Xx { block_length } => {
                if block_length < 2 {
                    return Err(Error::ModelInvariantViolation(format!(
                        "XX block length must be at least 2, got {block_length}"
                    )));
                }
            }
            ChainModel::Heisenberg { delta } => {
                if !delta.is_finite() || delta < 1.0 {
                    return Err(Error::ModelInvariantViolation(format!(
                        "Heisenberg anisotropy must satisfy Δ ≥ 1, got {delta}"
                    )));
                }
            }
            ChainModel::Xy { lambda, gamma } => {
                if !gamma.is_finite() || !lambda.is_finite() || gamma <= 0.0 {
                    return Err(Error::ModelInvariantViolation(format!(
                        "XY needs finite λ and γ > 0, got λ = {lambda}, γ = {gamma}"
                    )));
                }
                if lambda * lambda + gamma * gamma <= 1.0 {
                    return Err(Error::ModelInvariantViolation(format!(
                        "XY point (λ = {lambda}, γ = {gamma}) is not outside \
                         the circle λ² + γ² = 1"
                    )));
                }
                if lambda == 1.0 {
                    return Err(Error::ModelInvariantViolation(
                        "XY dispersion branch is undefined at λ = 1".into(),
                    ));
                }
                if lambda <= -1.0 {
                    return Err(Error::ModelInvariantViolation(format!(
                        "XY field λ = {lambda} lies outside the covered regions \
                         (-1, 1) and (1, ∞)"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Region classification for XY models; `None` for the other chains.
    pub fn xy_region(&self) -> Option<XyRegion> {
        match *self {
            ChainModel::Xy { lambda, .. } if lambda > 1.0 => Some(XyRegion::AboveOne),
            ChainModel::Xy { .. } => Some(XyRegion::BelowOne),
            _ => None,
        }
    }

    /// Validate and precompute the dispersion law.
    fn law(&self) -> Result<DispersionLaw> {
        self.validate()?;
        match *self {
            ChainModel::Xx { block_length } => Ok(xx_law(block_length as f64, Some(block_length))),
            ChainModel::Heisenberg { delta } => {
                let a = arccosh(delta)?;
                Ok(DispersionLaw {
                    slope: 2.0 * a,
                    intercept: 0.0,
                    max_modes: None,
                })
            }
            ChainModel::Xy { lambda, gamma } => xy_law(lambda, gamma),
        }
    }
}

/// `ε_k = slope·k + intercept`, optionally capped at a finite mode count.
#[derive(Debug, Clone, Copy)]
struct DispersionLaw {
    slope: f64,
    intercept: f64,
    max_modes: Option<usize>,
}

impl DispersionLaw {
    fn epsilon(&self, k: usize) -> f64 {
        self.slope * k as f64 + self.intercept
    }

    /// All mode energies vanish: the critical endpoint (Heisenberg Δ = 1).
    fn critical(&self) -> bool {
        self.slope == 0.0 && self.intercept == 0.0
    }

    fn check_mode(&self, k: usize) -> Result<()> {
        if let Some(max) = self.max_modes {
            if k >= max {
                return Err(Error::ModeCountExceedsBlock {
                    requested: k,
                    available: max,
                });
            }
        }
        Ok(())
    }
}

fn xx_law(block_length: f64, max_modes: Option<usize>) -> DispersionLaw {
    let c = PI * PI / (2.0 * block_length.ln());
    DispersionLaw {
        slope: 2.0 * c,
        intercept: c,
        max_modes,
    }
}

fn xy_law(lambda: f64, gamma: f64) -> Result<DispersionLaw> {
    // The complementary modulus is formed from λ and γ directly; the naive
    // √(1-x²) cancels catastrophically near the branch ends.
    let s2 = lambda * lambda + gamma * gamma - 1.0;
    let (x, x_comp) = if lambda > 1.0 {
        let s = s2.sqrt();
        (gamma / s, (lambda * lambda - 1.0).sqrt() / s)
    } else {
        (s2.sqrt() / gamma, (1.0 - lambda * lambda).sqrt() / gamma)
    };
    let eps_hat = PI * elliptic_k(x_comp)? / elliptic_k(x)?;
    Ok(if lambda > 1.0 {
        DispersionLaw {
            slope: 2.0 * eps_hat,
            intercept: eps_hat,
            max_modes: None,
        }
    } else {
        DispersionLaw {
            slope: 2.0 * eps_hat,
            intercept: 0.0,
            max_modes: None,
        }
    })
}

/// The first `M` single-fermion energies of a chain model, ascending.
#[derive(Debug, Clone, Serialize)]
pub struct ModeSpectrum {
    pub model: ChainModel,
    pub energies: Vec<f64>,
}

impl ModeSpectrum {
    pub fn mode_count(&self) -> usize {
        self.energies.len()
    }
}

/// Evaluate the dispersion relation for the first `modes` modes.
///
/// For XX the block carries exactly `L` modes, so `modes ≤ L`.
pub fn dispersion(model: &ChainModel, modes: usize) -> Result<ModeSpectrum> {
    if modes == 0 {
        return Err(Error::ModeCountExceedsBlock {
            requested: 0,
            available: 0,
        });
    }
    let law = model.law()?;
    law.check_mode(modes - 1)?;
    let energies = (0..modes).map(|k| law.epsilon(k)).collect();
    Ok(ModeSpectrum {
        model: *model,
        energies,
    })
}

/// Two-outcome occupation distribution of a single fermionic mode,
/// `(1, e^{-ε}) / (1 + e^{-ε})` in canonical descending order.
///
/// `ε = 0` gives exactly `(½, ½)`.
pub fn mode_distribution(epsilon: f64) -> Distribution {
    assert!(
        epsilon >= 0.0 && epsilon.is_finite(),
        "mode energy must be finite and nonnegative, got {epsilon}"
    );
    let boltzmann = (-epsilon).exp();
    let z = 1.0 + boltzmann;
    Distribution::new(&[1.0 / z, boltzmann / z]).expect("mode weights are canonical")
}

/// Largest occupation probability of mode `alpha`, `P_α = (1+e^{-ε_α})^{-1}`.
pub fn top_mode_probability(model: &ChainModel, alpha: usize) -> Result<f64> {
    let law = model.law()?;
    law.check_mode(alpha)?;
    Ok(1.0 / (1.0 + (-law.epsilon(alpha)).exp()))
}

/// A materialized block spectrum together with its truncation error bound.
#[derive(Debug, Clone, Serialize)]
pub struct AssembledSpectrum {
    pub weights: Distribution,
    /// Weight unaccounted for by freezing all modes `k ≥ M` into their
    /// dominant outcome: `1 - Π_{k≥M} (1 + e^{-ε_k})^{-1}`.
    pub tail_bound: f64,
    /// Set at critical endpoints (Heisenberg Δ = 1), where every mode is
    /// degenerate and the tail bound saturates at 1.
    pub critical: bool,
}

/// Direct product of the first `modes` mode distributions of `spectrum`.
///
/// Entropy is additive over the factors; the discarded tail is bounded by
/// `tail_bound`. `modes` may not exceed 20 (2^modes eigenvalues are
/// materialized); callers needing deeper towers should stay mode-wise.
pub fn assemble(spectrum: &ModeSpectrum, modes: usize) -> Result<AssembledSpectrum> {
    if modes > MAX_ASSEMBLED_MODES {
        return Err(Error::TooManyModes(modes));
    }
    if modes == 0 || modes > spectrum.energies.len() {
        return Err(Error::ModeCountExceedsBlock {
            requested: modes,
            available: spectrum.energies.len(),
        });
    }
    let law = spectrum.model.law()?;
    let mut weights = mode_distribution(spectrum.energies[0]);
    for &eps in &spectrum.energies[1..modes] {
        weights = weights.direct_product(&mode_distribution(eps));
    }
    Ok(AssembledSpectrum {
        weights,
        tail_bound: tail_bound(&law, modes),
        critical: law.critical(),
    })
}

/// Truncation deficit `1 - Π_{k≥from} (1+e^{-ε_k})^{-1}`, accumulated in log
/// space until the product converges or saturates.
fn tail_bound(law: &DispersionLaw, from: usize) -> f64 {
    let mut log_keep = 0.0_f64;
    let mut k = from;
    loop {
        if let Some(max) = law.max_modes {
            if k >= max {
                break;
            }
        }
        let boltzmann = (-law.epsilon(k)).exp();
        if boltzmann < 1e-18 {
            break;
        }
        log_keep -= boltzmann.ln_1p();
        if log_keep < -60.0 {
            // kept weight below e^-60: the bound is 1 to double precision
            return 1.0;
        }
        k += 1;
    }
    (-log_keep.exp_m1()).max(0.0)
}

/// Product of the per-mode top probabilities over the whole tower,
/// `Π_k (1+e^{-ε_k})^{-1}`: the thermodynamic largest eigenvalue.
pub fn asymptotic_top_eigenvalue(model: &ChainModel) -> Result<f64> {
    let law = model.law()?;
    Ok(1.0 - tail_bound(&law, 0))
}

/// A one-parameter family of chain models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FlowFamily {
    /// XX chain swept in block length `L`.
    XxBlock,
    /// Heisenberg chain swept in anisotropy `Δ`.
    HeisenbergDelta,
    /// XY chain swept in field `λ` at fixed anisotropy.
    XyLambda { gamma: f64 },
    /// XY chain swept in anisotropy `γ` at fixed field.
    XyGamma { lambda: f64 },
}

impl FlowFamily {
    /// Instantiate the model at a grid point. XX block lengths must be
    /// integers.
    pub fn model_at(&self, param: f64) -> Result<ChainModel> {
        let model = match *self {
            FlowFamily::XxBlock => {
                if !param.is_finite() || (param - param.round()).abs() > 1e-9 || param < 2.0 {
                    return Err(Error::ModelInvariantViolation(format!(
                        "XX block length must be an integer ≥ 2, got {param}"
                    )));
                }
                ChainModel::Xx {
                    block_length: param.round() as usize,
                }
            }
            FlowFamily::HeisenbergDelta => ChainModel::Heisenberg { delta: param },
            FlowFamily::XyLambda { gamma } => ChainModel::Xy {
                lambda: param,
                gamma,
            },
            FlowFamily::XyGamma { lambda } => ChainModel::Xy {
                lambda,
                gamma: param,
            },
        };
        model.validate()?;
        Ok(model)
    }

    /// Dispersion law at a real-valued parameter, for derivative probes.
    /// Unlike [`FlowFamily::model_at`], XX block lengths may be fractional.
    fn law_at_real(&self, param: f64) -> Result<DispersionLaw> {
        match *self {
            FlowFamily::XxBlock => {
                if param.is_nan() || param < 2.0 {
                    return Err(Error::ModelInvariantViolation(format!(
                        "XX block length must be at least 2, got {param}"
                    )));
                }
                Ok(xx_law(param, None))
            }
            _ => self.model_at(param)?.law(),
        }
    }

    /// The majorization direction the mode-wise derivative signs predict.
    ///
    /// For XY λ-flows the direction depends on the region, so the grid is
    /// consulted; it must not straddle `λ = 1`.
    pub fn natural_direction(&self, grid: &[f64]) -> Result<FlowDirection> {
        match *self {
            FlowFamily::XxBlock => Ok(FlowDirection::DescendingMajorizes),
            FlowFamily::HeisenbergDelta => Ok(FlowDirection::AscendingMajorizes),
            FlowFamily::XyGamma { .. } => Ok(FlowDirection::DescendingMajorizes),
            FlowFamily::XyLambda { .. } => {
                check_lambda_region(grid)?;
                if grid.iter().all(|&l| l > 1.0) {
                    Ok(FlowDirection::AscendingMajorizes)
                } else {
                    Ok(FlowDirection::DescendingMajorizes)
                }
            }
        }
    }
}

fn check_lambda_region(lambdas: &[f64]) -> Result<()> {
    let above = lambdas.iter().filter(|&&l| l > 1.0).count();
    if above != 0 && above != lambdas.len() {
        return Err(Error::GridCrossesRegionBoundary(
            "λ grid straddles the branch line λ = 1".into(),
        ));
    }
    Ok(())
}

/// One grid point of a chain flow.
#[derive(Debug, Clone, Serialize)]
pub struct ChainFlowPoint {
    pub param: f64,
    /// Modes actually assembled at this point (`min(modes, L)` for XX).
    pub modes_used: usize,
    pub spectrum: AssembledSpectrum,
}

/// A mode present in the larger of two adjacent XX blocks but absent from
/// the smaller one; it enters the comparison as the padding vector `(1, 0)`,
/// which majorizes any two-outcome distribution.
#[derive(Debug, Clone, Serialize)]
pub struct RemovedModePad {
    pub from_param: f64,
    pub to_param: f64,
    pub mode: usize,
}

/// Assembled spectra along a parameter grid.
#[derive(Debug, Clone, Serialize)]
pub struct ChainFlow {
    pub family: FlowFamily,
    pub points: Vec<ChainFlowPoint>,
    /// Non-empty only for XX block flows where the mode count shrinks with
    /// the block.
    pub removed: Vec<RemovedModePad>,
}

impl ChainFlow {
    /// The `(param, spectrum)` pairs in grid order, ready for
    /// [`crate::flow::flow_report`].
    pub fn distributions(&self) -> Vec<(f64, Distribution)> {
        self.points
            .iter()
            .map(|p| (p.param, p.spectrum.weights.clone()))
            .collect()
    }
}

/// Assemble spectra along `grid` with up to `modes` modes per point.
///
/// The grid must be strictly monotone and stay inside one parameter region;
/// XY λ grids may not cross `λ = 1` and every point must satisfy the model
/// invariants. For XX, blocks shorter than `modes` use all their `L` modes
/// and the dropped modes are reported for each adjacent step.
pub fn flow(family: &FlowFamily, grid: &[f64], modes: usize) -> Result<ChainFlow> {
    if grid.is_empty() {
        return Err(Error::TooFewPoints(0));
    }
    if grid.len() > 1 {
        let ascending = grid.windows(2).all(|w| w[1] > w[0]);
        let descending = grid.windows(2).all(|w| w[1] < w[0]);
        if !ascending && !descending {
            return Err(Error::NonMonotoneParameter);
        }
    }
    if let FlowFamily::XyLambda { .. } = family {
        check_lambda_region(grid)?;
    }

    let mut points = Vec::with_capacity(grid.len());
    for &param in grid {
        let model = family.model_at(param)?;
        let modes_used = match model {
            ChainModel::Xx { block_length } => modes.min(block_length),
            _ => modes,
        };
        let spectrum = assemble(&dispersion(&model, modes_used)?, modes_used)?;
        points.push(ChainFlowPoint {
            param,
            modes_used,
            spectrum,
        });
    }

    let mut removed = Vec::new();
    if matches!(family, FlowFamily::XxBlock) {
        for w in points.windows(2) {
            let (larger, smaller) = if w[0].modes_used >= w[1].modes_used {
                (&w[0], &w[1])
            } else {
                (&w[1], &w[0])
            };
            for mode in smaller.modes_used..larger.modes_used {
                removed.push(RemovedModePad {
                    from_param: larger.param,
                    to_param: smaller.param,
                    mode,
                });
            }
        }
    }

    Ok(ChainFlow {
        family: *family,
        points,
        removed,
    })
}

/// Sign of a central finite difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(difference: f64, zero_tol: f64) -> Self {
        if difference.abs() < zero_tol {
            Sign::Zero
        } else if difference > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Sign of `dP_α/dparam` by central finite difference at step `h`.
///
/// Both probe points `param ± h` must satisfy the model invariants and stay
/// in the same parameter region; otherwise [`Error::StepLeavesRegion`] is
/// returned. Differences below `zero_tol` report [`Sign::Zero`].
pub fn mode_derivative_sign(
    family: &FlowFamily,
    param: f64,
    alpha: usize,
    h: f64,
    zero_tol: f64,
) -> Result<Sign> {
    assert!(h > 0.0 && h.is_finite(), "step must be positive");
    let lo = param - h;
    let hi = param + h;

    match family {
        // both endpoints must sit on one side of the branch line
        FlowFamily::XyLambda { .. } if (lo < 1.0) != (hi < 1.0) => {
            return Err(Error::StepLeavesRegion(param));
        }
        // the probed mode must exist in the smaller block
        FlowFamily::XxBlock if (alpha as f64) > lo - 1.0 => {
            return Err(Error::StepLeavesRegion(param));
        }
        _ => {}
    }
    let law_lo = family
        .law_at_real(lo)
        .map_err(|_| Error::StepLeavesRegion(param))?;
    let law_hi = family
        .law_at_real(hi)
        .map_err(|_| Error::StepLeavesRegion(param))?;

    let p = |law: &DispersionLaw| 1.0 / (1.0 + (-law.epsilon(alpha)).exp());
    Ok(Sign::of(p(&law_hi) - p(&law_lo), zero_tol))
}
