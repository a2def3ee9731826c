//! Generic conformal-tower eigenvalues and the two majorization theorems.
//!
//! The reduced density matrix of a block of length `L` in a (1+1)-dimensional
//! conformal theory has normalized eigenvalues generated by a scaling tower:
//!
//! ```text
//! Z̃(q) = 1 + n₁ q^{α₁} + n₂ q^{α₂} + ⋯       0 < α₁ < α₂ < ⋯, nᵢ ≥ 1
//! λ₁ = 1/Z̃(q),   λ_l = q^{α_{l-1}}/Z̃(q)  (each replicated n_{l-1} times)
//! ```
//!
//! with `q = exp(-2πκ / ln(L/ε))`, strictly increasing in `L`. Two facts are
//! verified numerically here:
//!
//! * sweeping the block size, the spectra are monotonically majorized:
//!   `ρ_L ≺ ρ_{L'}` whenever `L ≥ L'`;
//! * sweeping a coupling `g` that preserves the tower form, the same holds in
//!   the direction in which `q(g)` does not increase — that monotonicity is a
//!   hypothesis, and flows violating it are rejected rather than asserted.
//!
//! The `q^{-b}` prefactor (with `b = (c + c̄)/24`) cancels under
//! normalization, so `b` is carried as metadata only.

use crate::chain::Sign;
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::flow::{flow_report, FlowDirection, FlowReport};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// An ascending list of scaling exponents with positive degeneracies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalingSpectrum {
    exponents: Vec<f64>,
    degeneracies: Vec<u32>,
    /// `(c + c̄)/24`, kept for documentation; it never enters the
    /// eigenvalues.
    pub b: Option<f64>,
}

impl ScalingSpectrum {
    /// Validate `0 < α₁ < α₂ < ⋯` and `nᵢ ≥ 1`.
    pub fn new(exponents: Vec<f64>, degeneracies: Vec<u32>, b: Option<f64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidSpectrum("no exponents given".into()));
        }
        if exponents.len() != degeneracies.len() {
            return Err(Error::InvalidSpectrum(format!(
                "{} exponents vs {} degeneracies",
                exponents.len(),
                degeneracies.len()
            )));
        }
        let mut prev = 0.0;
        for &a in &exponents {
            if !a.is_finite() || a <= prev {
                return Err(Error::InvalidSpectrum(format!(
                    "exponents must be finite, positive and strictly increasing; \
                     {a} follows {prev}"
                )));
            }
            prev = a;
        }
        if degeneracies.contains(&0) {
            return Err(Error::InvalidSpectrum("degeneracy 0 is not allowed".into()));
        }
        Ok(Self {
            exponents,
            degeneracies,
            b,
        })
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn degeneracies(&self) -> &[u32] {
        &self.degeneracies
    }

    /// Number of tower levels above the vacuum.
    pub fn levels(&self) -> usize {
        self.exponents.len()
    }
}

/// The map from block size to conformal `q`-factor.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CftFlowParams {
    /// Positive constant κ in `τ = iκ / ln(L/ε)`.
    pub kappa: f64,
    /// Ultraviolet cutoff ε; block sizes must exceed it.
    pub uv_cutoff: f64,
}

impl CftFlowParams {
    pub fn new(kappa: f64, uv_cutoff: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(Error::InvalidSpectrum(format!(
                "κ must be positive and finite, got {kappa}"
            )));
        }
        if !uv_cutoff.is_finite() || uv_cutoff <= 0.0 {
            return Err(Error::InvalidSpectrum(format!(
                "UV cutoff must be positive and finite, got {uv_cutoff}"
            )));
        }
        Ok(Self { kappa, uv_cutoff })
    }
}

/// `q(L) = exp(-2πκ / ln(L/ε)) ∈ (0, 1)`, strictly increasing in `L`.
pub fn q_of_l(block_length: f64, params: &CftFlowParams) -> Result<f64> {
    if block_length.is_nan() || block_length <= params.uv_cutoff {
        return Err(Error::BlockTooSmall {
            length: block_length,
            cutoff: params.uv_cutoff,
        });
    }
    Ok((-TAU * params.kappa / (block_length / params.uv_cutoff).ln()).exp())
}

/// Partial sum of `Z̃(q) = 1 + Σ nᵢ q^{αᵢ}`, truncated once a term falls
/// below `tail_tol` times the running sum. Returns the sum and the number of
/// tower levels kept.
pub fn z_tilde(spec: &ScalingSpectrum, q: f64, tail_tol: f64) -> Result<(f64, usize)> {
    let terms = truncation_level(spec, q, tail_tol)?;
    let mut sum = 1.0;
    for i in 0..terms {
        sum += spec.degeneracies[i] as f64 * q.powf(spec.exponents[i]);
    }
    Ok((sum, terms))
}

/// How many tower levels survive the relative cutoff `tail_tol` at this `q`.
fn truncation_level(spec: &ScalingSpectrum, q: f64, tail_tol: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::QOutOfRange(q));
    }
    let mut sum = 1.0;
    for (i, (&a, &n)) in spec.exponents.iter().zip(&spec.degeneracies).enumerate() {
        let term = n as f64 * q.powf(a);
        if term < tail_tol * sum {
            return Ok(i);
        }
        sum += term;
    }
    Ok(spec.levels())
}

/// Eigenvalue list for exactly `terms` tower levels, degeneracies replicated,
/// renormalized over the kept terms.
fn eigenvalues_with_terms(spec: &ScalingSpectrum, q: f64, terms: usize) -> Distribution {
    let mut weights = Vec::with_capacity(1 + terms);
    weights.push(1.0);
    for i in 0..terms {
        let w = q.powf(spec.exponents[i]);
        for _ in 0..spec.degeneracies[i] {
            weights.push(w);
        }
    }
    Distribution::canonicalize(&weights, 1e-9, true).expect("tower weights are valid")
}

/// Normalized tower eigenvalues `[1, n₁ q^{α₁}, …] / Z̃(q)` at relative
/// truncation `tail_tol`, canonical descending. `λ₁ = 1/Z̃(q)` is always the
/// largest entry.
pub fn eigenvalues(spec: &ScalingSpectrum, q: f64, tail_tol: f64) -> Result<Distribution> {
    let terms = truncation_level(spec, q, tail_tol)?;
    Ok(eigenvalues_with_terms(spec, q, terms))
}

/// Check `ρ_L ≺ ρ_{L'}` for `L ≥ L'` over an ascending block-size grid.
///
/// All spectra are truncated at the same tower depth (the deepest any grid
/// point requires) so cumulant comparisons see identical index sets.
pub fn check_l_flow(
    spec: &ScalingSpectrum,
    params: &CftFlowParams,
    l_grid: &[f64],
    tail_tol: f64,
    tol: f64,
) -> Result<FlowReport> {
    if l_grid.len() < 2 {
        return Err(Error::TooFewPoints(l_grid.len()));
    }
    if !l_grid.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::NonMonotoneParameter);
    }
    let qs: Vec<f64> = l_grid
        .iter()
        .map(|&l| q_of_l(l, params))
        .collect::<Result<_>>()?;
    let points = tower_points(spec, l_grid, &qs, tail_tol)?;
    flow_report(&points, FlowDirection::DescendingMajorizes, tol)
}

/// A sampled coupling-to-q map for the parameter-flow theorem.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QFlow {
    samples: Vec<(f64, f64)>,
}

impl QFlow {
    /// Samples must be ordered by strictly ascending `g` with every
    /// `q ∈ (0, 1)`. Monotonicity of `q` itself is the theorem's hypothesis
    /// and is checked at flow time, not here.
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::TooFewPoints(samples.len()));
        }
        if !samples.windows(2).all(|w| w[1].0 > w[0].0) {
            return Err(Error::NonMonotoneParameter);
        }
        for &(_, q) in &samples {
            if !(q > 0.0 && q < 1.0) {
                return Err(Error::QOutOfRange(q));
            }
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }
}

/// Check the uniparametric-flow theorem along a sampled `q(g)`.
///
/// First gates on the hypothesis — `q` non-increasing in `g`; a rising `q`
/// returns [`Error::HypothesisViolated`], mirroring that the theorem simply
/// does not apply there. Then verifies `ρ(g₁) ≺ ρ(g₂)` for every `g₂ ≥ g₁`.
pub fn check_parameter_flow(
    spec: &ScalingSpectrum,
    qflow: &QFlow,
    tail_tol: f64,
    tol: f64,
) -> Result<FlowReport> {
    for w in qflow.samples.windows(2) {
        if w[1].1 > w[0].1 {
            return Err(Error::HypothesisViolated {
                g_from: w[0].0,
                g_to: w[1].0,
                q_from: w[0].1,
                q_to: w[1].1,
            });
        }
    }
    let gs: Vec<f64> = qflow.samples.iter().map(|&(g, _)| g).collect();
    let qs: Vec<f64> = qflow.samples.iter().map(|&(_, q)| q).collect();
    let points = tower_points(spec, &gs, &qs, tail_tol)?;
    flow_report(&points, FlowDirection::AscendingMajorizes, tol)
}

/// Eigenvalue distributions at each `(param, q)` pair, all truncated at the
/// deepest level any point needs.
fn tower_points(
    spec: &ScalingSpectrum,
    params: &[f64],
    qs: &[f64],
    tail_tol: f64,
) -> Result<Vec<(f64, Distribution)>> {
    let mut depth = 0;
    for &q in qs {
        depth = depth.max(truncation_level(spec, q, tail_tol)?);
    }
    Ok(params
        .iter()
        .zip(qs)
        .map(|(&p, &q)| (p, eigenvalues_with_terms(spec, q, depth)))
        .collect())
}

/// Distinct eigenvalue `λ_l(q(L))` with `l` 1-based (`λ₁` is the vacuum
/// weight), no truncation.
fn distinct_eigenvalue(spec: &ScalingSpectrum, q: f64, l: usize) -> f64 {
    let z: f64 = 1.0
        + spec
            .exponents
            .iter()
            .zip(&spec.degeneracies)
            .map(|(&a, &n)| n as f64 * q.powf(a))
            .sum::<f64>();
    let numerator = if l == 1 {
        1.0
    } else {
        q.powf(spec.exponents[l - 2])
    };
    numerator / z
}

/// Central-difference signs of `dλ_l/dL` and of `d(λ₁+λ₂)/dL`.
///
/// The proof's dichotomy allows either sign for `l ≥ 3`, but both
/// `dλ₁/dL ≤ 0` and `d(λ₁+λ₂)/dL ≤ 0` must hold at every probe point.
/// Differences below `zero_tol` report [`Sign::Zero`].
pub fn eigenvalue_derivative_probe(
    spec: &ScalingSpectrum,
    params: &CftFlowParams,
    block_length: f64,
    l: usize,
    h: f64,
    zero_tol: f64,
) -> Result<(Sign, Sign)> {
    assert!(h > 0.0 && h.is_finite(), "step must be positive");
    if l == 0 || l > spec.levels() + 1 {
        return Err(Error::InvalidSpectrum(format!(
            "eigenvalue index {l} outside 1..={}",
            spec.levels() + 1
        )));
    }
    if block_length.is_nan() || block_length - h <= params.uv_cutoff {
        return Err(Error::StepLeavesDomain(block_length));
    }
    let q_lo = q_of_l(block_length - h, params)?;
    let q_hi = q_of_l(block_length + h, params)?;

    let d_l = distinct_eigenvalue(spec, q_hi, l) - distinct_eigenvalue(spec, q_lo, l);
    let second = |q: f64| {
        distinct_eigenvalue(spec, q, 1)
            + if spec.levels() >= 1 {
                distinct_eigenvalue(spec, q, 2)
            } else {
                0.0
            }
    };
    let d_second = second(q_hi) - second(q_lo);
    Ok((Sign::of(d_l, zero_tol), Sign::of(d_second, zero_tol)))
}
