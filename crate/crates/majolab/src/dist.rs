//! Canonical probability vectors and the majorization partial order.
//!
//! A [`Distribution`] is a finite probability vector kept in canonical form:
//! weights clamped to `[0, 1]`, sorted in non-increasing order, summing to 1
//! within a stated tolerance. Majorization compares two such vectors through
//! their cumulants (prefix sums of the sorted weights):
//!
//! ```text
//! x ≺ y   ⇔   Σ_{i≤k} x_i ≤ Σ_{i≤k} y_i   for every k
//! ```
//!
//! Equivalently `x = D y` for a doubly stochastic matrix `D`, i.e. `x` is a
//! probabilistic mixture of permutations of `y`. The order is the finest
//! classical notion of "y is more ordered than x": Shannon entropy reverses
//! it (Schur concavity), and it survives direct products, which is what makes
//! mode-by-mode arguments on free-fermion spectra possible.
//!
//! Vectors of unequal length are compared after zero-padding the shorter one;
//! padding appends zeros to a descending vector, so cumulants are unchanged.

use crate::error::{Error, Result};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Default additive tolerance for normalization checks and cumulant
/// comparisons. Chosen for 64-bit accumulation over spectra of up to ~2^20
/// entries.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Neumaier-compensated sum; keeps prefix-sum error near one ulp even for
/// 2^16-entry spectra, where plain accumulation would eat the 1e-12 budget.
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// A probability vector in canonical (descending, normalized) form.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    weights: Vec<f64>,
    tol: f64,
}

impl Distribution {
    /// Canonicalize a raw weight list: clamp entries in `[-tol, 0)` to zero,
    /// sort descending, and enforce normalization.
    ///
    /// With `normalize` set, the weights are rescaled by their sum instead of
    /// being rejected when the sum strays from 1.
    pub fn canonicalize(raw: &[f64], tol: f64, normalize: bool) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut weights = Vec::with_capacity(raw.len());
        for (index, &w) in raw.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight(index));
            }
            if w < -tol {
                return Err(Error::NegativeWeight {
                    index,
                    value: w,
                    tol,
                });
            }
            weights.push(w.max(0.0));
        }
        let sum = compensated_sum(weights.iter().copied());
        if normalize {
            if sum <= 0.0 {
                return Err(Error::NotNormalized { sum, tol });
            }
            for w in &mut weights {
                *w /= sum;
            }
        } else if (sum - 1.0).abs() > tol {
            return Err(Error::NotNormalized { sum, tol });
        }
        weights.sort_unstable_by(|a, b| b.partial_cmp(a).expect("weights are finite"));
        Ok(Self { weights, tol })
    }

    /// Canonicalize with [`DEFAULT_TOL`] and no rescaling.
    pub fn new(raw: &[f64]) -> Result<Self> {
        Self::canonicalize(raw, DEFAULT_TOL, false)
    }

    /// The uniform distribution over `n` outcomes, the minimum of the
    /// majorization order at fixed length.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "uniform distribution needs at least one outcome");
        Self {
            weights: vec![1.0 / n as f64; n],
            tol: DEFAULT_TOL,
        }
    }

    /// The point distribution `(1, 0, …, 0)` of length `n`, which majorizes
    /// every distribution of that length.
    pub fn pure(n: usize) -> Self {
        assert!(n >= 1, "point distribution needs at least one outcome");
        let mut weights = vec![0.0; n];
        weights[0] = 1.0;
        Self {
            weights,
            tol: DEFAULT_TOL,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false // canonical form always holds at least one weight
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Largest weight; first entry of the canonical form.
    pub fn largest(&self) -> f64 {
        self.weights[0]
    }

    /// Cumulants: compensated prefix sums of the descending weights.
    /// Non-decreasing, ending within tolerance of 1.
    pub fn cumulants(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.weights.len());
        let mut sum = 0.0;
        let mut comp = 0.0;
        for &w in &self.weights {
            let t = sum + w;
            if sum.abs() >= w.abs() {
                comp += (sum - t) + w;
            } else {
                comp += (w - t) + sum;
            }
            sum = t;
            out.push(sum + comp);
        }
        out
    }

    /// Shannon entropy `-Σ p ln p` in nats, with `0 ln 0 = 0`.
    /// Lies in `[0, ln n]`.
    pub fn shannon_entropy(&self) -> f64 {
        compensated_sum(
            self.weights
                .iter()
                .filter(|&&p| p > 0.0)
                .map(|&p| -p * p.ln()),
        )
    }

    /// Direct product: all pairwise weight products, re-canonicalized.
    ///
    /// Entropy is additive under this operation, and majorization is
    /// preserved in both factors (`p₁ ≺ p₂` and `q₁ ≺ q₂` imply
    /// `p₁⊗q₁ ≺ p₂⊗q₂`, since `D_p ⊗ D_q` is doubly stochastic).
    pub fn direct_product(&self, other: &Self) -> Self {
        let mut products = Vec::with_capacity(self.len() * other.len());
        for &p in &self.weights {
            for &q in &other.weights {
                products.push(p * q);
            }
        }
        let tol = self.tol.max(other.tol);
        Self::canonicalize(&products, tol, false)
            .expect("product of canonical distributions stays canonical")
    }

    /// Extend with explicit zeros to `len`; a no-op if already that long.
    /// Zero-padding leaves all cumulants, the entropy, and every majorization
    /// verdict unchanged.
    pub fn zero_padded(&self, len: usize) -> Self {
        let mut weights = self.weights.clone();
        if len > weights.len() {
            weights.resize(len, 0.0);
        }
        Self {
            weights,
            tol: self.tol,
        }
    }
}

impl Serialize for Distribution {
    /// Serializes as a plain JSON array of weights in descending order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.weights.len()))?;
        for w in &self.weights {
            seq.serialize_element(w)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct WeightsVisitor;
        impl<'de> Visitor<'de> for WeightsVisitor {
            type Value = Vec<f64>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of probabilities")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(w) = seq.next_element::<f64>()? {
                    out.push(w);
                }
                Ok(out)
            }
        }
        let raw = deserializer.deserialize_seq(WeightsVisitor)?;
        Distribution::canonicalize(&raw, DEFAULT_TOL, false).map_err(serde::de::Error::custom)
    }
}

/// Outcome of a cumulant-by-cumulant comparison of `x` against `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Every cumulant of `x` dominates the corresponding cumulant of `y`:
    /// `y ≺ x`.
    Majorizes,
    /// Every cumulant of `x` is dominated: `x ≺ y`.
    MajorizedBy,
    /// All cumulant gaps within `±tol`; wins over the one-sided verdicts.
    Equal,
    /// Cumulant gaps change sign beyond tolerance; the two vectors are not
    /// ordered.
    Incomparable,
}

/// Cumulant-level report of `majorizes(x, y)`.
///
/// `cumulant_gaps` holds `(k, Σ_{i≤k} x_i − Σ_{i≤k} y_i)` with `k` 1-based;
/// `first_violation` is the earliest `k` at which no one-sided ordering can
/// hold any longer (set only for [`Verdict::Incomparable`]).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MajorizationReport {
    pub verdict: Verdict,
    pub cumulant_gaps: Vec<(usize, f64)>,
    pub first_violation: Option<usize>,
    pub tol: f64,
}

/// Compare `x` against `y` in the majorization order at additive tolerance
/// `tol`. Unequal lengths are zero-padded to the longer length first.
///
/// `Verdict::MajorizedBy` means `x ≺ y`.
pub fn majorizes(x: &Distribution, y: &Distribution, tol: f64) -> MajorizationReport {
    let n = x.len().max(y.len());
    let cx = x.cumulants();
    let cy = y.cumulants();
    let at = |c: &[f64], k: usize| {
        if k < c.len() {
            c[k]
        } else {
            *c.last().unwrap()
        }
    };

    let mut gaps = Vec::with_capacity(n);
    let mut seen_pos = false;
    let mut seen_neg = false;
    let mut first_violation = None;
    for k in 0..n {
        let gap = at(&cx, k) - at(&cy, k);
        gaps.push((k + 1, gap));
        if gap > tol {
            seen_pos = true;
        }
        if gap < -tol {
            seen_neg = true;
        }
        if seen_pos && seen_neg && first_violation.is_none() {
            first_violation = Some(k + 1);
        }
    }

    let verdict = match (seen_pos, seen_neg) {
        (false, false) => Verdict::Equal,
        (false, true) => Verdict::MajorizedBy,
        (true, false) => Verdict::Majorizes,
        (true, true) => Verdict::Incomparable,
    };
    MajorizationReport {
        verdict,
        cumulant_gaps: gaps,
        first_violation: if verdict == Verdict::Incomparable {
            first_violation
        } else {
            None
        },
        tol,
    }
}

/// Apply a doubly stochastic matrix to a canonical distribution.
///
/// `matrix` is row-major and must be square with dimension `y.len()`,
/// nonnegative, with every row and column summing to 1 within `tol`.
/// The result satisfies `x ≺ y` by construction, which is what makes this
/// the canonical fabricator of majorized test pairs.
pub fn apply_doubly_stochastic(
    matrix: &[Vec<f64>],
    y: &Distribution,
    tol: f64,
) -> Result<Distribution> {
    let n = y.len();
    if matrix.len() != n {
        return Err(Error::NotDoublyStochastic(format!(
            "matrix has {} rows, distribution has {} entries",
            matrix.len(),
            n
        )));
    }
    let mut col_sums = vec![0.0; n];
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotDoublyStochastic(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        let mut row_sum = 0.0;
        for (j, &m) in row.iter().enumerate() {
            if m.is_nan() || m < -tol {
                return Err(Error::NotDoublyStochastic(format!(
                    "entry ({i}, {j}) = {m} is negative"
                )));
            }
            row_sum += m;
            col_sums[j] += m;
        }
        if (row_sum - 1.0).abs() > tol {
            return Err(Error::NotDoublyStochastic(format!(
                "row {i} sums to {row_sum}"
            )));
        }
    }
    for (j, &s) in col_sums.iter().enumerate() {
        if (s - 1.0).abs() > tol {
            return Err(Error::NotDoublyStochastic(format!(
                "column {j} sums to {s}"
            )));
        }
    }
    let weights: Vec<f64> = matrix
        .iter()
        .map(|row| compensated_sum(row.iter().zip(y.weights()).map(|(&m, &w)| m * w)))
        .collect();
    Distribution::canonicalize(&weights, tol.max(y.tol()), false)
}

/// Mix a distribution with an explicit convex combination of permutations:
/// `x = Σ_j p_j P_j y`. Building block of [`random_majorized_pair`], exposed
/// so that fixed permutations (identity, swaps) can be exercised directly.
pub fn convex_permutation_mix(
    y: &Distribution,
    terms: &[(f64, Vec<usize>)],
) -> Result<Distribution> {
    let n = y.len();
    let total: f64 = terms.iter().map(|(p, _)| *p).sum();
    if terms.is_empty() || (total - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::NotDoublyStochastic(format!(
            "permutation weights sum to {total}"
        )));
    }
    let mut weights = vec![0.0; n];
    for (p, perm) in terms {
        if *p < 0.0 {
            return Err(Error::NotDoublyStochastic(format!(
                "negative mixing weight {p}"
            )));
        }
        if perm.len() != n {
            return Err(Error::NotDoublyStochastic(
                "permutation length mismatch".into(),
            ));
        }
        let mut seen = vec![false; n];
        for (i, &s) in perm.iter().enumerate() {
            if s >= n || seen[s] {
                return Err(Error::NotDoublyStochastic(format!(
                    "index list is not a permutation at position {i}"
                )));
            }
            seen[s] = true;
            weights[i] += p * y.weights()[s];
        }
    }
    // rescale away the ~ulp drift the convex accumulation leaves behind
    Distribution::canonicalize(&weights, y.tol(), true)
}

/// Fabricate a majorized pair `(x, y)` with `x ≺ y`:
/// `y` is drawn uniformly from the probability simplex and
/// `x = (Σ_j p_j P_j) y` mixes `mixing` random permutations with random
/// convex weights. Deterministic for a fixed seed.
pub fn random_majorized_pair(n: usize, mixing: usize, seed: u64) -> (Distribution, Distribution) {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    assert!(n >= 1, "need at least one outcome");
    assert!(mixing >= 1, "need at least one permutation");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    // -ln U sampling gives the flat Dirichlet over the simplex.
    let raw: Vec<f64> = (0..n)
        .map(|_| -(rng.random_range(f64::MIN_POSITIVE..1.0_f64)).ln())
        .collect();
    let y = Distribution::canonicalize(&raw, DEFAULT_TOL, true).expect("simplex sample is valid");

    let mut weights: Vec<f64> = (0..mixing).map(|_| rng.random_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut terms = Vec::with_capacity(mixing);
    for w in weights {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        terms.push((w, perm));
    }
    let x = convex_permutation_mix(&y, &terms).expect("convex mix of permutations is valid");
    (x, y)
}
