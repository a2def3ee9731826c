//! The two special functions the chain spectra need.
//!
//! `elliptic_k` is the complete elliptic integral of the first kind in the
//! modulus convention,
//!
//! ```text
//! I(x) = ∫₀^{π/2} dθ / √(1 − x² sin²θ),
//! ```
//!
//! evaluated through the arithmetic–geometric mean, `I(x) = π / (2 AGM(1, x'))`
//! with `x' = √(1 − x²)`. AGM converges quadratically: at double precision the
//! loop settles in at most eight iterations. The modulus is restricted to
//! `[0, 1)`; the logarithmic divergence at `x = 1` is a hard error because the
//! callers' parameter regions keep valid models away from it.

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

const AGM_MAX_ITER: usize = 32;

/// Complete elliptic integral of the first kind, modulus convention.
///
/// `I(0) = π/2` exactly; strictly increasing on `[0, 1)`; relative accuracy
/// near one ulp via AGM.
pub fn elliptic_k(modulus: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&modulus) {
        return Err(Error::ModulusOutOfRange(modulus));
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - modulus * modulus).sqrt();
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    Ok(FRAC_PI_2 / a)
}

/// Inverse hyperbolic cosine on its physical branch,
/// `arccosh(t) = ln(t + √(t² − 1))` for `t ≥ 1`.
///
/// Monotone increasing with `arccosh(1) = 0`.
pub fn arccosh(t: f64) -> Result<f64> {
    if t.is_nan() || t < 1.0 {
        return Err(Error::DomainError(t));
    }
    Ok(t.acosh())
}
