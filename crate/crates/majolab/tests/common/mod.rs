//! Shared helpers for the integration suites: an independent quadrature
//! oracle for the elliptic integral and seeded random generators for
//! distributions, doubly stochastic matrices, and scaling spectra.
#![allow(dead_code)]

use majolab::cft::ScalingSpectrum;
use majolab::dist::Distribution;
use rand::prelude::IndexedRandom;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Adaptive-Simpson evaluation of the defining integral
/// `∫₀^{π/2} dθ / √(1 − x² sin²θ)`, independent of the AGM path.
pub fn elliptic_quadrature(modulus: f64) -> f64 {
    let x2 = modulus * modulus;
    let f = |theta: f64| 1.0 / (1.0 - x2 * theta.sin().powi(2)).sqrt();
    adaptive_simpson(&f, 0.0, std::f64::consts::FRAC_PI_2, 1e-13, 40)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: usize) -> f64 {
    fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn recurse(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: usize) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, m, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, right, 0.5 * tol, depth - 1)
        }
    }
    recurse(f, a, b, simpson(f, a, b), tol, depth)
}

/// Uniform draw from the probability simplex (flat Dirichlet).
pub fn random_distribution(n: usize, rng: &mut ChaCha8Rng) -> Distribution {
    let raw: Vec<f64> = (0..n)
        .map(|_| -(rng.random_range(f64::MIN_POSITIVE..1.0f64)).ln())
        .collect();
    Distribution::canonicalize(&raw, 1e-12, true).unwrap()
}

/// Convex mixture of `mixing` random permutation matrices: a doubly
/// stochastic matrix by construction.
pub fn random_ds_matrix(n: usize, mixing: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut weights: Vec<f64> = (0..mixing).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut matrix = vec![vec![0.0; n]; n];
    for w in weights {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            matrix[i][j] += w;
        }
    }
    matrix
}

/// Random tower: 1–6 strictly ascending exponents in (0, 5], degeneracies
/// 1–4.
pub fn random_scaling_spectrum(rng: &mut ChaCha8Rng) -> ScalingSpectrum {
    loop {
        let count = rng.random_range(1..=6usize);
        let mut exponents: Vec<f64> = (0..count)
            .map(|_| rng.random_range(f64::MIN_POSITIVE..5.0f64))
            .collect();
        exponents.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        if exponents.windows(2).any(|w| w[1] - w[0] < 1e-9) {
            continue;
        }
        let degeneracies: Vec<u32> = (0..count).map(|_| rng.random_range(1..=4u32)).collect();
        return ScalingSpectrum::new(exponents, degeneracies, None).unwrap();
    }
}

/// Non-increasing q-flow over ascending couplings.
pub fn random_qflow(rng: &mut ChaCha8Rng) -> majolab::cft::QFlow {
    let len = rng.random_range(3..=8usize);
    let mut q = rng.random_range(0.05..0.9f64);
    let mut samples = Vec::with_capacity(len);
    for i in 0..len {
        samples.push((i as f64, q));
        let factor: f64 = *[1.0, rng.random_range(0.3..1.0f64)].choose(rng).unwrap();
        q *= factor;
    }
    majolab::cft::QFlow::new(samples).unwrap()
}
