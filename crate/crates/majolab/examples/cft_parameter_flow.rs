//! Coupling flows that preserve the tower form: majorization follows from
//! q-monotonicity, and flows with rising q are rejected, not asserted.
//!
//! ```bash
//! cargo run --example cft_parameter_flow
//! ```

use majolab::cft::{check_parameter_flow, CftFlowParams, QFlow, ScalingSpectrum};
use majolab::error::Error;

fn main() {
    let spectrum = ScalingSpectrum::new(vec![1.0, 2.0], vec![1, 1], None).unwrap();

    println!("a falling q(g) verifies fine-grained loss along g:");
    let falling = QFlow::new(vec![(0.0, 0.5), (1.0, 0.25), (2.0, 0.1)]).unwrap();
    let report = check_parameter_flow(&spectrum, &falling, 1e-14, 1e-12).unwrap();
    for ((g, q), entropy) in falling.samples().iter().zip(&report.entropies) {
        println!("  g = {g}: q = {q:<6} entropy = {entropy:.6}");
    }
    println!(
        "  levels: global = {}, monotonous = {}, fine-grained = {}",
        report.levels.global, report.levels.monotonous, report.levels.fine_grained
    );

    println!("\na constant q is a stationary flow (all ties):");
    let constant = QFlow::new(vec![(0.0, 0.3), (1.0, 0.3), (2.0, 0.3)]).unwrap();
    let report = check_parameter_flow(&spectrum, &constant, 1e-14, 1e-12).unwrap();
    println!(
        "  fine-grained = {}, ties among adjacent pairs = {}",
        report.levels.fine_grained, report.ties
    );

    println!("\na rising q voids the hypothesis — the check refuses to rule:");
    let rising = QFlow::new(vec![(0.0, 0.2), (1.0, 0.45)]).unwrap();
    match check_parameter_flow(&spectrum, &rising, 1e-14, 1e-12) {
        Err(e @ Error::HypothesisViolated { .. }) => println!("  {e}"),
        other => println!("  unexpected: {other:?}"),
    }

    println!("\nthe q(L) map itself is one admissible flow, traversed backwards:");
    let params = CftFlowParams::new(1.0, 1.0).unwrap();
    let samples: Vec<(f64, f64)> = (1..=5)
        .map(|i| {
            // shrinking blocks as the coupling grows
            let block = (64 >> i) as f64;
            (i as f64, majolab::cft::q_of_l(block, &params).unwrap())
        })
        .collect();
    let qflow = QFlow::new(samples).unwrap();
    let report = check_parameter_flow(&spectrum, &qflow, 1e-14, 1e-12).unwrap();
    println!("  fine-grained = {}", report.levels.fine_grained);
}
