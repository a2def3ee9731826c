//! The four XY flows: field sweeps on either side of λ = 1 and anisotropy
//! sweeps in both regions.
//!
//! Mode energies are multiples of `ε̂ = π I(√(1-x²))/I(x)` with the elliptic
//! modulus built from (λ, γ); the dispersion switches from `(2k+1)ε̂` above
//! λ = 1 to `2kε̂` below, where the zero mode freezes at `(1/2, 1/2)`. All of
//! it lives outside the circle λ² + γ² = 1.
//!
//! ```bash
//! cargo run --example xy_flows
//! ```

use majolab::chain::{dispersion, flow, mode_distribution, ChainModel, FlowFamily};
use majolab::error::Error;
use majolab::flow::{flow_report, FlowDirection};

fn run_flow(label: &str, family: &FlowFamily, grid: &[f64], direction: FlowDirection) {
    let chain_flow = flow(family, grid, 12).unwrap();
    let report = flow_report(&chain_flow.distributions(), direction, 1e-12).unwrap();
    println!("{label}");
    println!("{:>8} {:>12} {:>14}", "param", "λ_max", "entropy");
    for point in &chain_flow.points {
        println!(
            "{:>8} {:>12.8} {:>14.8}",
            point.param,
            point.spectrum.weights.largest(),
            point.spectrum.weights.shannon_entropy(),
        );
    }
    println!(
        "  fine-grained majorization ({}): {}\n",
        match direction {
            FlowDirection::AscendingMajorizes => "ascending majorizes",
            FlowDirection::DescendingMajorizes => "descending majorizes",
        },
        report.levels.fine_grained
    );
}

fn main() {
    run_flow(
        "field sweep above the branch line, γ = 0.5:",
        &FlowFamily::XyLambda { gamma: 0.5 },
        &[1.1, 1.5, 2.0, 5.0],
        FlowDirection::AscendingMajorizes,
    );
    run_flow(
        "field sweep below the branch line, γ = 0.5:",
        &FlowFamily::XyLambda { gamma: 0.5 },
        &[0.88, 0.92, 0.96, 0.99],
        FlowDirection::DescendingMajorizes,
    );
    run_flow(
        "anisotropy sweep at λ = 1.5:",
        &FlowFamily::XyGamma { lambda: 1.5 },
        &[0.3, 0.6, 1.0, 1.5],
        FlowDirection::DescendingMajorizes,
    );
    run_flow(
        "anisotropy sweep at λ = 0.95:",
        &FlowFamily::XyGamma { lambda: 0.95 },
        &[0.4, 0.7, 1.0],
        FlowDirection::DescendingMajorizes,
    );

    println!("the frozen zero mode below λ = 1:");
    for &(lambda, gamma) in &[(0.95, 0.4), (0.9, 0.6), (0.5, 0.9)] {
        let spectrum = dispersion(&ChainModel::Xy { lambda, gamma }, 1).unwrap();
        let mode0 = mode_distribution(spectrum.energies[0]);
        println!(
            "  λ = {lambda}, γ = {gamma}: mode 0 = ({}, {})",
            mode0.weights()[0],
            mode0.weights()[1]
        );
    }

    println!("\nregion boundaries are rejected, not extrapolated:");
    for model in [
        ChainModel::Xy {
            lambda: 0.5,
            gamma: 0.1,
        },
        ChainModel::Xy {
            lambda: 1.0,
            gamma: 1.0,
        },
    ] {
        if let Err(e) = model.validate() {
            println!("  {e}");
        }
    }
    if let Err(e @ Error::GridCrossesRegionBoundary(_)) =
        flow(&FlowFamily::XyLambda { gamma: 0.5 }, &[0.9, 1.2], 8)
    {
        println!("  {e}");
    }
}
