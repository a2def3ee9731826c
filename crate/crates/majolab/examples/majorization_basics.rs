//! Tour of the majorization core: canonical probability vectors, cumulant
//! comparisons, Schur-concave entropy, doubly stochastic mixing, and the
//! direct-product lemma.
//!
//! ```bash
//! cargo run --example majorization_basics
//! ```

use majolab::dist::{
    apply_doubly_stochastic, convex_permutation_mix, majorizes, random_majorized_pair,
    Distribution, DEFAULT_TOL,
};

fn show(label: &str, d: &Distribution) {
    let weights: Vec<String> = d.weights().iter().map(|w| format!("{w:.4}")).collect();
    println!(
        "  {label} = ({})   H = {:.6} nats",
        weights.join(", "),
        d.shannon_entropy()
    );
}

fn main() {
    println!("== canonical form ==");
    let x = Distribution::new(&[0.2, 0.5, 0.3]).unwrap();
    show("canonicalize([0.2, 0.5, 0.3])", &x);
    println!("  cumulants: {:?}", x.cumulants());

    println!("\n== the order and its verdicts ==");
    let flat = Distribution::new(&[0.5, 0.5]).unwrap();
    let peaked = Distribution::new(&[1.0, 0.0]).unwrap();
    let report = majorizes(&flat, &peaked, DEFAULT_TOL);
    println!("  (1/2, 1/2) vs (1, 0): {:?}", report.verdict);

    let a = Distribution::new(&[0.6, 0.25, 0.15]).unwrap();
    let b = Distribution::new(&[0.5, 0.45, 0.05]).unwrap();
    let report = majorizes(&a, &b, DEFAULT_TOL);
    println!(
        "  (0.6, 0.25, 0.15) vs (0.5, 0.45, 0.05): {:?}, first violation at cumulant {:?}",
        report.verdict, report.first_violation
    );

    println!("\n== x = D y is majorized by y (and gains entropy) ==");
    let y = Distribution::new(&[0.6, 0.3, 0.1]).unwrap();
    let d = vec![
        vec![0.8, 0.0, 0.2],
        vec![0.2, 0.8, 0.0],
        vec![0.0, 0.2, 0.8],
    ];
    let x = apply_doubly_stochastic(&d, &y, DEFAULT_TOL).unwrap();
    show("y", &y);
    show("x = (0.8 I + 0.2 C) y", &x);
    println!(
        "  verdict(x, y): {:?}",
        majorizes(&x, &y, DEFAULT_TOL).verdict
    );

    println!("\n== convex permutation mixes ==");
    let mixed = convex_permutation_mix(&y, &[(0.5, vec![0, 1, 2]), (0.5, vec![2, 1, 0])]).unwrap();
    show("half identity, half reversal", &mixed);

    println!("\n== fabricated random pairs (seeded, reproducible) ==");
    for seed in [7, 8, 9] {
        let (x, y) = random_majorized_pair(5, 3, seed);
        println!(
            "  seed {seed}: verdict(x, y) = {:?}, H(x) - H(y) = {:+.6}",
            majorizes(&x, &y, DEFAULT_TOL).verdict,
            x.shannon_entropy() - y.shannon_entropy()
        );
    }

    println!("\n== the direct-product lemma ==");
    let (p1, p2) = random_majorized_pair(3, 3, 21);
    let (q1, q2) = random_majorized_pair(4, 3, 22);
    let left = p1.direct_product(&q1);
    let right = p2.direct_product(&q2);
    println!(
        "  p1 ≺ p2 and q1 ≺ q2  ⇒  p1⊗q1 vs p2⊗q2: {:?} (lengths {} and {})",
        majorizes(&left, &right, DEFAULT_TOL).verdict,
        left.len(),
        right.len()
    );
    println!(
        "  entropy additivity check: H(p1⊗q1) - H(p1) - H(q1) = {:+.2e}",
        left.shannon_entropy() - p1.shannon_entropy() - q1.shannon_entropy()
    );
}
