//! Verifying the defining relation eta P g P g P = -P on the quadric
//! level sets, and watching it fail when eta is perturbed.
//!
//! Run with `cargo run --example kp_verification`.

use kpalg::fixtures;
use kpalg::poly::rat;

fn main() {
    for (a, b, c) in [(1, 1, 1), (1, 2, 3), (3, 2, 7)] {
        let kp = fixtures::ellipsoid(a, b, c).unwrap();
        println!(
            "quadric ({a},{b},{c}): defining relation {}",
            if kp.kp_verify().is_none() {
                "holds"
            } else {
                "fails"
            }
        );
    }

    // Doubling eta breaks the relation; the witness carries the failing
    // generator pair and the residual entry.
    let broken = fixtures::sphere_with_eta_scaled(rat(2)).unwrap();
    match broken.kp_verify() {
        Some(w) => {
            println!(
                "sphere with 2*eta: fails at pair ({}, {}), residual {}",
                w.pair.0 + 1,
                w.pair.1 + 1,
                broken.ring().format_elem(&w.residual)
            );
            println!("full residual matrix eta P g P g P + P:");
            let residual = broken.kp_residual_matrix();
            for row in residual.rows() {
                let cells: Vec<String> = row.iter().map(|e| broken.ring().format_elem(e)).collect();
                println!("  [{}]", cells.join(", "));
            }
        }
        None => println!("sphere with 2*eta unexpectedly passed"),
    }
}
