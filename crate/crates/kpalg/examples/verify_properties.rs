//! The exact identity suite: Koszul formula, torsion-freeness, metric
//! compatibility, both Bianchi identities, and the curvature symmetries,
//! all evaluated on every generator index tuple with zero tolerance.
//!
//! Run with `cargo run --example verify_properties`.

use kpalg::fixtures;
use kpalg::Geometry;

fn main() {
    for (name, kp) in [
        ("sphere", fixtures::sphere().unwrap()),
        ("quadric (1,2,3)", fixtures::ellipsoid(1, 2, 3).unwrap()),
        (
            "two-generator family",
            fixtures::two_generator_family().unwrap(),
        ),
        ("su(2) constructed", fixtures::su2_constructed().unwrap().0),
    ] {
        println!("{name}:");
        let geo = Geometry::new(&kp);
        let report = geo.verify_properties();
        for check in &report.checks {
            if check.passed() {
                println!("  {:<22} PASS", check.name);
            } else {
                println!(
                    "  {:<22} FAIL ({} violations; worst residual {})",
                    check.name,
                    check.violations,
                    check.worst_residual.clone().unwrap_or_default()
                );
            }
        }
        println!(
            "  overall: {}",
            if report.all_passed() { "PASS" } else { "FAIL" }
        );
    }
}
