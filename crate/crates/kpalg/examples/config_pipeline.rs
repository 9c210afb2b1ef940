//! Driving the engine from a config file, the way the `kpalg` binary
//! does: parse, elaborate, run a command, and read the report.
//!
//! Run with `cargo run --example config_pipeline`.

use kpalg::config::parse_config_text;
use kpalg::report::{run, CommandKind};
use kpalg::Budget;

const CONFIG: &str = "\
# A cylinder as a level set: C = 1/2 (2x^2 + 2y^2 - 1).
generators: x y z
levelset: 1/2*(2*x^2+2*y^2-1)
denominator: 4*x^2+4*y^2
metric: euclidean
eta: 1 / (4*x^2+4*y^2)
";

fn main() {
    let cfg = parse_config_text(CONFIG).unwrap();
    let budget = Budget::default();

    for command in [
        CommandKind::Jacobi,
        CommandKind::KpCheck,
        CommandKind::Scalar,
        CommandKind::Laplacian("z".to_string()),
    ] {
        let report = run(&command, &cfg, &budget).unwrap();
        println!("--- {} ---", command.name());
        print!("{}", report.render_text());
    }

    // The JSON block mirrors the text values.
    let report = run(&CommandKind::Scalar, &cfg, &budget).unwrap();
    println!("--- scalar, machine block ---");
    print!("{}", report.render_json());
}
