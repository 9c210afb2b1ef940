//! End-to-end tests of the `kpalg` binary: exit-code contract,
//! deterministic output, and the shipped fixture library.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn kpalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kpalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn scalar_on_sphere_fixture() {
    let out = kpalg(&[
        "scalar",
        "--config",
        fixture("sphere.kpcfg").to_str().unwrap(),
        "--no-header",
    ]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout(&out), "S = 2\n");
}

#[test]
fn kp_check_passes_on_shipped_structures() {
    for name in [
        "sphere.kpcfg",
        "sphere.json",
        "ellipsoid_1_2_3.kpcfg",
        "ellipsoid_2_1_1.kpcfg",
        "ellipsoid_1_1_5.kpcfg",
        "ellipsoid_3_2_7.kpcfg",
        "plane.kpcfg",
        "two_generator_lambda_x.kpcfg",
        "su2_construct.kpcfg",
    ] {
        let out = kpalg(&[
            "kp-check",
            "--config",
            fixture(name).to_str().unwrap(),
            "--no-header",
        ]);
        assert!(
            out.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = stdout(&out);
        assert!(
            text.contains("defining relation (eta P g P g P = -P): PASS"),
            "{name}: {text}"
        );
    }
}

#[test]
fn verify_all_exit_status() {
    let out = kpalg(&[
        "verify-all",
        "--config",
        fixture("plane.kpcfg").to_str().unwrap(),
        "--no-header",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn jacobi_failure_has_witness_and_nonzero_exit() {
    let out = kpalg(&[
        "jacobi",
        "--config",
        fixture("su2_nonjacobi.kpcfg").to_str().unwrap(),
        "--no-header",
    ]);
    assert_eq!(out.status.code(), Some(4), "verification failures exit 4");
    let text = stdout(&out);
    assert!(
        text.contains("jacobi identity (generator triples): FAIL at (1, 2, 3): residual z"),
        "{text}"
    );
}

#[test]
fn construct_emits_certificates() {
    let out = kpalg(&[
        "construct",
        "--config",
        fixture("su2_construct.kpcfg").to_str().unwrap(),
        "--no-header",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("lambda = z"), "{text}");
    assert!(text.contains("eta = 1 / z^2"), "{text}");
    assert!(
        text.contains("defining relation in the localized context: PASS"),
        "{text}"
    );
}

#[test]
fn blockdiag_reports_shape() {
    let out = kpalg(&[
        "blockdiag",
        "--config",
        fixture("su2_construct.kpcfg").to_str().unwrap(),
        "--no-header",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lambda_1 = z"), "{text}");
    assert!(text.contains("residual zero block: yes"), "{text}");
}

#[test]
fn deterministic_output() {
    let path = fixture("su2_construct.kpcfg");
    let args = [
        "construct",
        "--config",
        path.to_str().unwrap(),
        "--no-header",
    ];
    let a = kpalg(&args);
    let b = kpalg(&args);
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    let json_args = ["construct", "--config", path.to_str().unwrap(), "--json"];
    let a = kpalg(&json_args);
    let b = kpalg(&json_args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_output_mirrors_text() {
    let path = fixture("sphere.kpcfg");
    let text_out = kpalg(&["scalar", "--config", path.to_str().unwrap(), "--no-header"]);
    let json_out = kpalg(&["scalar", "--config", path.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    assert_eq!(v["command"], "scalar");
    let s = v["scalar"].as_str().unwrap();
    assert_eq!(stdout(&text_out), format!("S = {s}\n"));
}

#[test]
fn tensor_commands_emit_indexed_components() {
    let path = fixture("two_generator_lambda_x.kpcfg");
    let out = kpalg(&[
        "christoffel",
        "--config",
        path.to_str().unwrap(),
        "--no-header",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Gamma[1,1,1] = "), "{text}");
    assert!(text.contains("nonzero components: "), "{text}");

    let out = kpalg(&["curvature", "--config", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["rlow"].get("1,2,1,2").is_some(), "{v}");

    let out = kpalg(&["ricci", "--config", path.to_str().unwrap(), "--no-header"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("Ric[1,1] = -1/2"));
}

#[test]
fn laplacian_takes_an_expression() {
    let path = fixture("sphere.kpcfg");
    let out = kpalg(&[
        "laplacian",
        "z^2",
        "--config",
        path.to_str().unwrap(),
        "--no-header",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "laplacian(z^2) = -6*z^2 + 2\n");
}

#[test]
fn exit_code_contract() {
    // 1: missing file.
    let out = kpalg(&["scalar", "--config", "/nonexistent.kpcfg"]);
    assert_eq!(out.status.code(), Some(1));

    let dir = std::env::temp_dir();

    // 2: config parse error.
    let bad_key = dir.join("kpalg_bad_key.kpcfg");
    std::fs::write(&bad_key, "generators: x y\nwrong: 1\n").unwrap();
    let out = kpalg(&["scalar", "--config", bad_key.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // 3: semantic error (unknown generator in a bracket entry).
    let bad_gen = dir.join("kpalg_bad_gen.kpcfg");
    std::fs::write(
        &bad_gen,
        "generators: x y\nbracket: 1 2 : w\nmetric: euclidean\neta: 1\n",
    )
    .unwrap();
    let out = kpalg(&["scalar", "--config", bad_gen.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // 3: missing eta.
    let no_eta = dir.join("kpalg_no_eta.kpcfg");
    std::fs::write(
        &no_eta,
        "generators: x y\nbracket: 1 2 : 1\nmetric: euclidean\n",
    )
    .unwrap();
    let out = kpalg(&["scalar", "--config", no_eta.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // 4: verification failure (wrong eta).
    let wrong_eta = dir.join("kpalg_wrong_eta.kpcfg");
    std::fs::write(
        &wrong_eta,
        "generators: x y z\nlevelset: 1/2*(x^2+y^2+z^2-1)\ndenominator: x^2+y^2+z^2\nmetric: euclidean\neta: 2 / (x^2+y^2+z^2)\n",
    )
    .unwrap();
    let out = kpalg(&["scalar", "--config", wrong_eta.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(4),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // 5: resource budget exceeded.
    let heavy = dir.join("kpalg_heavy.kpcfg");
    std::fs::write(
        &heavy,
        "generators: x y\nrelation: x^2-y\nrelation: x*y-1\nbracket: 1 2 : 1\nmetric: euclidean\neta: 1\n",
    )
    .unwrap();
    let out = kpalg(&[
        "scalar",
        "--config",
        heavy.to_str().unwrap(),
        "--budget",
        "0",
    ]);
    assert_eq!(
        out.status.code(),
        Some(5),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn verify_all_runs_the_construction_mode() {
    let out = kpalg(&[
        "verify-all",
        "--config",
        fixture("su2_construct.kpcfg").to_str().unwrap(),
        "--no-header",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("curvature-symmetries: PASS"), "{text}");
    assert!(text.ends_with("overall: PASS\n"), "{text}");
}

#[test]
fn lex_order_gives_the_same_geometry() {
    let dir = std::env::temp_dir();
    let lex_sphere = dir.join("kpalg_lex_sphere.kpcfg");
    std::fs::write(
        &lex_sphere,
        "generators: x y z\norder: lex\nlevelset: 1/2*(x^2+y^2+z^2-1)\ndenominator: x^2+y^2+z^2\nmetric: euclidean\neta: 1 / (x^2+y^2+z^2)\n",
    )
    .unwrap();
    let out = kpalg(&[
        "scalar",
        "--config",
        lex_sphere.to_str().unwrap(),
        "--no-header",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "S = 2\n");

    let dup = dir.join("kpalg_dup_bracket.kpcfg");
    std::fs::write(
        &dup,
        "generators: x y\nbracket: 1 2 : 1\nbracket: 1 2 : x\nmetric: euclidean\neta: 1\n",
    )
    .unwrap();
    let out = kpalg(&["scalar", "--config", dup.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "duplicate bracket entries are semantic errors"
    );
}

#[test]
fn header_is_present_by_default() {
    let out = kpalg(&[
        "scalar",
        "--config",
        fixture("sphere.kpcfg").to_str().unwrap(),
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("# kpalg scalar"), "{text}");
    assert!(text.contains("unix "));
}
