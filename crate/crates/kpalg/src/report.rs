//! Command dispatch and report assembly.
//!
//! Every command produces a [`Report`] whose text lines and JSON block
//! carry the same values; rendering picks one. Reports are deterministic:
//! identical config and command give byte-identical output (headers with
//! timestamps are the binary's business, not ours).

use serde_json::{json, Map, Value};

use crate::config::{AlgebraConfig, BuiltAlgebra};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::groebner::Budget;
use crate::kp::KPCtx;
use crate::matrix::{RingMatrix, Shape};
use crate::ring::RingCtx;
use crate::skewnf::{block_diagonalize, build_metric};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandKind {
    Jacobi,
    KpCheck,
    BlockDiag,
    Construct,
    Christoffel,
    Curvature,
    Ricci,
    Scalar,
    Laplacian(String),
    VerifyAll,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Jacobi => "jacobi",
            CommandKind::KpCheck => "kp-check",
            CommandKind::BlockDiag => "blockdiag",
            CommandKind::Construct => "construct",
            CommandKind::Christoffel => "christoffel",
            CommandKind::Curvature => "curvature",
            CommandKind::Ricci => "ricci",
            CommandKind::Scalar => "scalar",
            CommandKind::Laplacian(_) => "laplacian",
            CommandKind::VerifyAll => "verify-all",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    /// True when some check in the report failed (exit code 4).
    pub failed: bool,
}

impl Report {
    fn new(command: &CommandKind) -> Self {
        let mut map = Map::new();
        map.insert("command".into(), Value::String(command.name().into()));
        Report {
            lines: Vec::new(),
            json: Value::Object(map),
            failed: false,
        }
    }

    fn put(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.json {
            map.insert(key.to_string(), value);
        }
    }

    fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn render_text(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }

    pub fn render_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.json).expect("report json");
        out.push('\n');
        out
    }
}

fn matrix_value(ctx: &RingCtx, m: &RingMatrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|e| Value::String(ctx.format_elem(e)))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn matrix_lines(report: &mut Report, ctx: &RingCtx, label: &str, m: &RingMatrix) {
    for (i, row) in m.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|e| ctx.format_elem(e)).collect();
        report.line(format!("{label}[{}] = [{}]", i + 1, cells.join(", ")));
    }
}

/// Run a command against a parsed config.
pub fn run(command: &CommandKind, cfg: &AlgebraConfig, budget: &Budget) -> Result<Report> {
    let built = cfg.build(budget)?;
    let mut report = Report::new(command);
    match command {
        CommandKind::Jacobi => run_jacobi(&built, &mut report),
        CommandKind::KpCheck => run_kp_check(&built, &mut report)?,
        CommandKind::BlockDiag => run_blockdiag(&built, &mut report)?,
        CommandKind::Construct => run_construct(&built, &mut report)?,
        CommandKind::Christoffel
        | CommandKind::Curvature
        | CommandKind::Ricci
        | CommandKind::Scalar
        | CommandKind::Laplacian(_)
        | CommandKind::VerifyAll => {
            let kp = built.verified_kp()?;
            run_geometry(command, &kp, &mut report)?;
        }
    }
    Ok(report)
}

fn run_jacobi(built: &BuiltAlgebra, report: &mut Report) {
    let ctx = &built.ring;
    match built.table.relations_central(ctx) {
        None => {
            report.line("relations central: PASS");
            report.put("relations_central", json!({"status": "pass"}));
        }
        Some(w) => {
            report.failed = true;
            let residual = ctx.format_elem(&w.residual);
            report.line(format!(
                "relations central: FAIL at generator {} with relation #{}: residual {}",
                w.gen + 1,
                w.relation + 1,
                residual
            ));
            report.put(
                "relations_central",
                json!({"status": "fail", "generator": w.gen + 1, "relation": w.relation + 1, "residual": residual}),
            );
        }
    }
    match built.table.jacobi_check(ctx) {
        None => {
            report.line("jacobi identity (generator triples): PASS");
            report.put("jacobi", json!({"status": "pass"}));
        }
        Some(w) => {
            report.failed = true;
            let residual = ctx.format_elem(&w.residual);
            report.line(format!(
                "jacobi identity (generator triples): FAIL at ({}, {}, {}): residual {}",
                w.triple.0 + 1,
                w.triple.1 + 1,
                w.triple.2 + 1,
                residual
            ));
            report.put(
                "jacobi",
                json!({
                    "status": "fail",
                    "triple": [w.triple.0 + 1, w.triple.1 + 1, w.triple.2 + 1],
                    "residual": residual
                }),
            );
        }
    }
}

fn poisson_report(built: &BuiltAlgebra, report: &mut Report) {
    run_jacobi(built, report);
}

fn assemble_for_check(built: &BuiltAlgebra, report: &mut Report) -> Result<KPCtx> {
    if built.construct {
        let p = RingMatrix::new(
            &built.ring,
            built.table.entries().clone(),
            Shape::Antisymmetric,
        )?;
        let mc = build_metric(&built.ring, &p)?;
        report.line(format!(
            "constructed localization: lambda = {}, det(V) = {}",
            mc.ctx.format_elem(&mc.lambda),
            mc.ctx.format_elem(&mc.det_v)
        ));
        report.put(
            "construction",
            json!({
                "lambda": mc.ctx.format_elem(&mc.lambda),
                "det_v": mc.ctx.format_elem(&mc.det_v),
            }),
        );
        let table = built.table.widened(&mc.ctx);
        KPCtx::assemble(mc.ctx.clone(), table, mc.g.clone(), mc.eta.clone())
    } else {
        built.assemble_kp()
    }
}

fn run_kp_check(built: &BuiltAlgebra, report: &mut Report) -> Result<()> {
    poisson_report(built, report);
    let kp = assemble_for_check(built, report)?;
    match kp.kp_verify() {
        None => {
            report.line("defining relation (eta P g P g P = -P): PASS");
            report.put("defining_relation", json!({"status": "pass"}));
        }
        Some(w) => {
            report.failed = true;
            report.line(format!(
                "defining relation (eta P g P g P = -P): FAIL at generator pair ({}, {})",
                w.pair.0 + 1,
                w.pair.1 + 1
            ));
            let residual = kp.kp_residual_matrix();
            matrix_lines(report, kp.ring(), "residual", &residual);
            report.put(
                "defining_relation",
                json!({
                    "status": "fail",
                    "pair": [w.pair.0 + 1, w.pair.1 + 1],
                    "residual_matrix": matrix_value(kp.ring(), &residual)
                }),
            );
        }
    }
    Ok(())
}

fn run_blockdiag(built: &BuiltAlgebra, report: &mut Report) -> Result<()> {
    let ctx = &built.ring;
    let p = RingMatrix::new(ctx, built.table.entries().clone(), Shape::Antisymmetric)?;
    let bd = block_diagonalize(ctx, &p)?;
    matrix_lines(report, ctx, "V", &bd.v);
    for (k, l) in bd.lambdas.iter().enumerate() {
        report.line(format!("lambda_{} = {}", k + 1, ctx.format_elem(l)));
    }
    report.line(format!(
        "residual zero block: {}",
        if bd.residual_zero_block { "yes" } else { "no" }
    ));
    matrix_lines(report, ctx, "P0", &bd.p0);
    report.put("v", matrix_value(ctx, &bd.v));
    report.put(
        "lambdas",
        Value::Array(
            bd.lambdas
                .iter()
                .map(|l| Value::String(ctx.format_elem(l)))
                .collect(),
        ),
    );
    report.put("residual_zero_block", Value::Bool(bd.residual_zero_block));
    report.put("p0", matrix_value(ctx, &bd.p0));
    Ok(())
}

fn run_construct(built: &BuiltAlgebra, report: &mut Report) -> Result<()> {
    built.certify_poisson()?;
    let p = RingMatrix::new(
        &built.ring,
        built.table.entries().clone(),
        Shape::Antisymmetric,
    )?;
    let mc = build_metric(&built.ring, &p)?;
    let ctx = &mc.ctx;
    matrix_lines(report, ctx, "V", &mc.v);
    for (k, l) in mc.lambdas.iter().enumerate() {
        report.line(format!("lambda_{} = {}", k + 1, ctx.format_elem(l)));
    }
    report.line(format!("lambda = {}", ctx.format_elem(&mc.lambda)));
    report.line(format!("det(V) = {}", ctx.format_elem(&mc.det_v)));
    matrix_lines(report, ctx, "g", &mc.g);
    report.line(format!("eta = {}", ctx.format_elem(&mc.eta)));
    let denoms: Vec<String> = ctx.denoms().iter().map(|d| ctx.format_poly(d)).collect();
    report.line(format!("denominators: [{}]", denoms.join(", ")));

    report.put("v", matrix_value(ctx, &mc.v));
    report.put(
        "lambdas",
        Value::Array(
            mc.lambdas
                .iter()
                .map(|l| Value::String(ctx.format_elem(l)))
                .collect(),
        ),
    );
    report.put("lambda", Value::String(ctx.format_elem(&mc.lambda)));
    report.put("det_v", Value::String(ctx.format_elem(&mc.det_v)));
    report.put("g", matrix_value(ctx, &mc.g));
    report.put("eta", Value::String(ctx.format_elem(&mc.eta)));
    report.put(
        "denominators",
        Value::Array(denoms.into_iter().map(Value::String).collect()),
    );

    let table = built.table.widened(ctx);
    let kp = KPCtx::assemble(ctx.clone(), table, mc.g.clone(), mc.eta.clone())?;
    match kp.kp_verify() {
        None => {
            report.line("defining relation in the localized context: PASS");
            report.put("defining_relation", json!({"status": "pass"}));
        }
        Some(w) => {
            report.failed = true;
            report.line(format!(
                "defining relation in the localized context: FAIL at ({}, {})",
                w.pair.0 + 1,
                w.pair.1 + 1
            ));
            report.put(
                "defining_relation",
                json!({"status": "fail", "pair": [w.pair.0 + 1, w.pair.1 + 1]}),
            );
        }
    }
    Ok(())
}

fn run_geometry(command: &CommandKind, kp: &KPCtx, report: &mut Report) -> Result<()> {
    let ctx = kp.ring();
    let geo = Geometry::new(kp);
    match command {
        CommandKind::Christoffel => {
            let gamma = geo.christoffel();
            let m = kp.dim();
            let mut map = Map::new();
            let mut nonzero = 0usize;
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        let e = &gamma.gamma[i][j][k];
                        if ctx.is_zero(e) {
                            continue;
                        }
                        nonzero += 1;
                        let text = ctx.format_elem(e);
                        report.line(format!("Gamma[{},{},{}] = {}", i + 1, j + 1, k + 1, text));
                        map.insert(
                            format!("{},{},{}", i + 1, j + 1, k + 1),
                            Value::String(text),
                        );
                    }
                }
            }
            report.line(format!("nonzero components: {nonzero} of {}", m * m * m));
            report.put("gamma", Value::Object(map));
            report.put("nonzero", Value::from(nonzero));
        }
        CommandKind::Curvature => {
            let rm = geo.riemann();
            let m = kp.dim();
            let mut map = Map::new();
            let mut nonzero = 0usize;
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        for l in 0..m {
                            let e = &rm.rlow[i][j][k][l];
                            if ctx.is_zero(e) {
                                continue;
                            }
                            nonzero += 1;
                            let text = ctx.format_elem(e);
                            report.line(format!(
                                "R[{},{},{},{}] = {}",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1,
                                text
                            ));
                            map.insert(
                                format!("{},{},{},{}", i + 1, j + 1, k + 1, l + 1),
                                Value::String(text),
                            );
                        }
                    }
                }
            }
            report.line(format!(
                "nonzero components: {nonzero} of {}",
                m * m * m * m
            ));
            report.put("rlow", Value::Object(map));
            report.put("nonzero", Value::from(nonzero));
        }
        CommandKind::Ricci => {
            let m = kp.dim();
            let mut rows = Vec::new();
            for i in 0..m {
                let mut row = Vec::new();
                for j in 0..m {
                    let e = geo.ricci(&kp.gen_deriv(i), &kp.gen_deriv(j));
                    let text = ctx.format_elem(&e);
                    report.line(format!("Ric[{},{}] = {}", i + 1, j + 1, text));
                    row.push(Value::String(text));
                }
                rows.push(Value::Array(row));
            }
            report.put("ricci", Value::Array(rows));
        }
        CommandKind::Scalar => {
            let s = geo.scalar();
            let text = ctx.format_elem(&s);
            report.line(format!("S = {text}"));
            report.put("scalar", Value::String(text));
        }
        CommandKind::Laplacian(expr) => {
            let f = ctx.parse_elem(expr).map_err(|e| match e {
                Error::UnknownIdentifier { name, .. } => {
                    Error::Semantic(format!("unknown generator `{name}` in expression"))
                }
                other => other,
            })?;
            let lap = geo.laplacian(&f);
            let f_text = ctx.format_elem(&f);
            let text = ctx.format_elem(&lap);
            report.line(format!("laplacian({f_text}) = {text}"));
            report.put("input", Value::String(f_text));
            report.put("laplacian", Value::String(text));
        }
        CommandKind::VerifyAll => {
            // The KP context arrived verified; report the families.
            report.line("relations central: PASS");
            report.line("jacobi identity (generator triples): PASS");
            report.line("defining relation (eta P g P g P = -P): PASS");
            let mut checks = Map::new();
            checks.insert("relations-central".into(), json!({"status": "pass"}));
            checks.insert("jacobi".into(), json!({"status": "pass"}));
            checks.insert("defining-relation".into(), json!({"status": "pass"}));

            // Exact projection identities: D g D = D, and symmetry of
            // g D g (self-adjointness of the projection).
            let d = kp.d_matrix();
            let g = kp.metric();
            let dgd = d.mul(ctx, g).mul(ctx, d);
            let idempotent = dgd.equals(ctx, d);
            let gdg = g.mul(ctx, d).mul(ctx, g);
            let self_adjoint = gdg.transpose().equals(ctx, &gdg);
            for (name, ok) in [
                ("projection-idempotent", idempotent),
                ("projection-self-adjoint", self_adjoint),
            ] {
                report.line(format!("{name}: {}", if ok { "PASS" } else { "FAIL" }));
                checks.insert(
                    name.into(),
                    json!({"status": if ok { "pass" } else { "fail" }}),
                );
                if !ok {
                    report.failed = true;
                }
            }

            let suite = geo.verify_properties();
            for check in &suite.checks {
                if check.passed() {
                    report.line(format!("{}: PASS (residual 0)", check.name));
                    checks.insert(check.name.into(), json!({"status": "pass"}));
                } else {
                    report.failed = true;
                    let worst = check.worst_residual.clone().unwrap_or_default();
                    report.line(format!(
                        "{}: FAIL ({} violations; worst residual {})",
                        check.name, check.violations, worst
                    ));
                    checks.insert(
                        check.name.into(),
                        json!({"status": "fail", "violations": check.violations, "worst_residual": worst}),
                    );
                }
            }
            report.put("checks", Value::Object(checks));
            report.line(if report.failed {
                "overall: FAIL"
            } else {
                "overall: PASS"
            });
            report.put(
                "overall",
                Value::String(if report.failed { "fail" } else { "pass" }.into()),
            );
        }
        _ => unreachable!("geometry dispatcher"),
    }
    Ok(())
}
