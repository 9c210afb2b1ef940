//! From a Poisson bracket table to a full Kähler–Poisson structure: block
//! diagonalization produces (V, lambda_k), the metric g = V g0 V^T and
//! eta = 1/lambda^2 follow, and the defining relation is verified in the
//! ring localized at lambda and det(V).
//!
//! Run with `cargo run --example metric_construction`.

use kpalg::fixtures;
use kpalg::{RingMatrix, Shape};

fn main() {
    // The su(2)-type linear table {x,y} = z, {y,z} = x, {z,x} = y.
    let (ctx, table) = fixtures::su2_table().unwrap();
    println!("input brackets on the free ring in x, y, z:");
    println!("  {{x,y}} = {}", ctx.format_elem(table.entry(0, 1)));
    println!("  {{y,z}} = {}", ctx.format_elem(table.entry(1, 2)));
    println!("  {{z,x}} = {}", ctx.format_elem(table.entry(2, 0)));

    let (kp, mc) = fixtures::construct_kp(&ctx, &table).unwrap();
    let ext = &mc.ctx;
    println!("lambda  = {}", ext.format_elem(&mc.lambda));
    println!("det(V)  = {}", ext.format_elem(&mc.det_v));
    println!("eta     = {}", ext.format_elem(&mc.eta));
    println!("metric g = V g0 V^T:");
    for row in mc.g.rows() {
        let cells: Vec<String> = row.iter().map(|c| ext.format_elem(c)).collect();
        println!("  [{}]", cells.join(", "));
    }
    let denoms: Vec<String> = ext.denoms().iter().map(|d| ext.format_poly(d)).collect();
    println!("localized at: {}", denoms.join(", "));

    // The identity certified before cancelling det(V)^2.
    let p = RingMatrix::new(ext, kp.table().entries().clone(), Shape::Antisymmetric).unwrap();
    let pgpgp = p.mul(ext, &mc.g).mul(ext, &p).mul(ext, &mc.g).mul(ext, &p);
    let sum = pgpgp.add(ext, &p.scale_elem(ext, &ext.mul(&mc.lambda, &mc.lambda)));
    let det_sq = ext.mul(&mc.det_v, &mc.det_v);
    println!(
        "det(V)^2 (P g P g P + lambda^2 P) == 0: {}",
        sum.scale_elem(ext, &det_sq).is_zero(ext)
    );
    println!(
        "defining relation in the localization: {}",
        kp.kp_verify().is_none()
    );
}
