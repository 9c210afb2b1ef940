//! Congruence block-diagonalization of an antisymmetric matrix over a
//! polynomial ring, and the adjugate identity used to certify it.
//!
//! Run with `cargo run --example block_diagonalization`.

use kpalg::poly::MonomialOrder;
use kpalg::ring::RingCtx;
use kpalg::skewnf::{adjugate, block_diagonalize};
use kpalg::{RingMatrix, Shape};

fn main() {
    let gens: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let ctx = RingCtx::new(gens, vec![], vec![], MonomialOrder::grevlex(3)).unwrap();

    // An antisymmetric 4x4 with polynomial entries.
    let e = |s: &str| ctx.parse_elem(s).unwrap();
    let entries = [
        ((0, 1), e("1+x")),
        ((0, 2), e("y")),
        ((0, 3), e("z")),
        ((1, 2), e("x*y")),
        ((1, 3), e("2")),
        ((2, 3), e("x-z")),
    ];
    let mut rows = vec![vec![ctx.zero(); 4]; 4];
    for ((i, j), v) in entries {
        rows[i][j] = v.clone();
        rows[j][i] = ctx.neg(&v);
    }
    let p = RingMatrix::new(&ctx, rows, Shape::Antisymmetric).unwrap();

    let bd = block_diagonalize(&ctx, &p).unwrap();
    println!("V^T P V block-diagonal form:");
    for row in bd.p0.rows() {
        let cells: Vec<String> = row.iter().map(|c| ctx.format_elem(c)).collect();
        println!("  [{}]", cells.join(", "));
    }
    for (k, l) in bd.lambdas.iter().enumerate() {
        println!("lambda_{} = {}", k + 1, ctx.format_elem(l));
    }
    println!("residual zero block: {}", bd.residual_zero_block);

    // The transform V and its adjugate certificate adj(V) V = det(V) Id.
    let (adj, det) = adjugate(&ctx, &bd.v).unwrap();
    println!("det(V) = {}", ctx.format_elem(&det));
    let want = RingMatrix::identity(&ctx, 4).scale_elem(&ctx, &det);
    println!(
        "adj(V) * V == det(V) * Id: {}",
        adj.mul(&ctx, &bd.v).equals(&ctx, &want)
    );
}
