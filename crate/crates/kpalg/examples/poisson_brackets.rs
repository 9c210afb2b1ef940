//! Poisson brackets from a generator table: level-set structures, brackets
//! of localized elements, the Jacobi certificate, and centrality of the
//! relations.
//!
//! Run with `cargo run --example poisson_brackets`.

use kpalg::poisson::{level_set_table, BracketTable};
use kpalg::poly::MonomialOrder;
use kpalg::ring::RingCtx;

fn main() {
    // Level-set structure of C = 1/2 (x^2 + 2 y^2 + 3 z^2 - 1):
    // {x,y} = d_z C, {y,z} = d_x C, {z,x} = d_y C.
    let gens: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let free = RingCtx::new(gens.clone(), vec![], vec![], MonomialOrder::grevlex(3)).unwrap();
    let c = free.parse_poly("1/2*(x^2+2*y^2+3*z^2-1)").unwrap();
    let ctx = RingCtx::new(gens, vec![c.clone()], vec![], MonomialOrder::grevlex(3)).unwrap();
    let table = level_set_table(&ctx, &c).unwrap();
    println!("{{x,y}} = {}", ctx.format_elem(table.entry(0, 1)));
    println!("{{y,z}} = {}", ctx.format_elem(table.entry(1, 2)));
    println!("{{z,x}} = {}", ctx.format_elem(table.entry(2, 0)));

    // Brackets extend to arbitrary elements by Leibniz.
    let a = ctx.parse_elem("x^2").unwrap();
    let b = ctx.parse_elem("y*z").unwrap();
    println!(
        "{{x^2, y*z}} = {}",
        ctx.format_elem(&table.bracket(&ctx, &a, &b))
    );

    // Certificates: Jacobi on generator triples, relations central.
    println!("jacobi holds      : {}", table.jacobi_check(&ctx).is_none());
    println!(
        "relations central : {}",
        table.relations_central(&ctx).is_none()
    );

    // A table that is NOT Poisson: {x,y} = z, {y,z} = x, {z,x} = x.
    let free3 = RingCtx::new(
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect(),
        vec![],
        vec![],
        MonomialOrder::grevlex(3),
    )
    .unwrap();
    let broken = BracketTable::from_upper(
        &free3,
        &[
            (0, 1, free3.gen_elem(2)),
            (1, 2, free3.gen_elem(0)),
            (0, 2, free3.neg(&free3.gen_elem(0))),
        ],
    )
    .unwrap();
    match broken.jacobi_check(&free3) {
        Some(w) => println!(
            "broken table: jacobiator on ({},{},{}) = {}",
            w.triple.0 + 1,
            w.triple.1 + 1,
            w.triple.2 + 1,
            free3.format_elem(&w.residual)
        ),
        None => println!("broken table unexpectedly passed"),
    }
}
