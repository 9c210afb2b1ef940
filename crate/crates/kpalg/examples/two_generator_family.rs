//! The two-generator family with p = {x,y} = 1 and lambda = x: orthogonal
//! generating derivations, the connection, the commutator, and the scalar
//! curvature S = -1/lambda.
//!
//! Run with `cargo run --example two_generator_family`.

use kpalg::fixtures;
use kpalg::Geometry;

fn main() {
    let kp = fixtures::two_generator_family().unwrap();
    let ctx = kp.ring();
    let geo = Geometry::new(&kp);

    println!("D-matrix (diag(lambda, lambda)):");
    for row in kp.d_matrix().rows() {
        let cells: Vec<String> = row.iter().map(|e| ctx.format_elem(e)).collect();
        println!("  [{}]", cells.join(", "));
    }

    let dx = kp.gen_deriv(0);
    let dy = kp.gen_deriv(1);
    println!("g(D^x, D^x) = {}", ctx.format_elem(&kp.g_form(&dx, &dx)));
    println!("g(D^x, D^y) = {}", ctx.format_elem(&kp.g_form(&dx, &dy)));

    // The commutator [D^x, D^y] and the connection cross terms: the
    // cross terms are each half the commutator, so their difference
    // reproduces it (torsion-freeness).
    let lie = geo.lie_bracket(&dx, &dy);
    let vals: Vec<String> = kp.values(&lie).iter().map(|e| ctx.format_elem(e)).collect();
    println!("[D^x, D^y] values on (x, y) = [{}]", vals.join(", "));
    let nxy = geo.nabla(&dx, &dy);
    let vals: Vec<String> = kp.values(&nxy).iter().map(|e| ctx.format_elem(e)).collect();
    println!("nabla_x D^y values on (x, y) = [{}]", vals.join(", "));

    println!("S = {}", ctx.format_elem(&geo.scalar()));

    // Flat member of the family: lambda = 1 gives the symplectic plane.
    let flat = fixtures::symplectic_plane().unwrap();
    let flat_geo = Geometry::new(&flat);
    println!(
        "flat member: S = {}",
        flat.ring().format_elem(&flat_geo.scalar())
    );
}
