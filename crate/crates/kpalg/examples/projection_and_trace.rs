//! The D-matrix as an orthogonal projection: derivations D^i, projection
//! of free-module vectors, the induced metric on derivations, and the
//! trace of module endomorphisms.
//!
//! Run with `cargo run --example projection_and_trace`.

use kpalg::fixtures;
use kpalg::RingMatrix;

fn main() {
    let kp = fixtures::ellipsoid(1, 2, 3).unwrap();
    let ctx = kp.ring();

    println!("D-matrix on the (1,2,3) quadric:");
    for row in kp.d_matrix().rows() {
        let cells: Vec<String> = row.iter().map(|e| ctx.format_elem(e)).collect();
        println!("  [{}]", cells.join(", "));
    }

    // D^i acts as a derivation; on generators it reads off the D-matrix.
    let z = ctx.gen_elem(2);
    println!("D^1(z) = {}", ctx.format_elem(&kp.d_apply(0, &z)));

    // The projection annihilates the normal direction (a x, b y, c z).
    let normal = vec![
        ctx.parse_elem("x").unwrap(),
        ctx.parse_elem("2*y").unwrap(),
        ctx.parse_elem("3*z").unwrap(),
    ];
    let projected = kp.project(&normal);
    let all_zero = projected.iter().all(|v| ctx.is_zero(v));
    println!("projection of the normal vector vanishes: {all_zero}");

    // A tangent vector is fixed.
    let tangent = vec![
        ctx.parse_elem("2*y").unwrap(),
        ctx.parse_elem("-x").unwrap(),
        ctx.zero(),
    ];
    let pt = kp.project(&tangent);
    let fixed = pt.iter().zip(&tangent).all(|(u, v)| ctx.elems_equal(u, v));
    println!("tangent vector (2y, -x, 0) is fixed   : {fixed}");

    // Induced metric on derivations: g(D^i, D^j) = D^{ij}.
    let d1 = kp.gen_deriv(0);
    let d2 = kp.gen_deriv(1);
    println!("g(D^1, D^2) = {}", ctx.format_elem(&kp.g_form(&d1, &d2)));

    // The trace of the identity map is the leaf dimension.
    let id = RingMatrix::identity(ctx, 3);
    println!("tr(Id) = {}", ctx.format_elem(&kp.trace(&id)));
}
