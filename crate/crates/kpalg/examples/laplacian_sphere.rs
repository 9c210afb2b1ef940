//! Gradient, divergence, and Laplacian on the unit sphere. Restrictions
//! of harmonic polynomials come out as eigenfunctions with the familiar
//! -l(l+1) eigenvalues, computed here purely algebraically.
//!
//! Run with `cargo run --example laplacian_sphere`.

use kpalg::fixtures;
use kpalg::Geometry;

fn main() {
    let kp = fixtures::sphere().unwrap();
    let ctx = kp.ring();
    let geo = Geometry::new(&kp);

    let z = ctx.gen_elem(2);
    let grad = geo.gradient(&z);
    let coeffs: Vec<String> = grad.coeffs.iter().map(|e| ctx.format_elem(e)).collect();
    println!("grad z (coefficients on D^i) = [{}]", coeffs.join(", "));
    println!("div(grad z) = {}", ctx.format_elem(&geo.divergence(&grad)));

    for expr in ["z", "x", "z^2", "x*y", "x^2 - y^2", "z^3"] {
        let f = ctx.parse_elem(expr).unwrap();
        let lap = geo.laplacian(&f);
        println!("laplacian({expr}) = {}", ctx.format_elem(&lap));
    }
}
