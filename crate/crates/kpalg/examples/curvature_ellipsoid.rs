//! The Riemannian layer on a quadric level set: Christoffel symbols,
//! lowered curvature components, Ricci, and the scalar curvature
//! S = 2abc eta^2.
//!
//! Run with `cargo run --example curvature_ellipsoid`.

use kpalg::fixtures;
use kpalg::Geometry;

fn main() {
    let (a, b, c) = (1i64, 2i64, 3i64);
    let kp = fixtures::ellipsoid(a, b, c).unwrap();
    let ctx = kp.ring();
    let geo = Geometry::new(&kp);

    let gamma = geo.christoffel();
    let mut shown = 0;
    println!("some nonzero Christoffel symbols:");
    'outer: for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let e = &gamma.gamma[i][j][k];
                if !ctx.is_zero(e) {
                    println!(
                        "  Gamma[{},{},{}] = {}",
                        i + 1,
                        j + 1,
                        k + 1,
                        ctx.format_elem(e)
                    );
                    shown += 1;
                    if shown == 4 {
                        break 'outer;
                    }
                }
            }
        }
    }

    let rm = geo.riemann();
    println!("R[1,2,1,2] = {}", ctx.format_elem(&rm.rlow[0][1][0][1]));

    println!("Ricci on the generating derivations:");
    for i in 0..3 {
        let mut row = Vec::new();
        for j in 0..3 {
            row.push(ctx.format_elem(&geo.ricci(&kp.gen_deriv(i), &kp.gen_deriv(j))));
        }
        println!("  [{}]", row.join(", "));
    }

    let s = geo.scalar();
    println!("S = {}", ctx.format_elem(&s));
    // Cross-check the closed form 2abc eta^2.
    let eta = kp.eta();
    let expected = ctx.scale(&ctx.mul(eta, eta), &kpalg::poly::rat(2 * a * b * c));
    println!("S == 2abc*eta^2: {}", ctx.elems_equal(&s, &expected));
}
