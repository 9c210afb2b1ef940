//! Localized quotient rings: canonical normal forms, exact zero tests, and
//! fraction arithmetic over declared denominators.
//!
//! Run with `cargo run --example quotient_rings`.

use kpalg::poly::MonomialOrder;
use kpalg::ring::RingCtx;

fn main() {
    // The coordinate ring of the unit sphere, localized at
    // tau = x^2 + y^2 + z^2 (which is congruent to 1 on the sphere).
    let gens: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let free = RingCtx::new(gens.clone(), vec![], vec![], MonomialOrder::grevlex(3)).unwrap();
    let constraint = free.parse_poly("1/2*(x^2+y^2+z^2-1)").unwrap();
    let tau = free.parse_poly("x^2+y^2+z^2").unwrap();
    let ctx = RingCtx::new(gens, vec![constraint], vec![tau], MonomialOrder::grevlex(3)).unwrap();

    let e = ctx.parse_elem("x^2+y^2+z^2").unwrap();
    println!("x^2+y^2+z^2 mod the sphere  = {}", ctx.format_elem(&e));

    let f = ctx.parse_elem("x^2*z + y^2*z + z^3 - z").unwrap();
    println!("z*(x^2+y^2+z^2-1) is zero    : {}", ctx.is_zero(&f));

    // Fractions: the declared denominator folds away when it reduces to a
    // constant on the quotient.
    let g = ctx.parse_elem("x*y / (x^2+y^2+z^2)^3").unwrap();
    println!("x*y / tau^3                  = {}", ctx.format_elem(&g));

    // A free localization where the denominator is genuinely needed.
    let gens2: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
    let free2 = RingCtx::new(gens2.clone(), vec![], vec![], MonomialOrder::grevlex(2)).unwrap();
    let d = free2.parse_poly("x").unwrap();
    let loc = RingCtx::new(gens2, vec![], vec![d], MonomialOrder::grevlex(2)).unwrap();
    let a = loc.parse_elem("y / x^2").unwrap();
    let b = loc.parse_elem("1 / x").unwrap();
    println!(
        "y/x^2 + 1/x                  = {}",
        loc.format_elem(&loc.add(&a, &b))
    );
    println!("(y/x^2) * x^2                = {}", {
        let x2 = loc.parse_elem("x^2").unwrap();
        loc.format_elem(&loc.mul(&a, &x2))
    });
    // Units are rationals times declared denominator powers.
    let unit = loc.parse_elem("4*x^3").unwrap();
    let inv = loc.invert(&unit).unwrap();
    println!("1 / (4*x^3)                  = {}", loc.format_elem(&inv));
    let not_unit = loc.parse_elem("1+x").unwrap();
    println!(
        "1+x invertible               : {}",
        loc.invert(&not_unit).is_ok()
    );
}
