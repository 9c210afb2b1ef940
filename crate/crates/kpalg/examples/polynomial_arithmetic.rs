//! Exact multivariate polynomials: parsing, arithmetic, derivatives,
//! multivariate division, and a small Gröbner basis.
//!
//! Run with `cargo run --example polynomial_arithmetic`.

use kpalg::groebner::{buchberger, divmod_multi, reduce, Budget};
use kpalg::parse::parse_poly;
use kpalg::poly::MonomialOrder;

fn main() {
    let gens: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let order = MonomialOrder::grevlex(3);
    let fmt = |p: &kpalg::Poly| p.format(&gens, &order);

    let p = parse_poly("(x+y)*(x-y) + 1/2*z^2", &gens).unwrap();
    println!("p           = {}", fmt(&p));
    println!("p * p       = {}", fmt(&p.mul(&p)));
    println!("d/dz p      = {}", fmt(&p.partial(2)));

    // Multivariate division: p = q*d + r with a fully reduced remainder.
    let d = parse_poly("1/2*(x^2+y^2+z^2-1)", &gens).unwrap();
    let (q, r) = divmod_multi(&p, std::slice::from_ref(&d), &order).unwrap();
    println!("dividing by {}", fmt(&d));
    println!("  quotient  = {}", fmt(&q[0]));
    println!("  remainder = {}", fmt(&r));
    let recomposed = q[0].mul(&d).add(&r);
    println!("  q*d + r == p: {}", recomposed == p);

    // A two-generator ideal and its reduced Gröbner basis.
    let gens2: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
    let lex = MonomialOrder::lex(2);
    let f1 = parse_poly("x^2 - y", &gens2).unwrap();
    let f2 = parse_poly("x*y - 1", &gens2).unwrap();
    let basis = buchberger(&[f1.clone(), f2.clone()], &lex, &Budget::default()).unwrap();
    println!("groebner basis of (x^2 - y, x*y - 1), lex:");
    for b in &basis {
        println!("  {}", b.format(&gens2, &lex));
    }
    let member = parse_poly("x^3 - 1", &gens2).unwrap();
    println!(
        "x^3 - 1 in the ideal: {}",
        reduce(&member, &basis, &lex).is_zero()
    );
}
