//! Ready-made structures used by the examples, the test suites, and the
//! shipped config files: the symplectic plane, the two-generator family
//! with `lambda = x`, quadric level-set algebras, and the su(2)-type
//! construction input.

use crate::error::Result;
use crate::kp::KPCtx;
use crate::matrix::{RingMatrix, Shape};
use crate::poisson::{level_set_table, BracketTable};
use crate::poly::{MonomialOrder, Poly, Rat};
use crate::ring::RingCtx;
use crate::skewnf::{build_metric, MetricConstruction};

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

fn euclidean(ctx: &RingCtx) -> RingMatrix {
    RingMatrix::identity(ctx, ctx.nvars()).assume_shape(ctx, Shape::Symmetric)
}

/// `{x,y} = 1` on the free plane with the Euclidean metric: the flat case.
pub fn symplectic_plane() -> Result<KPCtx> {
    let ctx = RingCtx::new(
        names(&["x", "y"]),
        vec![],
        vec![],
        MonomialOrder::grevlex(2),
    )?;
    let table = BracketTable::from_upper(&ctx, &[(0, 1, ctx.one())])?;
    let g = euclidean(&ctx);
    let eta = ctx.one();
    KPCtx::new(ctx, table, g, eta)
}

/// Two-generator family with `p = {x,y} = 1`, `lambda = x`, metric
/// `(1/lambda) Id`, and `eta = lambda^2 / p^2 = x^2`, localized at `x`.
pub fn two_generator_family() -> Result<KPCtx> {
    let gens = names(&["x", "y"]);
    let lambda = Poly::var(2, 0);
    let ctx = RingCtx::new(gens, vec![], vec![lambda], MonomialOrder::grevlex(2))?;
    let table = BracketTable::from_upper(&ctx, &[(0, 1, ctx.one())])?;
    let inv_lambda = ctx.fraction(&Poly::one(2), &[1]);
    let mut g = RingMatrix::identity(&ctx, 2);
    g.set(0, 0, inv_lambda.clone());
    g.set(1, 1, inv_lambda);
    let g = g.assume_shape(&ctx, Shape::Symmetric);
    let eta = ctx.parse_elem("x^2")?;
    KPCtx::new(ctx, table, g, eta)
}

/// Level-set algebra of `C = 1/2(a x^2 + b y^2 + c z^2 - 1)` with the
/// Euclidean metric and `eta = (a^2 x^2 + b^2 y^2 + c^2 z^2)^{-1}`.
pub fn ellipsoid_rat(a: &Rat, b: &Rat, c: &Rat) -> Result<KPCtx> {
    let gens = names(&["x", "y", "z"]);
    let free = RingCtx::new(gens.clone(), vec![], vec![], MonomialOrder::grevlex(3))?;
    let constraint = free.parse_poly(&format!("1/2*(({a})*x^2+({b})*y^2+({c})*z^2-1)"))?;
    let tau = free.parse_poly(&format!("({})*x^2+({})*y^2+({})*z^2", a * a, b * b, c * c))?;
    let ctx = RingCtx::new(
        gens,
        vec![constraint.clone()],
        vec![tau],
        MonomialOrder::grevlex(3),
    )?;
    let table = level_set_table(&ctx, &constraint)?;
    let g = euclidean(&ctx);
    let eta = ctx.fraction(&Poly::one(3), &[1]);
    KPCtx::new(ctx, table, g, eta)
}

pub fn ellipsoid(a: i64, b: i64, c: i64) -> Result<KPCtx> {
    ellipsoid_rat(
        &crate::poly::rat(a),
        &crate::poly::rat(b),
        &crate::poly::rat(c),
    )
}

/// The round case `a = b = c = 1`.
pub fn sphere() -> Result<KPCtx> {
    ellipsoid(1, 1, 1)
}

/// Sphere data with `eta` multiplied by a rational; assembled without
/// verification so callers can watch the defining relation fail.
pub fn sphere_with_eta_scaled(s: Rat) -> Result<KPCtx> {
    let gens = names(&["x", "y", "z"]);
    let free = RingCtx::new(gens.clone(), vec![], vec![], MonomialOrder::grevlex(3))?;
    let constraint = free.parse_poly("1/2*(x^2+y^2+z^2-1)")?;
    let tau = free.parse_poly("x^2+y^2+z^2")?;
    let ctx = RingCtx::new(
        gens,
        vec![constraint.clone()],
        vec![tau],
        MonomialOrder::grevlex(3),
    )?;
    let table = level_set_table(&ctx, &constraint)?;
    let g = euclidean(&ctx);
    let eta = ctx.scale(&ctx.fraction(&Poly::one(3), &[1]), &s);
    KPCtx::assemble(ctx, table, g, eta)
}

/// Two-generator family data with `eta` multiplied by a rational,
/// assembled without verification.
pub fn two_generator_with_eta_scaled(s: Rat) -> Result<KPCtx> {
    let gens = names(&["x", "y"]);
    let lambda = Poly::var(2, 0);
    let ctx = RingCtx::new(gens, vec![], vec![lambda], MonomialOrder::grevlex(2))?;
    let table = BracketTable::from_upper(&ctx, &[(0, 1, ctx.one())])?;
    let inv_lambda = ctx.fraction(&Poly::one(2), &[1]);
    let mut g = RingMatrix::identity(&ctx, 2);
    g.set(0, 0, inv_lambda.clone());
    g.set(1, 1, inv_lambda);
    let g = g.assume_shape(&ctx, Shape::Symmetric);
    let eta = ctx.scale(&ctx.parse_elem("x^2")?, &s);
    KPCtx::assemble(ctx, table, g, eta)
}

/// The su(2)-type bracket table `{x,y}=z, {y,z}=x, {z,x}=y` on the free
/// ring in three variables.
pub fn su2_table() -> Result<(RingCtx, BracketTable)> {
    let ctx = RingCtx::new(
        names(&["x", "y", "z"]),
        vec![],
        vec![],
        MonomialOrder::grevlex(3),
    )?;
    let table = BracketTable::from_upper(
        &ctx,
        &[
            (0, 1, ctx.gen_elem(2)),
            (1, 2, ctx.gen_elem(0)),
            (0, 2, ctx.neg(&ctx.gen_elem(1))),
        ],
    )?;
    Ok((ctx, table))
}

/// Run the metric construction on a bracket table and assemble the
/// verified structure in the localized context.
pub fn construct_kp(ctx: &RingCtx, table: &BracketTable) -> Result<(KPCtx, MetricConstruction)> {
    let p = RingMatrix::new(ctx, table.entries().clone(), Shape::Antisymmetric)?;
    let mc = build_metric(ctx, &p)?;
    let wide_table = table.widened(&mc.ctx);
    let kp = KPCtx::new(mc.ctx.clone(), wide_table, mc.g.clone(), mc.eta.clone())?;
    Ok((kp, mc))
}

/// The su(2)-type table run through the construction pipeline.
pub fn su2_constructed() -> Result<(KPCtx, MetricConstruction)> {
    let (ctx, table) = su2_table()?;
    construct_kp(&ctx, &table)
}
