//! Congruence block-diagonalization of antisymmetric matrices over the
//! ring, adjugates by cofactor expansion, and the construction of a metric
//! `g`, unit `lambda`, and `eta` that turn a Poisson bracket table into a
//! Kähler–Poisson structure after localization.

use crate::error::{Error, Result};
use crate::matrix::{RingMatrix, Shape};
use crate::poly::Poly;
use crate::ring::{Elem, RingCtx};

/// Result of a full congruence block-diagonalization `V^T P V = P0`.
#[derive(Debug, Clone)]
pub struct BlockDiagResult {
    pub v: RingMatrix,
    /// Off-diagonal entries of the 2x2 blocks, in block order.
    pub lambdas: Vec<Elem>,
    /// True when the dimension is odd and a trailing 1x1 zero block remains.
    pub residual_zero_block: bool,
    /// The block-diagonal matrix `V^T P V` itself.
    pub p0: RingMatrix,
}

/// Everything produced by the metric construction, living in a context
/// extended by the new denominators `lambda` and `det(V)`.
#[derive(Debug, Clone)]
pub struct MetricConstruction {
    /// Extended ring context (base denominators plus `lambda`, `det V`).
    pub ctx: RingCtx,
    pub v: RingMatrix,
    pub p0: RingMatrix,
    pub lambdas: Vec<Elem>,
    pub lambda: Elem,
    pub det_v: Elem,
    /// Symmetric metric `V g0 V^T`, widened to the extended context.
    pub g: RingMatrix,
    /// `1 / lambda^2` in the extended context.
    pub eta: Elem,
}

fn scale_matrix(ctx: &RingCtx, n: usize, row: usize, by: &Elem) -> RingMatrix {
    let mut m = RingMatrix::identity(ctx, n);
    m.set(row, row, by.clone());
    m
}

fn add_col_matrix(ctx: &RingCtx, n: usize, from: usize, to: usize, by: &Elem) -> RingMatrix {
    // Right-multiplication adds `by * column from` to `column to`;
    // this is the transpose of the corresponding row operation.
    let mut m = RingMatrix::identity(ctx, n);
    m.set(from, to, by.clone());
    m
}

/// One elimination round: returns `(V, V^T P V)` where the congruence
/// zeroes rows/columns 3..N against the leading 2x2 block.
///
/// `V` is assembled as the literal product of the elementary matrices of
/// the row operations (scale row k by p12; add row 1 times -p_k2; add row 2
/// times p_k1), transposed to act by congruence. A zero `p12` still zeroes
/// the target entries, at the price of a singular `V`.
pub fn eliminate_pair(ctx: &RingCtx, p: &RingMatrix) -> Result<(RingMatrix, RingMatrix)> {
    if p.shape() != Shape::Antisymmetric {
        return Err(Error::semantic(
            "eliminate_pair requires an antisymmetric matrix",
        ));
    }
    let n = p.dim();
    if n < 2 {
        return Err(Error::semantic(
            "eliminate_pair requires dimension at least 2",
        ));
    }
    let p12 = p.entry(0, 1).clone();
    let mut v = RingMatrix::identity(ctx, n);
    for k in 2..n {
        let pk1 = p.entry(k, 0).clone();
        let pk2 = p.entry(k, 1).clone();
        let v1 = scale_matrix(ctx, n, k, &p12);
        let v2 = add_col_matrix(ctx, n, 0, k, &ctx.neg(&pk2));
        let v3 = add_col_matrix(ctx, n, 1, k, &pk1);
        let vk = v1.mul(ctx, &v2).mul(ctx, &v3);
        v = v.mul(ctx, &vk);
    }
    let p_new = v.transpose().mul(ctx, p).mul(ctx, &v);
    Ok((v, p_new.assume_shape(ctx, Shape::Antisymmetric)))
}

/// Full block diagonalization: `V^T P V` is a direct sum of 2x2
/// antisymmetric blocks, plus a single zero row/column when the dimension
/// is odd.
pub fn block_diagonalize(ctx: &RingCtx, p: &RingMatrix) -> Result<BlockDiagResult> {
    if p.shape() != Shape::Antisymmetric {
        return Err(Error::semantic(
            "block_diagonalize requires an antisymmetric matrix",
        ));
    }
    let n = p.dim();
    let mut v_total = RingMatrix::identity(ctx, n);
    let mut current = p.clone();
    let mut lambdas = Vec::new();
    let mut offset = 0usize;
    while n - offset >= 2 {
        let sub = n - offset;
        let rows: Vec<Vec<Elem>> = (offset..n)
            .map(|i| (offset..n).map(|j| current.entry(i, j).clone()).collect())
            .collect();
        let sub_m = RingMatrix::from_rows(rows).assume_shape(ctx, Shape::Antisymmetric);
        let (vq, _) = eliminate_pair(ctx, &sub_m)?;
        // Embed the sub-transform into the full dimension.
        let mut w = RingMatrix::identity(ctx, n);
        for i in 0..sub {
            for j in 0..sub {
                w.set(offset + i, offset + j, vq.entry(i, j).clone());
            }
        }
        v_total = v_total.mul(ctx, &w);
        current = w.transpose().mul(ctx, &current).mul(ctx, &w);
        lambdas.push(current.entry(offset, offset + 1).clone());
        offset += 2;
    }
    let current = current.assume_shape(ctx, Shape::Antisymmetric);
    debug_assert!(block_shape_holds(ctx, &current));
    Ok(BlockDiagResult {
        v: v_total,
        lambdas,
        residual_zero_block: n % 2 == 1,
        p0: current,
    })
}

/// Exact shape check: zero outside the 2x2 diagonal blocks (and a zero
/// trailing line in odd dimension).
pub fn block_shape_holds(ctx: &RingCtx, p0: &RingMatrix) -> bool {
    let n = p0.dim();
    for i in 0..n {
        for j in 0..n {
            let in_block = i / 2 == j / 2 && i != j && j < n - n % 2 && i < n - n % 2;
            if !in_block && !ctx.is_zero(p0.entry(i, j)) {
                return false;
            }
        }
    }
    true
}

fn minor(m: &RingMatrix, drop_row: usize, drop_col: usize) -> RingMatrix {
    let n = m.dim();
    let rows: Vec<Vec<Elem>> = (0..n)
        .filter(|&i| i != drop_row)
        .map(|i| {
            (0..n)
                .filter(|&j| j != drop_col)
                .map(|j| m.entry(i, j).clone())
                .collect()
        })
        .collect();
    RingMatrix::from_rows(rows)
}

fn det_cofactor(ctx: &RingCtx, m: &RingMatrix) -> Elem {
    let n = m.dim();
    match n {
        0 => ctx.one(),
        1 => m.entry(0, 0).clone(),
        _ => {
            let mut acc = ctx.zero();
            for j in 0..n {
                if ctx.is_zero(m.entry(0, j)) {
                    continue;
                }
                let sub = det_cofactor(ctx, &minor(m, 0, j));
                let term = ctx.mul(m.entry(0, j), &sub);
                if j % 2 == 0 {
                    acc = ctx.add(&acc, &term);
                } else {
                    acc = ctx.sub(&acc, &term);
                }
            }
            acc
        }
    }
}

/// Adjugate and determinant by cofactor expansion. Satisfies
/// `adj * M = M * adj = det * Id` exactly over any commutative ring.
pub fn adjugate(ctx: &RingCtx, m: &RingMatrix) -> Result<(RingMatrix, Elem)> {
    let n = m.dim();
    let limit = ctx.budget().adjugate_dim;
    if n > limit {
        return Err(Error::Resource(format!(
            "adjugate limited to dimension {limit}, got {n}"
        )));
    }
    if n == 0 {
        return Ok((RingMatrix::identity(ctx, 0), ctx.one()));
    }
    let det = det_cofactor(ctx, m);
    let mut adj = vec![vec![ctx.zero(); n]; n];
    for (i, adj_row) in adj.iter_mut().enumerate() {
        for (j, slot) in adj_row.iter_mut().enumerate() {
            // adj[i][j] is the (j,i) cofactor.
            let d = det_cofactor(ctx, &minor(m, j, i));
            *slot = if (i + j) % 2 == 0 { d } else { ctx.neg(&d) };
        }
    }
    Ok((RingMatrix::from_rows(adj), det))
}

/// Pull the invertible content out of an element: its numerator (the
/// denominator part is a unit already). A constant numerator needs no new
/// denominator.
fn numerator_to_declare(e: &Elem) -> Option<Poly> {
    if e.num.as_constant().is_some() {
        None
    } else {
        Some(e.num.clone())
    }
}

/// The metric construction: block-diagonalize `P`, assemble
/// `g0 = diag((lambda/lambda_k) Id2, ..., [lambda])` without division,
/// set `g = V g0 V^T`, `lambda = prod(lambda_k)`, `eta = 1/lambda^2`,
/// verify `det(V)^2 (P g P g P + lambda^2 P) = 0` exactly, and extend the
/// ring by the denominators `lambda` and `det V`.
pub fn build_metric(ctx: &RingCtx, p: &RingMatrix) -> Result<MetricConstruction> {
    if p.shape() != Shape::Antisymmetric {
        return Err(Error::semantic(
            "build_metric requires an antisymmetric matrix",
        ));
    }
    let n = p.dim();
    let bd = block_diagonalize(ctx, p)?;
    for (k, lk) in bd.lambdas.iter().enumerate() {
        if ctx.is_zero(lk) {
            return Err(Error::Verification(format!(
                "degenerate bracket rank: block {} has lambda identically zero; no metric is constructed",
                k + 1
            )));
        }
    }
    let mut lambda = ctx.one();
    for lk in &bd.lambdas {
        lambda = ctx.mul(&lambda, lk);
    }

    // g0 block k carries prod_{j != k} lambda_j, which equals
    // lambda / lambda_k without any division.
    let nb = bd.lambdas.len();
    let mut g0 = RingMatrix::identity(ctx, n);
    for k in 0..nb {
        let mut scale = ctx.one();
        for (j, lj) in bd.lambdas.iter().enumerate() {
            if j != k {
                scale = ctx.mul(&scale, lj);
            }
        }
        g0.set(2 * k, 2 * k, scale.clone());
        g0.set(2 * k + 1, 2 * k + 1, scale);
    }
    if n % 2 == 1 {
        // Any unit works in the kernel slot; lambda keeps g0 uniform.
        g0.set(n - 1, n - 1, lambda.clone());
    }

    let g = bd.v.mul(ctx, &g0).mul(ctx, &bd.v.transpose());
    let (_, det_v) = adjugate(ctx, &bd.v)?;
    if ctx.is_zero(&det_v) {
        return Err(Error::Verification(
            "det(V) is zero; the construction cannot localize".into(),
        ));
    }

    // The pre-cancellation identity holds over any commutative ring;
    // it is verified before det(V)^2 is cancelled.
    let pgpgp = p.mul(ctx, &g).mul(ctx, p).mul(ctx, &g).mul(ctx, p);
    let lambda_sq = ctx.mul(&lambda, &lambda);
    let sum = pgpgp.add(ctx, &p.scale_elem(ctx, &lambda_sq));
    let det_sq = ctx.mul(&det_v, &det_v);
    let certified = sum.scale_elem(ctx, &det_sq);
    if !certified.is_zero(ctx) {
        return Err(Error::Verification(
            "internal identity det(V)^2 (PgPgP + lambda^2 P) = 0 failed".into(),
        ));
    }

    // Localize at lambda and det(V).
    let mut extra = Vec::new();
    if let Some(d) = numerator_to_declare(&lambda) {
        extra.push(d);
    }
    if let Some(d) = numerator_to_declare(&det_v) {
        extra.push(d);
    }
    let ext = ctx.extend_denominators(extra)?;

    fn widen_matrix(ext: &RingCtx, m: &RingMatrix) -> RingMatrix {
        RingMatrix::from_rows(
            m.rows()
                .iter()
                .map(|row| row.iter().map(|e| ext.widen_elem(e)).collect())
                .collect(),
        )
    }
    let g_ext = widen_matrix(&ext, &g).assume_shape(&ext, Shape::Symmetric);
    let lambda_ext = ext.widen_elem(&lambda);
    let det_v_ext = ext.widen_elem(&det_v);

    // eta = 1/lambda^2 built directly: lambda = a/s gives s^2 / a^2.
    let lambda_sq_ext = ext.mul(&lambda_ext, &lambda_ext);
    let eta = ext.invert(&lambda_sq_ext).map_err(|_| {
        Error::Verification("lambda^2 could not be inverted in the localization".into())
    })?;

    Ok(MetricConstruction {
        v: widen_matrix(&ext, &bd.v),
        p0: widen_matrix(&ext, &bd.p0),
        lambdas: bd.lambdas.iter().map(|e| ext.widen_elem(e)).collect(),
        lambda: lambda_ext,
        det_v: det_v_ext,
        g: g_ext,
        eta,
        ctx: ext,
    })
}
