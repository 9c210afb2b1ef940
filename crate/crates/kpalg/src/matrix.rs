//! Matrices over a localized quotient ring, with verified shape tags.

use crate::error::{Error, Result};
use crate::poly::Rat;
use crate::ring::{Elem, RingCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Antisymmetric,
    Symmetric,
    General,
}

/// Square matrix of ring elements tagged with a verified shape.
#[derive(Debug, Clone)]
pub struct RingMatrix {
    entries: Vec<Vec<Elem>>,
    shape: Shape,
}

impl RingMatrix {
    /// Build a matrix and verify the claimed shape entry-wise (exactly).
    pub fn new(ctx: &RingCtx, entries: Vec<Vec<Elem>>, shape: Shape) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::semantic("matrix is not square"));
            }
        }
        match shape {
            Shape::General => {}
            Shape::Antisymmetric => {
                for i in 0..n {
                    for j in i..n {
                        let s = ctx.add(&entries[i][j], &entries[j][i]);
                        if !ctx.is_zero(&s) {
                            return Err(Error::semantic(format!(
                                "matrix is not antisymmetric at ({}, {})",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
            Shape::Symmetric => {
                for i in 0..n {
                    for j in (i + 1)..n {
                        let d = ctx.sub(&entries[i][j], &entries[j][i]);
                        if !ctx.is_zero(&d) {
                            return Err(Error::semantic(format!(
                                "matrix is not symmetric at ({}, {})",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(RingMatrix { entries, shape })
    }

    pub fn from_rows(entries: Vec<Vec<Elem>>) -> Self {
        let n = entries.len();
        for row in &entries {
            assert_eq!(row.len(), n, "matrix is not square");
        }
        RingMatrix {
            entries,
            shape: Shape::General,
        }
    }

    pub fn identity(ctx: &RingCtx, n: usize) -> Self {
        let mut entries = vec![vec![ctx.zero(); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = ctx.one();
        }
        RingMatrix {
            entries,
            shape: Shape::General,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn entry(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &Vec<Vec<Elem>> {
        &self.entries
    }

    pub fn set(&mut self, i: usize, j: usize, e: Elem) {
        self.entries[i][j] = e;
        self.shape = Shape::General;
    }

    pub fn transpose(&self) -> RingMatrix {
        let n = self.dim();
        let mut out = self.entries.clone();
        for (i, row) in out.iter_mut().enumerate() {
            for j in 0..n {
                row[j] = self.entries[j][i].clone();
            }
        }
        RingMatrix {
            entries: out,
            shape: self.shape,
        }
    }

    pub fn mul(&self, ctx: &RingCtx, other: &RingMatrix) -> RingMatrix {
        let n = self.dim();
        assert_eq!(n, other.dim(), "matrix dimension mismatch");
        let mut out = vec![vec![ctx.zero(); n]; n];
        for (i, out_row) in out.iter_mut().enumerate() {
            for (j, slot) in out_row.iter_mut().enumerate() {
                let mut acc = ctx.zero();
                for k in 0..n {
                    acc = ctx.add(&acc, &ctx.mul(&self.entries[i][k], &other.entries[k][j]));
                }
                *slot = acc;
            }
        }
        RingMatrix {
            entries: out,
            shape: Shape::General,
        }
    }

    pub fn add(&self, ctx: &RingCtx, other: &RingMatrix) -> RingMatrix {
        let n = self.dim();
        assert_eq!(n, other.dim(), "matrix dimension mismatch");
        let mut out = vec![vec![ctx.zero(); n]; n];
        for (i, out_row) in out.iter_mut().enumerate() {
            for (j, slot) in out_row.iter_mut().enumerate() {
                *slot = ctx.add(&self.entries[i][j], &other.entries[i][j]);
            }
        }
        RingMatrix {
            entries: out,
            shape: Shape::General,
        }
    }

    pub fn scale_elem(&self, ctx: &RingCtx, c: &Elem) -> RingMatrix {
        let out = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| ctx.mul(e, c)).collect())
            .collect();
        RingMatrix {
            entries: out,
            shape: Shape::General,
        }
    }

    pub fn scale(&self, ctx: &RingCtx, c: &Rat) -> RingMatrix {
        let out = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| ctx.scale(e, c)).collect())
            .collect();
        RingMatrix {
            entries: out,
            shape: Shape::General,
        }
    }

    pub fn is_zero(&self, ctx: &RingCtx) -> bool {
        self.entries
            .iter()
            .all(|row| row.iter().all(|e| ctx.is_zero(e)))
    }

    pub fn equals(&self, ctx: &RingCtx, other: &RingMatrix) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(ra, rb)| ra.iter().zip(rb).all(|(a, b)| ctx.elems_equal(a, b)))
    }

    /// Re-tag after an operation when the caller knows the shape holds;
    /// verified in debug builds.
    pub fn assume_shape(mut self, ctx: &RingCtx, shape: Shape) -> RingMatrix {
        debug_assert!(
            RingMatrix::new(ctx, self.entries.clone(), shape).is_ok(),
            "assumed shape does not hold"
        );
        self.shape = shape;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    fn free2() -> RingCtx {
        let gens = vec!["x".to_string(), "y".to_string()];
        RingCtx::new(gens, vec![], vec![], MonomialOrder::grevlex(2)).unwrap()
    }

    #[test]
    fn shape_verification() {
        let ctx = free2();
        let x = ctx.gen_elem(0);
        let anti = vec![vec![ctx.zero(), x.clone()], vec![ctx.neg(&x), ctx.zero()]];
        assert!(RingMatrix::new(&ctx, anti.clone(), Shape::Antisymmetric).is_ok());
        assert!(RingMatrix::new(&ctx, anti, Shape::Symmetric).is_err());
    }

    #[test]
    fn products() {
        let ctx = free2();
        let x = ctx.gen_elem(0);
        let m = RingMatrix::from_rows(vec![
            vec![ctx.one(), x.clone()],
            vec![ctx.zero(), ctx.one()],
        ]);
        let id = RingMatrix::identity(&ctx, 2);
        assert!(m.mul(&ctx, &id).equals(&ctx, &m));
        let mt = m.transpose();
        assert!(ctx.elems_equal(mt.entry(1, 0), &x));
    }
}
