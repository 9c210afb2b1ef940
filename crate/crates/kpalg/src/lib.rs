//! Exact computer algebra for Kähler–Poisson structures.
//!
//! The crate builds up from sparse rational polynomial arithmetic and small
//! Gröbner bases to localized quotient rings, Poisson bracket tables, skew
//! congruence normal forms, verification of the Kähler–Poisson defining
//! relation, and the induced Riemannian-style geometry (projection,
//! Levi-Civita connection, curvature tensors, Laplacian). All arithmetic is
//! exact, so every check is a decidable identity, not an approximation.
//!
//! Start with the runnable examples (`cargo run --example <name>`) or the
//! `kpalg` binary, which exposes the same pipelines over config files.
//!
//! ```
//! use kpalg::{fixtures, Geometry};
//!
//! // The unit sphere as a level-set algebra; its scalar curvature is
//! // exactly the constant 2.
//! let kp = fixtures::sphere()?;
//! let geo = Geometry::new(&kp);
//! let s = geo.scalar();
//! assert_eq!(kp.ring().format_elem(&s), "2");
//! # Ok::<(), kpalg::Error>(())
//! ```

// Tensor components are juggled by explicit indices throughout; iterator
// rewrites of those loops obscure the index identities being computed.
#![allow(clippy::needless_range_loop)]

pub mod config;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod groebner;
pub mod kp;
pub mod matrix;
pub mod parse;
pub mod poisson;
pub mod poly;
pub mod report;
pub mod ring;
pub mod skewnf;

pub use config::{AlgebraConfig, BuiltAlgebra, EtaSpec, MetricSpec};
pub use error::{Category, Error, Result};
pub use geometry::{christoffel, Christoffel, Geometry, PropertyCheck, PropertyReport, Riemann};
pub use groebner::Budget;
pub use kp::{Deriv, KPCtx, KpWitness};
pub use matrix::{RingMatrix, Shape};
pub use poisson::{level_set_table, BracketTable};
pub use poly::{Mono, MonomialOrder, OrderKind, Poly, Rat};
pub use ring::{Elem, RingCtx};
pub use skewnf::{
    adjugate, block_diagonalize, build_metric, eliminate_pair, BlockDiagResult, MetricConstruction,
};
