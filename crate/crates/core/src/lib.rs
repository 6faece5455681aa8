//! Coherent states of odd-degree polynomial deformations of su(2) and su(1,1).
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: structure functions, ladder coefficients, Casimir and
//!   unitarity checks for the deformed algebras.
//! - [`roots`]: factorisation of the deformation factor into its roots.
//! - [`hypergeom`]: generalized hypergeometric series, Pochhammer symbols,
//!   log-gamma and compensated summation.
//! - [`coherent`]: the three coherent-state families as truncated coefficient
//!   vectors, their normalisation and a ladder-operator matrix oracle.
//! - [`statistics`]: photon statistics and the metric factor.
//! - [`geometry`]: Berry connection and phase, and the Laplace transform
//!   relating the two su(1,1) families.
//! - [`figures`], [`verify`], [`cli`]: plot-data generation, verification
//!   suites and the command-line front end.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod coherent;
pub mod error;
pub mod figures;
pub mod geometry;
pub mod hypergeom;
pub mod roots;
pub mod statistics;
pub mod verify;

pub use num_complex::Complex64;

pub use algebra::{AlgebraKind, DeformationSpec};
pub use coherent::{CoefficientVector, CsFamily, CsSpec};
pub use error::{Error, Result};
pub use hypergeom::{SeriesParams, SeriesResult};
pub use roots::RootSet;
pub use statistics::StatRecord;
