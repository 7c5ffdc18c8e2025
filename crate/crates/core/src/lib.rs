//! Exact Weyr structures of matrices.
//!
//! The crate computes Weyr (and dual Jordan) structures from ranks of
//! matrix powers in exact arithmetic over Q or GF(p), predicts the Weyr
//! structure of block bidiagonal compositions `C(B, t)`, and applies both to
//! multiplication maps on monomial complete intersections
//! `F[x_1..x_n]/(x_1^{d_1+1}, ..., x_n^{d_n+1})`.
//!
//! Bulk work (matrix products, elimination, ladders, sweeps) runs on rayon
//! when the default `parallel` feature is enabled and sequentially without it.

pub mod compose;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod mci;
pub mod par;
pub mod partition;
mod poly;
pub mod sweep;
pub mod weyr;

pub use compose::{compose, predicted_rank, predicted_structure, sierpinski, sierpinski_structure, verify_compose, ComposeReport};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use matrix::ExactMatrix;
pub use partition::Partition;
pub use weyr::{build_basic_weyr, jordan_structure_at, weyr_structure_at, WeyrStructureReport};
