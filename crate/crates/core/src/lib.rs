//! Exact similarity of block matrices to centrosymmetric matrices.
//!
//! The central object is the intertwiner system `X A = D X`, `C = X B X` on
//! the blocks of a square matrix. An invertible solution gives an explicit
//! similarity to a centrosymmetric matrix; rank-deficient and rectangular
//! solutions give a centrosymmetric principal block or a dilation. The crate
//! also builds the related Riccati block triangularizations and determinant
//! factorizations, and verifies them exactly over the rationals.

pub mod centro;
pub mod cli;
pub mod error;
pub mod factor;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod similarity;
pub mod solver;
pub mod structured;

pub use error::{Error, Result};
pub use matrix::{Matrix, QMatrix};
pub use scalar::{Approx, Rational, Scalar};
