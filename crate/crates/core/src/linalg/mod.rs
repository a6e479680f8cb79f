//! Exact integer linear algebra: normal forms, kernels and lattices.

mod hnf;
mod lattice;
mod matrix;
mod rational;
mod snf;

pub use hnf::{hnf_basis, hnf_rows, pivot_columns};
pub use lattice::Lattice;
pub use matrix::{dot, ext_gcd, vec_from_i64, IntMatrix};
pub use rational::{invert_2x2, FracMat2, Fraction};
pub use snf::{kernel_basis, snf, SnfResult};
