//! Exact integer and rational linear algebra.

mod matrix;
mod normal_form;
mod rational;
mod solve;

pub use matrix::IntMatrix;
pub use normal_form::{det, hnf, hnf_with_pivots, invariant_factors, rank, snf, unimodular_inverse, unit_det};
pub use rational::{inertia, signature_of, RatMatrix};
pub use solve::{is_solvable, kernel_basis, solve_integral, MatrixEquations};

