//! Structured linear algebra for the interpolation data: the block-Jordan
//! system, the Stein equation `P - T P T^* = E E^* - C C^*` (solved directly
//! and by its Neumann series), and Hermitian inertia.

mod hermitian;
mod stein;
mod system;

use num_complex::Complex64;
use thiserror::Error;

pub use hermitian::{
    default_eig_tol, eigenvalues, inertia, matrix_rows, serialize_matrix, serialize_opt_matrix,
    serialize_vector, HermitianMat, Inertia,
};
pub use stein::{stein_residual, stein_rhs, stein_series, stein_solve, stein_solve_unsymmetrized};
pub use system::{build_system, SystemMatrices};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinError {
    #[error("problem has no nodes")]
    EmptyProblem,
    #[error("node {index} at {z} is not inside the open unit disk")]
    NodeOutsideDisk { index: usize, z: Complex64 },
    #[error("nodes {first} and {second} coincide")]
    DuplicateNode { first: usize, second: usize },
    #[error("expected {expected} values for the node, got {got}")]
    ValueCountMismatch { expected: usize, got: usize },
    #[error("Stein system is singular")]
    SingularSystem,
    #[error("Stein series did not converge")]
    NoConvergence,
    #[error("matrix is not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),
}
