//! Interpolation core: Pick matrix, coefficient matrix `Theta`, the linear
//! fractional parametrization of solutions, parameter classification and
//! the divisor–remainder description of the solution set.

mod classify;
mod lft;
mod pick;
mod problem;
mod remainder;
mod theta;
mod verify;

use num_complex::Complex64;
use thiserror::Error;

use crate::hermlin::LinError;
use crate::ratfun::RatError;
use crate::schurclass::SchurError;

pub use classify::{classify_parameter, classify_parameter_with, ClassifyReport, RetainedCondition, ZERO_JET_TOL};
pub use lft::{admissible, lft_apply, lft_invert, AdmissibleReport, LftPair, NodeAdmissibility, ParamPair, Unreduced};
pub use pick::{
    default_contours, moment_quadrature, moment_vector, pick_system, pick_system_with, schwarz_pick_matrix,
    PickSystem, DEFAULT_QUAD_POINTS, MAX_QUAD_POINTS, STEIN_AGREEMENT,
};
pub use problem::{InterpProblem, Node};
pub use remainder::{
    big_kernel_negsquares, divisor_remainder, hermite_phi, omega_check, omega_check_with, theta_blaschke, ClauseOutcome,
    Disagreement, DivisorRemainder, OmegaReport,
};
pub use theta::{build_theta, selfcheck_report, theta_selfcheck, SelfCheckReport, Theta};
pub use verify::{verify_solution, ConditionResidual, Verdict, VERIFY_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InterpError {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Rat(#[from] RatError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error("Pick matrix is singular ({n_zero} zero eigenvalues)")]
    SingularPick { n_zero: usize },
    #[error("direct and series Stein solutions differ by {0:e}")]
    SteinMismatch(f64),
    #[error("function has a pole at node {index} ({z})")]
    PoleAtNode { index: usize, z: Complex64 },
    #[error("contour passes through the pole {0}")]
    ContourThroughPole(Complex64),
    #[error("contour encloses the pole {0}")]
    PoleEnclosed(Complex64),
    #[error("node {0} is not enclosed by exactly one contour")]
    NodesNotEnclosed(usize),
    #[error("self-check failed: {0}")]
    SelfCheckFailed(String),
    #[error("linear fractional denominator vanishes identically")]
    DegenerateDenominator,
    #[error("inverse map denominator vanishes identically")]
    IdenticallyZeroDenominator,
    #[error("classification contradicts the realized function: {0}")]
    ValidationMismatch(String),
    #[error("remainder has a pole on the unit circle at {0}")]
    NotInHInfinity(Complex64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
