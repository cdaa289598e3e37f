//! Complex polynomials, rational functions and 2x2 rational matrices.
//!
//! Everything here works in double precision. Rational functions are kept
//! in coprime form with a monic denominator; common factors are found by
//! matching numerator and denominator roots.

mod poly;
mod ratmat;
mod rational;
mod roots;

use num_complex::Complex64;
use thiserror::Error;

pub use poly::Poly;
pub use ratmat::{Mat2, RatMat2, SharedDen};
pub use rational::{ArithOp, Jet, RatFun, ReduceReport, COPRIME_TOL};
pub(crate) use rational::{deflate_shared, exact_quotient_inner, exact_quotient_outer, series_div};
pub use roots::{expand, poly_roots, poly_roots_with, raw_roots, Root, CLUSTER_RADIUS, MAX_ITERATIONS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RatError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("root finder did not converge")]
    NoConvergence,
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("pole at the expansion center {0}")]
    PoleAtCenter(Complex64),
    #[error("pole at {0}")]
    PoleAtPoint(Complex64),
}

/// `f^(j)(z0) / j!` for `j < m`.
pub fn ratfun_jet(f: &RatFun, z0: Complex64, m: usize) -> Result<Jet, RatError> {
    f.jet(z0, m)
}

pub fn ratfun_reduce(num: Poly, den: Poly) -> Result<RatFun, RatError> {
    RatFun::new(num, den)
}

pub fn ratfun_arith(a: &RatFun, b: &RatFun, op: ArithOp) -> Result<RatFun, RatError> {
    a.arith(b, op)
}

pub fn ratmat_eval(m: &RatMat2, z: Complex64) -> Result<Mat2, RatError> {
    m.eval(z)
}
