use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{HermitianMat, LinError, SystemMatrices};

/// Consecutive non-decreasing term norms tolerated by `stein_series`.
const STALL_LIMIT: usize = 50;
const MAX_TERMS: usize = 1_000_000;

/// `E E^* - C C^*`.
pub fn stein_rhs(sys: &SystemMatrices) -> DMatrix<Complex64> {
    &sys.e * sys.e.adjoint() - &sys.c * sys.c.adjoint()
}

/// Direct solve of `P - T P T^* = Q` on the vectorized system
/// `(I - conj(T) (x) T) vec(P) = vec(Q)`, before symmetrization.
pub fn stein_solve_unsymmetrized(sys: &SystemMatrices) -> Result<DMatrix<Complex64>, LinError> {
    let n = sys.dim();
    let q = stein_rhs(sys);
    let a = DMatrix::<Complex64>::identity(n * n, n * n) - sys.t.map(|x| x.conj()).kronecker(&sys.t);
    let b = DVector::from_column_slice(q.as_slice());
    let x = a.lu().solve(&b).ok_or(LinError::SingularSystem)?;
    Ok(DMatrix::from_column_slice(n, n, x.as_slice()))
}

/// Pick matrix of the system by the direct solver, symmetrized.
pub fn stein_solve(sys: &SystemMatrices) -> Result<HermitianMat, LinError> {
    stein_solve_unsymmetrized(sys).map(HermitianMat::symmetrize)
}

/// Partial sums of `sum_j T^j Q T^{*j}`, stopped once a term's Frobenius
/// norm drops below `tol`.
pub fn stein_series(sys: &SystemMatrices, tol: f64) -> Result<HermitianMat, LinError> {
    let t_adj = sys.t.adjoint();
    let mut term = stein_rhs(sys);
    let mut sum = term.clone();
    let mut last = term.norm();
    let mut stalled = 0;
    if last < tol {
        return Ok(HermitianMat::symmetrize(sum));
    }
    for _ in 0..MAX_TERMS {
        term = &sys.t * &term * &t_adj;
        sum += &term;
        let norm = term.norm();
        if norm < tol {
            return Ok(HermitianMat::symmetrize(sum));
        }
        if norm >= last {
            stalled += 1;
            if stalled >= STALL_LIMIT {
                return Err(LinError::NoConvergence);
            }
        } else {
            stalled = 0;
        }
        last = norm;
    }
    Err(LinError::NoConvergence)
}

/// `||P - T P T^* - (E E^* - C C^*)||_F`.
pub fn stein_residual(sys: &SystemMatrices, p: &DMatrix<Complex64>) -> f64 {
    (p - &sys.t * p * sys.t.adjoint() - stein_rhs(sys)).norm()
}
