use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use serde::Serialize;

use super::{serialize_matrix, serialize_vector, LinError};
use crate::interp::InterpProblem;

/// `T` (block diagonal of Jordan blocks `J_{n_i}(z_i)`), `E` and `C`.
///
/// Each Jordan block carries its ones on the subdiagonal, so that
/// `(xi - T)^{-1} E` is the column `1 / (xi - z_i)^{j+1}` and the Pick
/// matrix of a Schur interpolant is positive semidefinite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SystemMatrices {
    #[serde(serialize_with = "serialize_matrix")]
    pub t: DMatrix<Complex64>,
    #[serde(serialize_with = "serialize_vector")]
    pub e: DVector<Complex64>,
    #[serde(serialize_with = "serialize_vector")]
    pub c: DVector<Complex64>,
    /// `(z_i, n_i)` per block, in problem order.
    pub blocks: Vec<(Complex64, usize)>,
}

impl SystemMatrices {
    pub fn dim(&self) -> usize {
        self.e.len()
    }
}

pub fn build_system(problem: &InterpProblem) -> Result<SystemMatrices, LinError> {
    problem.validate()?;
    let n = problem.size();
    let one = Complex64::new(1.0, 0.0);
    let mut t = DMatrix::zeros(n, n);
    let mut e = DVector::zeros(n);
    let mut c = DVector::zeros(n);
    let mut blocks = Vec::with_capacity(problem.nodes.len());
    let mut off = 0;
    for node in &problem.nodes {
        let m = node.multiplicity();
        for r in 0..m {
            t[(off + r, off + r)] = node.z;
            if r + 1 < m {
                t[(off + r + 1, off + r)] = one;
            }
            c[off + r] = node.values[r];
        }
        e[off] = one;
        blocks.push((node.z, m));
        off += m;
    }
    Ok(SystemMatrices { t, e, c, blocks })
}
