use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::LinError;

/// Largest tolerated `|H_ij - conj(H_ji)|`, relative to `1 + ||H||_F`.
const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMat(DMatrix<Complex64>);

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl HermitianMat {
    /// Accept `m` if it is Hermitian to tolerance; the stored matrix is the
    /// exact Hermitian part.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self, LinError> {
        let a = asymmetry(&m);
        if !m.is_square() || a > HERMITIAN_TOL * (1.0 + m.norm()) {
            return Err(LinError::NotHermitian(a));
        }
        Ok(Self::symmetrize(m))
    }

    /// `(M + M^*) / 2`, no check.
    pub fn symmetrize(m: DMatrix<Complex64>) -> Self {
        let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Self(h)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn frobenius(&self) -> f64 {
        self.0.norm()
    }
}

/// `max |M_ij - conj(M_ji)|`.
pub(crate) fn asymmetry(m: &DMatrix<Complex64>) -> f64 {
    (m - m.adjoint()).iter().map(|x| x.norm()).fold(0.0, f64::max)
}

impl Serialize for HermitianMat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        matrix_rows(&self.0).serialize(s)
    }
}

/// Row-major nested rows, the wire form of every matrix.
pub fn matrix_rows(m: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// `serialize_with` adapter for matrices.
pub fn serialize_matrix<S: Serializer>(m: &DMatrix<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    matrix_rows(m).serialize(s)
}

pub fn serialize_opt_matrix<S: Serializer>(
    m: &Option<DMatrix<Complex64>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    m.as_ref().map(matrix_rows).serialize(s)
}

pub fn serialize_vector<S: Serializer>(v: &DVector<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    v.as_slice().serialize(s)
}

pub fn default_eig_tol(h: &HermitianMat) -> f64 {
    1e-9 * h.frobenius()
}

/// Ascending eigenvalues.
pub fn eigenvalues(h: &HermitianMat) -> Vec<f64> {
    if h.dim() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = h.0.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues above `tol`, below `-tol`, and in `[-tol, tol]`.
pub fn inertia(h: &HermitianMat, tol: f64) -> Inertia {
    let ev = eigenvalues(h);
    Inertia {
        n_plus: ev.iter().filter(|&&x| x > tol).count(),
        n_minus: ev.iter().filter(|&&x| x < -tol).count(),
        n_zero: ev.iter().filter(|&&x| x.abs() <= tol).count(),
    }
}
