//! Function theory on the unit disk: Blaschke products, Krein–Langer
//! factorization, zero counting, and negative squares of the kernel
//! `(1 - f(z) conj(f(w))) / (1 - z conj(w))`.

mod blaschke;
mod kernel;
mod krein;
mod zeros;

use num_complex::Complex64;
use thiserror::Error;

use crate::ratfun::RatError;

pub use blaschke::{blaschke_from_zeros, Blaschke};
pub use kernel::{
    default_grid, kernel_gram, kernel_negsquares, DiskFunction, KernelEstimate, Sampled,
    DEFAULT_KERNEL_TOL, RING_POINTS, RING_RADII,
};
pub use krein::{boundary_sup, class_index, KreinLanger, BOUNDARY_GRID, CONTRACTIVE_TOL};
pub(crate) use kernel::{check_grid, count_negative};
pub use zeros::{poles_in_disk, winding_count, zeros_in_disk, ContourSpec, BOUNDARY_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchurError {
    #[error("Blaschke zero {0} is not inside the open unit disk")]
    ZeroOutsideDisk(Complex64),
    #[error("factor {0} is not unimodular")]
    NonUnimodularFactor(Complex64),
    #[error("pole {0} lies on the unit circle")]
    PoleOnBoundary(Complex64),
    #[error("boundary supremum {sup} exceeds 1 + tolerance")]
    NotContractive { sup: f64 },
    #[error("zero {0} lies on the unit circle")]
    ZeroOnBoundary(Complex64),
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("winding quadrature inconclusive (value {0})")]
    QuadratureInconclusive(f64),
    #[error("function vanishes or has a pole on the contour near {0}")]
    SingularOnContour(Complex64),
    #[error("contour with center {center} and radius {radius} is not valid")]
    InvalidContour { center: Complex64, radius: f64 },
    #[error("grid point {0} is a pole of the function")]
    PoleOnGrid(Complex64),
    #[error("grid has repeated points or is empty")]
    DegenerateGrid,
    #[error(transparent)]
    Rat(#[from] RatError),
}
