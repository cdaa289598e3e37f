use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::SchurError;
use crate::hermlin::{eigenvalues, HermitianMat};
use crate::ratfun::{RatError, RatFun};

pub const RING_RADII: [f64; 2] = [0.3, 0.7];
pub const RING_POINTS: usize = 12;
pub const DEFAULT_KERNEL_TOL: f64 = 1e-9;

const DUPLICATE_TOL: f64 = 1e-12;

/// Anything that can be sampled inside the disk.
pub trait DiskFunction {
    fn value(&self, z: Complex64) -> Result<Complex64, SchurError>;
}

impl DiskFunction for RatFun {
    fn value(&self, z: Complex64) -> Result<Complex64, SchurError> {
        self.eval(z).map_err(|e| match e {
            RatError::PoleAtPoint(z) => SchurError::PoleOnGrid(z),
            e => e.into(),
        })
    }
}

/// A black-box function; `None` marks a point where it is undefined.
pub struct Sampled<F>(pub F);

impl<F: Fn(Complex64) -> Option<Complex64>> DiskFunction for Sampled<F> {
    fn value(&self, z: Complex64) -> Result<Complex64, SchurError> {
        (self.0)(z).filter(|v| v.is_finite()).ok_or(SchurError::PoleOnGrid(z))
    }
}

/// Negative eigenvalue count of a kernel section, with the grid it was
/// computed on. Only a lower bound for the number of negative squares.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelEstimate {
    pub negative: usize,
    pub eigenvalues: Vec<f64>,
    pub grid: Vec<Complex64>,
}

/// `G[p][q] = (1 - f(z_p) conj f(z_q)) / (1 - z_p conj z_q)`.
pub fn kernel_gram(grid: &[Complex64], values: &[Complex64]) -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    DMatrix::from_fn(grid.len(), grid.len(), |p, q| {
        (one - values[p] * values[q].conj()) / (one - grid[p] * grid[q].conj())
    })
}

pub(crate) fn check_grid(grid: &[Complex64]) -> Result<(), SchurError> {
    if grid.is_empty() || grid.iter().any(|z| !(z.norm() < 1.0)) {
        return Err(SchurError::DegenerateGrid);
    }
    for (i, a) in grid.iter().enumerate() {
        if grid[i + 1..].iter().any(|b| (a - b).norm() <= DUPLICATE_TOL) {
            return Err(SchurError::DegenerateGrid);
        }
    }
    Ok(())
}

/// Count of eigenvalues below `-tol * ||G||_F` of a Hermitian matrix.
pub(crate) fn count_negative(g: DMatrix<Complex64>, tol: f64) -> (usize, Vec<f64>) {
    let h = HermitianMat::symmetrize(g);
    let cut = tol * h.frobenius();
    let ev = eigenvalues(&h);
    (ev.iter().filter(|&&x| x < -cut).count(), ev)
}

pub fn kernel_negsquares(
    f: &impl DiskFunction,
    grid: &[Complex64],
    tol: f64,
) -> Result<KernelEstimate, SchurError> {
    check_grid(grid)?;
    let values: Vec<Complex64> = grid.iter().map(|&z| f.value(z)).collect::<Result<_, _>>()?;
    let (negative, eigenvalues) = count_negative(kernel_gram(grid, &values), tol);
    Ok(KernelEstimate {
        negative,
        eigenvalues,
        grid: grid.to_vec(),
    })
}

/// Two rings of `RING_POINTS` points at radii `RING_RADII`, rotated so the
/// grid keeps the largest distance from `avoid`.
pub fn default_grid(avoid: &[Complex64]) -> Vec<Complex64> {
    let ring = |offset: f64| -> Vec<Complex64> {
        RING_RADII
            .iter()
            .enumerate()
            .flat_map(|(j, &r)| {
                (0..RING_POINTS).map(move |k| {
                    let step = TAU / RING_POINTS as f64;
                    Complex64::from_polar(r, step * (k as f64 + 0.5 * j as f64) + offset)
                })
            })
            .collect()
    };
    let clearance = |g: &[Complex64]| {
        g.iter()
            .flat_map(|z| avoid.iter().map(move |a| (z - a).norm()))
            .fold(f64::INFINITY, f64::min)
    };
    let trials = 32;
    let step = TAU / RING_POINTS as f64 / trials as f64;
    (0..trials)
        .map(|t| ring(step * t as f64))
        .max_by(|a, b| clearance(a).total_cmp(&clearance(b)))
        .unwrap_or_default()
}
