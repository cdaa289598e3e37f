use num_complex::Complex64;
use serde::Serialize;

use super::SchurError;
use crate::ratfun::{Poly, RatFun};

/// `factor * prod (z - a) / (1 - z conj(a))` over `zeros`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Blaschke {
    zeros: Vec<Complex64>,
    factor: Complex64,
}

const UNIMODULAR_TOL: f64 = 1e-12;

impl Blaschke {
    pub fn new(zeros: Vec<Complex64>, factor: Complex64) -> Result<Self, SchurError> {
        if let Some(&z) = zeros.iter().find(|z| !(z.norm() < 1.0)) {
            return Err(SchurError::ZeroOutsideDisk(z));
        }
        if !((factor.norm() - 1.0).abs() <= UNIMODULAR_TOL) {
            return Err(SchurError::NonUnimodularFactor(factor));
        }
        Ok(Self { zeros, factor })
    }

    pub fn one() -> Self {
        Self {
            zeros: Vec::new(),
            factor: Complex64::new(1.0, 0.0),
        }
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn factor(&self) -> Complex64 {
        self.factor
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        self.zeros
            .iter()
            .fold(self.factor, |acc, a| acc * (z - a) / (one - z * a.conj()))
    }

    /// Unreduced numerator and denominator; they are coprime because the
    /// denominator roots `1 / conj(a)` lie outside the closed disk.
    pub fn num_den(&self) -> (Poly, Poly) {
        let mut num = Poly::constant(self.factor);
        let mut den = Poly::one();
        for a in &self.zeros {
            num = &num * &Poly::new(vec![-a, Complex64::new(1.0, 0.0)]);
            den = &den * &Poly::new(vec![Complex64::new(1.0, 0.0), -a.conj()]);
        }
        (num, den)
    }

    pub fn to_ratfun(&self) -> RatFun {
        let (num, den) = self.num_den();
        RatFun::from_parts_unchecked(num, den)
    }
}

pub fn blaschke_from_zeros(zeros: &[Complex64], factor: Complex64) -> Result<Blaschke, SchurError> {
    Blaschke::new(zeros.to_vec(), factor)
}
