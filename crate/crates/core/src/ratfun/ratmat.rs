use num_complex::Complex64;
use serde::Serialize;

use super::poly::Poly;
use super::rational::RatFun;
use super::RatError;

pub type Mat2 = [[Complex64; 2]; 2];

/// 2x2 matrix of rational functions.
///
/// When built from a shared denominator the unreduced numerators are kept
/// alongside the reduced entries, so callers can combine entries without a
/// round of cancellation per product.
#[derive(Clone, Debug, Serialize)]
pub struct RatMat2 {
    entries: [[RatFun; 2]; 2],
    #[serde(skip)]
    shared: Option<SharedDen>,
}

/// `entries[i][j] = nums[i][j] / den`, unreduced.
#[derive(Clone, Debug, PartialEq)]
pub struct SharedDen {
    pub nums: [[Poly; 2]; 2],
    pub den: Poly,
}

impl RatMat2 {
    pub fn new(entries: [[RatFun; 2]; 2]) -> Self {
        Self {
            entries,
            shared: None,
        }
    }

    pub fn identity() -> Self {
        Self::new([
            [RatFun::one(), RatFun::zero()],
            [RatFun::zero(), RatFun::one()],
        ])
    }

    pub fn from_shared(nums: [[Poly; 2]; 2], den: Poly) -> Result<Self, RatError> {
        let e = |i: usize, j: usize| RatFun::new(nums[i][j].clone(), den.clone());
        let entries = [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]];
        Ok(Self {
            entries,
            shared: Some(SharedDen { nums, den }),
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatFun {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[[RatFun; 2]; 2] {
        &self.entries
    }

    pub fn shared(&self) -> Option<&SharedDen> {
        self.shared.as_ref()
    }

    /// Entrywise evaluation; `PoleAtPoint` if any entry has a pole at `z`.
    pub fn eval(&self, z: Complex64) -> Result<Mat2, RatError> {
        let e = |i: usize, j: usize| self.entries[i][j].eval(z);
        Ok([[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]])
    }

    pub fn det(&self) -> Result<RatFun, RatError> {
        if let Some(s) = &self.shared {
            let n = &s.nums;
            let num = &(&n[0][0] * &n[1][1]) - &(&n[0][1] * &n[1][0]);
            return RatFun::new(num, &s.den * &s.den);
        }
        let e = &self.entries;
        e[0][0].mul(&e[1][1])?.sub(&e[0][1].mul(&e[1][0])?)
    }
}
