use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SchurError;
use crate::ratfun::{Poly, RatFun};

/// Roots within this distance of the unit circle are treated as lying on it.
pub const BOUNDARY_TOL: f64 = 1e-8;

/// Winding quadratures whose value is farther than this from an integer are
/// rejected.
const ROUNDING_LIMIT: f64 = 0.2;

/// Circle `|z - center| = radius` discretized by `points` equispaced nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius: f64,
    pub points: usize,
}

impl ContourSpec {
    pub fn new(center: Complex64, radius: f64, points: usize) -> Result<Self, SchurError> {
        let c = Self {
            center,
            radius,
            points,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn centered(radius: f64, points: usize) -> Result<Self, SchurError> {
        Self::new(Complex64::new(0.0, 0.0), radius, points)
    }

    /// The closed disk of the contour must sit inside the open unit disk.
    pub fn validate(&self) -> Result<(), SchurError> {
        let ok = self.radius > 0.0 && self.center.norm() + self.radius < 1.0 && self.points > 0;
        if ok {
            Ok(())
        } else {
            Err(SchurError::InvalidContour {
                center: self.center,
                radius: self.radius,
            })
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = Complex64> + '_ {
        let n = self.points;
        (0..n).map(move |k| self.center + Complex64::from_polar(self.radius, TAU * k as f64 / n as f64))
    }

    pub fn encloses(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius
    }
}

fn count_inside(p: &Poly) -> Result<usize, SchurError> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let mut n = 0;
    for r in crate::ratfun::poly_roots(p)? {
        let m = r.value.norm();
        if (m - 1.0).abs() <= BOUNDARY_TOL {
            return Err(SchurError::ZeroOnBoundary(r.value));
        }
        if m < 1.0 {
            n += r.multiplicity;
        }
    }
    Ok(n)
}

/// Zeros of `g` in the open disk, with multiplicity.
pub fn zeros_in_disk(g: &RatFun) -> Result<usize, SchurError> {
    if g.is_zero() {
        return Err(SchurError::ZeroFunction);
    }
    count_inside(g.num())
}

/// Poles of `g` in the open disk, with multiplicity.
pub fn poles_in_disk(g: &RatFun) -> Result<usize, SchurError> {
    count_inside(g.den()).map_err(|e| match e {
        SchurError::ZeroOnBoundary(z) => SchurError::PoleOnBoundary(z),
        e => e,
    })
}

/// Zeros minus poles of `g` inside the contour, by trapezoidal quadrature of
/// `g'/g`.
pub fn winding_count(g: &RatFun, contour: &ContourSpec) -> Result<i64, SchurError> {
    contour.validate()?;
    if g.is_zero() {
        return Err(SchurError::ZeroFunction);
    }
    let (num, den) = (g.num(), g.den());
    let (dnum, dden) = (num.derivative(), den.derivative());
    let mut sum = Complex64::new(0.0, 0.0);
    for xi in contour.nodes() {
        let (nv, ns) = num.eval_with_scale(xi);
        let (dv, ds) = den.eval_with_scale(xi);
        if nv.norm() <= 1e-12 * ns || dv.norm() <= 1e-12 * ds {
            return Err(SchurError::SingularOnContour(xi));
        }
        let log_deriv = dnum.eval(xi) / nv - dden.eval(xi) / dv;
        sum += log_deriv * (xi - contour.center);
    }
    let value = sum.re / contour.points as f64;
    let rounded = value.round();
    if (value - rounded).abs() > ROUNDING_LIMIT || sum.im.abs() / contour.points as f64 > ROUNDING_LIMIT {
        return Err(SchurError::QuadratureInconclusive(value));
    }
    Ok(rounded as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn counts() {
        let z2 = RatFun::from_poly(Poly::from_real(&[0.0, 0.0, 1.0]));
        assert_eq!(zeros_in_disk(&z2), Ok(2));
        assert_eq!(zeros_in_disk(&RatFun::one()), Ok(0));
        let q = RatFun::from_poly(Poly::from_real(&[-1.0, 4.0, -2.0]));
        assert_eq!(zeros_in_disk(&q), Ok(1));
        assert_eq!(zeros_in_disk(&RatFun::zero()), Err(SchurError::ZeroFunction));
    }

    #[test]
    fn boundary_zero_rejected() {
        let g = RatFun::from_poly(Poly::from_real(&[1.0, 1.0]));
        assert_eq!(zeros_in_disk(&g), Err(SchurError::ZeroOnBoundary(c(-1.0))));
    }

    #[test]
    fn winding_examples() {
        let k = ContourSpec::centered(0.9, 128).unwrap();
        assert_eq!(winding_count(&RatFun::identity(), &k), Ok(1));
        let f = RatFun::new(Poly::from_real(&[0.25]), Poly::identity()).unwrap();
        assert_eq!(winding_count(&f, &k), Ok(-1));
        let q = RatFun::from_poly(Poly::from_real(&[-1.0, 4.0, -2.0]));
        assert_eq!(winding_count(&q, &ContourSpec::centered(0.9, 256).unwrap()), Ok(1));
    }

    #[test]
    fn contour_through_zero() {
        let k = ContourSpec::centered(0.5, 4).unwrap();
        let g = RatFun::from_poly(Poly::from_real(&[-0.5, 1.0]));
        assert!(matches!(winding_count(&g, &k), Err(SchurError::SingularOnContour(_))));
    }

    #[test]
    fn too_few_points_is_inconclusive() {
        // zero close to the contour needs many nodes
        let g = RatFun::from_poly(Poly::from_real(&[-0.85, 1.0]));
        let k = ContourSpec::centered(0.9, 8).unwrap();
        assert!(matches!(winding_count(&g, &k), Err(SchurError::QuadratureInconclusive(_))));
    }
}
