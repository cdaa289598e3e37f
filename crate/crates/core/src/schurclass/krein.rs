use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::zeros::BOUNDARY_TOL;
use super::{Blaschke, SchurError};
use crate::ratfun::{expand, RatError, RatFun};

pub const BOUNDARY_GRID: usize = 512;
pub const CONTRACTIVE_TOL: f64 = 1e-9;

/// `f = s / b` with `s` analytic on the closed disk and `b` collecting the
/// poles of `f` inside the disk.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KreinLanger {
    pub s: RatFun,
    pub b: Blaschke,
    pub index: usize,
    pub boundary_sup: f64,
}

/// Krein–Langer factors of `f`, certified when `sup |f|` on the circle is at
/// most `1 + tol`.
pub fn class_index(f: &RatFun, tol: f64) -> Result<KreinLanger, SchurError> {
    let mut inside = Vec::new();
    let mut den_out = f.den().clone();
    for p in f.poles()? {
        if (p.value.norm() - 1.0).abs() <= BOUNDARY_TOL {
            return Err(SchurError::PoleOnBoundary(p.value));
        }
        if p.value.norm() < 1.0 {
            for _ in 0..p.multiplicity {
                den_out = den_out.deflate(p.value);
            }
            inside.push(p);
        }
    }
    let (sup, _) = boundary_sup(f)?;
    if sup > 1.0 + tol {
        return Err(SchurError::NotContractive { sup });
    }
    let b = Blaschke::new(expand(&inside), Complex64::new(1.0, 0.0))?;
    let (_, b_den) = b.num_den();
    let s = RatFun::new(f.num().clone(), &den_out * &b_den)?;
    Ok(KreinLanger {
        s,
        index: b.degree(),
        b,
        boundary_sup: sup,
    })
}

/// `max |f(t)|` over the unit circle and the point where it is attained:
/// a uniform grid followed by golden-section refinement of every local
/// maximum.
pub fn boundary_sup(f: &RatFun) -> Result<(f64, Complex64), SchurError> {
    let at = |theta: f64| -> Result<f64, SchurError> {
        let t = Complex64::from_polar(1.0, theta);
        match f.eval(t) {
            Ok(v) => Ok(v.norm()),
            Err(RatError::PoleAtPoint(_)) => Err(SchurError::PoleOnBoundary(t)),
            Err(e) => Err(e.into()),
        }
    };
    let n = BOUNDARY_GRID;
    let h = TAU / n as f64;
    let samples: Vec<f64> = (0..n).map(|k| at(h * k as f64)).collect::<Result<_, _>>()?;
    let mut best = (samples[0], 0.0);
    for k in 0..n {
        let (prev, next) = (samples[(k + n - 1) % n], samples[(k + 1) % n]);
        if samples[k] < prev || samples[k] < next {
            continue;
        }
        let (theta, value) = golden_max(&at, h * (k as f64 - 1.0), h * (k as f64 + 1.0))?;
        let value = value.max(samples[k]);
        if value > best.0 {
            best = (value, if value == samples[k] { h * k as f64 } else { theta });
        }
    }
    Ok((best.0, Complex64::from_polar(1.0, best.1)))
}

fn golden_max(
    g: &impl Fn(f64) -> Result<f64, SchurError>,
    mut a: f64,
    mut b: f64,
) -> Result<(f64, f64), SchurError> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut g1, mut g2) = (g(x1)?, g(x2)?);
    for _ in 0..60 {
        if g1 < g2 {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + r * (b - a);
            g2 = g(x2)?;
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - r * (b - a);
            g1 = g(x1)?;
        }
    }
    Ok(if g1 > g2 { (x1, g1) } else { (x2, g2) })
}
