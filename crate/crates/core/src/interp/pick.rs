use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::{InterpError, InterpProblem};
use crate::hermlin::{
    build_system, default_eig_tol, inertia, serialize_opt_matrix, stein_residual, stein_series,
    stein_solve_unsymmetrized, HermitianMat, Inertia, SystemMatrices,
};
use crate::ratfun::{RatError, RatFun};
use crate::schurclass::{ContourSpec, BOUNDARY_TOL};

/// Largest tolerated Frobenius gap between the direct and series Stein
/// solutions.
pub const STEIN_AGREEMENT: f64 = 1e-8;
pub const MAX_QUAD_POINTS: usize = 4096;
pub const DEFAULT_QUAD_POINTS: usize = 128;

#[derive(Clone, Debug, Serialize)]
pub struct PickSystem {
    pub sys: SystemMatrices,
    pub p: HermitianMat,
    pub inertia: Inertia,
    pub eig_tol: f64,
    #[serde(serialize_with = "serialize_opt_matrix")]
    pub p_inv: Option<DMatrix<Complex64>>,
    pub residual: f64,
    pub asymmetry: f64,
    pub series_gap: f64,
}

impl PickSystem {
    /// Pick system without the invertibility requirement; `p_inv` is set
    /// only when no eigenvalue is within `eig_tol` of zero.
    pub fn analyze(problem: &InterpProblem, eig_tol: Option<f64>) -> Result<Self, InterpError> {
        let sys = build_system(problem)?;
        let raw = stein_solve_unsymmetrized(&sys)?;
        let asymmetry = (&raw - raw.adjoint()).iter().map(|x| x.norm()).fold(0.0, f64::max);
        let p = HermitianMat::symmetrize(raw);
        let residual = stein_residual(&sys, p.matrix());
        let q_norm = crate::hermlin::stein_rhs(&sys).norm();
        let series = stein_series(&sys, 1e-14 * (1.0 + q_norm))?;
        let series_gap = (series.matrix() - p.matrix()).norm();
        if series_gap > STEIN_AGREEMENT {
            return Err(InterpError::SteinMismatch(series_gap));
        }
        let eig_tol = eig_tol.unwrap_or_else(|| default_eig_tol(&p));
        let inertia = inertia(&p, eig_tol);
        let p_inv = if inertia.n_zero == 0 {
            p.matrix().clone().lu().try_inverse()
        } else {
            None
        };
        Ok(Self {
            sys,
            p,
            inertia,
            eig_tol,
            p_inv,
            residual,
            asymmetry,
            series_gap,
        })
    }

    pub fn sq_minus(&self) -> usize {
        self.inertia.n_minus
    }

    pub fn sq_plus(&self) -> usize {
        self.inertia.n_plus
    }

    pub fn p_inv(&self) -> Result<&DMatrix<Complex64>, InterpError> {
        self.p_inv.as_ref().ok_or(InterpError::SingularPick {
            n_zero: self.inertia.n_zero.max(1),
        })
    }
}

/// Pick system of an interpolation problem with invertible Pick matrix.
pub fn pick_system(problem: &InterpProblem) -> Result<PickSystem, InterpError> {
    pick_system_with(problem, None)
}

pub fn pick_system_with(problem: &InterpProblem, eig_tol: Option<f64>) -> Result<PickSystem, InterpError> {
    let ps = PickSystem::analyze(problem, eig_tol)?;
    ps.p_inv()?;
    Ok(ps)
}

/// Stacked jets `f^(j)(z_i) / j!`, `j < n_i`.
pub fn moment_vector(f: &RatFun, problem: &InterpProblem) -> Result<DVector<Complex64>, InterpError> {
    let mut out = Vec::with_capacity(problem.size());
    for (index, node) in problem.nodes.iter().enumerate() {
        let jet = f.jet(node.z, node.multiplicity()).map_err(|e| match e {
            RatError::PoleAtCenter(z) => InterpError::PoleAtNode { index, z },
            e => e.into(),
        })?;
        out.extend(jet.coeffs);
    }
    Ok(DVector::from_vec(out))
}

/// Quadrature points `xi` with weights `(xi - c) / N` over a cycle of
/// circles, so that `sum w g(xi)` approximates `(1 / 2 pi i) \oint g`.
fn cycle_nodes(contours: &[ContourSpec]) -> Vec<(Complex64, Complex64)> {
    contours
        .iter()
        .flat_map(|k| k.nodes().map(move |xi| (xi, (xi - k.center) / k.points as f64)))
        .collect()
}

/// Check that every node sits inside exactly one circle and that no pole
/// of `f` is on or inside any of them.
fn check_cycle(f: &RatFun, problem: &InterpProblem, contours: &[ContourSpec]) -> Result<(), InterpError> {
    for k in contours {
        k.validate()?;
    }
    for (i, node) in problem.nodes.iter().enumerate() {
        let inside = contours.iter().filter(|k| k.encloses(node.z)).count();
        let on = contours
            .iter()
            .any(|k| ((node.z - k.center).norm() - k.radius).abs() <= BOUNDARY_TOL);
        if inside != 1 || on {
            return Err(InterpError::NodesNotEnclosed(i));
        }
    }
    for pole in f.poles()? {
        for k in contours {
            let d = (pole.value - k.center).norm();
            if (d - k.radius).abs() <= BOUNDARY_TOL * (1.0 + k.radius) {
                return Err(InterpError::ContourThroughPole(pole.value));
            }
            if d < k.radius {
                return Err(InterpError::PoleEnclosed(pole.value));
            }
        }
    }
    Ok(())
}

/// `(xi - T)^{-1} E` for each quadrature point, scaled by its weight.
fn weighted_resolvents(sys: &SystemMatrices, nodes: &[(Complex64, Complex64)]) -> Result<DMatrix<Complex64>, InterpError> {
    let n = sys.dim();
    let mut cols = DMatrix::zeros(n, nodes.len());
    for (j, &(xi, w)) in nodes.iter().enumerate() {
        let a = DMatrix::<Complex64>::identity(n, n) * xi - &sys.t;
        let x = a.lu().solve(&sys.e).ok_or(InterpError::ContourThroughPole(xi))?;
        cols.set_column(j, &(x * w));
    }
    Ok(cols)
}

/// Moment vector by contour quadrature of `(xi - T)^{-1} E f(xi)`.
pub fn moment_quadrature(
    f: &RatFun,
    problem: &InterpProblem,
    contours: &[ContourSpec],
) -> Result<DVector<Complex64>, InterpError> {
    check_cycle(f, problem, contours)?;
    let sys = build_system(problem)?;
    let nodes = cycle_nodes(contours);
    let b = weighted_resolvents(&sys, &nodes)?;
    let values: Vec<Complex64> = nodes.iter().map(|&(xi, _)| f.eval(xi)).collect::<Result<_, _>>()?;
    Ok(b * DVector::from_vec(values))
}

/// Schwarz–Pick matrix by tensor trapezoidal quadrature over a cycle of
/// circles:
/// `sum_k sum_l w_k conj(w_l) K_f(xi_k, xi_l) a_k a_l^*`, `a_k = (xi_k - T)^{-1} E`.
pub fn schwarz_pick_matrix(
    f: &RatFun,
    problem: &InterpProblem,
    contours: &[ContourSpec],
) -> Result<HermitianMat, InterpError> {
    check_cycle(f, problem, contours)?;
    let sys = build_system(problem)?;
    let nodes = cycle_nodes(contours);
    let b = weighted_resolvents(&sys, &nodes)?;
    let points: Vec<Complex64> = nodes.iter().map(|&(xi, _)| xi).collect();
    let values: Vec<Complex64> = points.iter().map(|&xi| f.eval(xi)).collect::<Result<_, _>>()?;
    let k = crate::schurclass::kernel_gram(&points, &values);
    Ok(HermitianMat::symmetrize(&b * k * b.adjoint()))
}

/// Trapezoid nodes needed for the double sum to reach working precision
/// when the nearest singularity sits at ratio `rho` to the circle.
fn points_for(rho: f64, minimum: usize) -> usize {
    let need = (f64::EPSILON.ln() / rho.ln()).ceil();
    if need.is_finite() {
        (need as usize).clamp(minimum, MAX_QUAD_POINTS.max(minimum))
    } else {
        minimum
    }
}

/// One centered circle midway between the outermost node and the nearest
/// disk pole of `f`, or one small circle per node, whichever keeps the
/// singularities further from the contour. `points` is a floor; it is
/// raised when a singularity is close enough to slow the quadrature.
pub fn default_contours(
    f: &RatFun,
    problem: &InterpProblem,
    points: usize,
) -> Result<Vec<ContourSpec>, InterpError> {
    let zs = problem.points();
    let poles: Vec<Complex64> = f.poles()?.iter().map(|r| r.value).collect();
    let outer = zs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let nearest_pole = poles.iter().map(|p| p.norm()).fold(1.0, f64::min);
    // per-node circles of half the clearance see their nearest outside
    // singularity at ratio 1/2 and nothing inside but the node
    let per_node_rho = 0.5;
    if nearest_pole > outer {
        let r = 0.5 * (outer + nearest_pole);
        let rho = (outer / r).max(r / nearest_pole);
        if rho <= per_node_rho {
            return Ok(vec![ContourSpec::centered(r, points_for(rho, points))?]);
        }
    }
    let n = points_for(per_node_rho, points);
    zs.iter()
        .enumerate()
        .map(|(i, &z)| {
            let mut gap = 1.0 - z.norm();
            for (j, &w) in zs.iter().enumerate() {
                if j != i {
                    gap = gap.min((z - w).norm());
                }
            }
            for &p in &poles {
                gap = gap.min((z - p).norm());
            }
            Ok(ContourSpec::new(z, 0.5 * gap, n)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::Node;
    use crate::ratfun::Poly;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn worked(kappa: usize) -> InterpProblem {
        InterpProblem::new(
            vec![Node::new(c(0.0), vec![c(1.0)]), Node::new(c(0.5), vec![c(0.5)])],
            kappa,
        )
        .unwrap()
    }

    fn close(a: &DMatrix<Complex64>, want: &[f64], tol: f64) -> bool {
        a.transpose().iter().zip(want).all(|(x, &w)| (x - c(w)).norm() < tol)
    }

    #[test]
    fn worked_example() {
        let ps = pick_system(&worked(1)).unwrap();
        assert!(close(ps.p.matrix(), &[0.0, 0.5, 0.5, 1.0], 1e-14));
        assert!(close(ps.p_inv.as_ref().unwrap(), &[-4.0, 2.0, 2.0, 0.0], 1e-13));
        assert_eq!(ps.inertia, Inertia { n_plus: 1, n_minus: 1, n_zero: 0 });
    }

    #[test]
    fn single_zero_node() {
        let p = InterpProblem::new(vec![Node::new(c(0.0), vec![c(0.0)])], 0).unwrap();
        let ps = pick_system(&p).unwrap();
        assert!(close(ps.p.matrix(), &[1.0], 1e-15));
        assert_eq!(ps.inertia, Inertia { n_plus: 1, n_minus: 0, n_zero: 0 });
    }

    #[test]
    fn c_equal_e_is_singular() {
        let p = InterpProblem::new(
            vec![Node::new(c(0.1), vec![c(1.0)]), Node::new(c(-0.3), vec![c(1.0)])],
            0,
        )
        .unwrap();
        assert!(matches!(pick_system(&p), Err(InterpError::SingularPick { .. })));
        let analysis = PickSystem::analyze(&p, None).unwrap();
        assert_eq!(analysis.inertia.n_zero, 2);
    }

    #[test]
    fn schur_interpolant_has_positive_pick_matrix() {
        // f(z) = z at a double node at the origin: values f(0) = 0, f'(0) = 1
        let p = InterpProblem::new(vec![Node::new(c(0.0), vec![c(0.0), c(1.0)])], 0).unwrap();
        let ps = PickSystem::analyze(&p, None).unwrap();
        assert!(close(ps.p.matrix(), &[1.0, 0.0, 0.0, 0.0], 1e-15));
    }

    #[test]
    fn moments() {
        let p = worked(1);
        let m = moment_vector(&RatFun::identity(), &p).unwrap();
        assert_eq!(m.as_slice(), &[c(0.0), c(0.5)]);
        let f = RatFun::new(Poly::from_real(&[-2.0, 7.0, -4.0]), Poly::from_real(&[-2.0, 8.0, -4.0])).unwrap();
        let m = moment_vector(&f, &p).unwrap();
        assert!((m[0] - c(1.0)).norm() < 1e-14 && (m[1] - c(0.5)).norm() < 1e-14);
        let q = InterpProblem::new(vec![Node::new(c(0.2), vec![c(1.0), c(0.0), c(0.0)])], 0).unwrap();
        assert_eq!(moment_vector(&RatFun::one(), &q).unwrap().as_slice(), &[c(1.0), c(0.0), c(0.0)]);
        let pole = RatFun::new(Poly::one(), Poly::identity()).unwrap();
        assert!(matches!(moment_vector(&pole, &p), Err(InterpError::PoleAtNode { index: 0, .. })));
    }

    #[test]
    fn moment_quadrature_matches_jets() {
        let p = InterpProblem::new(
            vec![Node::new(c(0.1), vec![c(0.0); 2]), Node::new(Complex64::new(-0.2, 0.3), vec![c(0.0)])],
            0,
        )
        .unwrap();
        let f = RatFun::new(Poly::from_real(&[0.3, -0.5, 0.2]), Poly::from_real(&[2.0, 1.0])).unwrap();
        let k = [ContourSpec::centered(0.6, 128).unwrap()];
        let q = moment_quadrature(&f, &p, &k).unwrap();
        let m = moment_vector(&f, &p).unwrap();
        assert!((q - m).norm() < 1e-12);
    }

    #[test]
    fn schwarz_pick_simple_cases() {
        let p = InterpProblem::new(vec![Node::new(c(0.0), vec![c(0.0)])], 0).unwrap();
        let k = [ContourSpec::centered(0.5, 64).unwrap()];
        let sp = schwarz_pick_matrix(&RatFun::identity(), &p, &k).unwrap();
        assert!((sp.matrix()[(0, 0)] - c(1.0)).norm() < 1e-12);
        let v = Complex64::new(0.3, -0.4);
        let sp = schwarz_pick_matrix(&RatFun::constant(v), &p, &k).unwrap();
        assert!((sp.matrix()[(0, 0)] - c(1.0 - v.norm_sqr())).norm() < 1e-12);
    }

    #[test]
    fn schwarz_pick_on_node_circles() {
        let p = worked(1);
        let f = RatFun::new(Poly::from_real(&[-2.0, 7.0, -4.0]), Poly::from_real(&[-2.0, 8.0, -4.0])).unwrap();
        assert!(matches!(
            schwarz_pick_matrix(&f, &p, &[ContourSpec::centered(0.85, 128).unwrap()]),
            Err(InterpError::PoleEnclosed(_))
        ));
        let cycle = default_contours(&f, &p, 128).unwrap();
        assert_eq!(cycle.len(), 2);
        let sp = schwarz_pick_matrix(&f, &p, &cycle).unwrap();
        assert!(close(sp.matrix(), &[0.0, 0.5, 0.5, 1.0], 1e-10));
    }
}
