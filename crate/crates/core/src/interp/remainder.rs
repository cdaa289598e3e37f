use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::{build_theta, lft_invert, pick_system_with, InterpError, InterpProblem, PickSystem};
use crate::ratfun::{deflate_shared, exact_quotient_inner, exact_quotient_outer, expand, Poly, RatFun};
use crate::schurclass::{
    boundary_sup, default_grid, poles_in_disk, Blaschke, DiskFunction, KernelEstimate, SchurError,
    BOUNDARY_TOL, CONTRACTIVE_TOL, DEFAULT_KERNEL_TOL,
};

const SHARED_ROOT_TOL: f64 = 1e-9;

fn node_blocks(problem: &InterpProblem) -> Vec<(Complex64, usize)> {
    problem.nodes.iter().map(|n| (n.z, n.multiplicity())).collect()
}

/// The Hermite interpolant of least degree, by Newton divided differences
/// over the nodes repeated according to multiplicity.
pub fn hermite_phi(problem: &InterpProblem) -> Poly {
    let mut xs = Vec::with_capacity(problem.size());
    let mut owner = Vec::with_capacity(problem.size());
    for (i, node) in problem.nodes.iter().enumerate() {
        for _ in 0..node.multiplicity() {
            xs.push(node.z);
            owner.push(i);
        }
    }
    let n = xs.len();
    let mut table: Vec<Complex64> = owner.iter().map(|&i| problem.nodes[i].values[0]).collect();
    let mut newton = vec![table[0]];
    for level in 1..n {
        for i in 0..n - level {
            table[i] = if owner[i] == owner[i + level] {
                problem.nodes[owner[i]].values[level]
            } else {
                (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
            };
        }
        newton.push(table[0]);
    }
    let mut phi = Poly::constant(newton[n - 1]);
    for k in (0..n - 1).rev() {
        phi = &(&phi * &Poly::new(vec![-xs[k], Complex64::new(1.0, 0.0)])) + &Poly::constant(newton[k]);
    }
    phi
}

/// Blaschke product with the nodes as zeros, repeated by multiplicity.
pub fn theta_blaschke(problem: &InterpProblem) -> Result<Blaschke, InterpError> {
    let zeros = problem
        .nodes
        .iter()
        .flat_map(|n| std::iter::repeat_n(n.z, n.multiplicity()))
        .collect();
    Ok(Blaschke::new(zeros, Complex64::new(1.0, 0.0))?)
}

/// `f = phi + theta h`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisorRemainder {
    pub phi: Poly,
    pub theta: Blaschke,
    pub h: RatFun,
    /// Poles of `h` in the disk, with multiplicity.
    pub h_index: usize,
    pub h_boundary_sup: f64,
    /// Nodes at which `h` has a pole.
    pub h_poles_at_nodes: Vec<usize>,
}

pub fn divisor_remainder(problem: &InterpProblem, f: &RatFun) -> Result<DivisorRemainder, InterpError> {
    problem.validate()?;
    for p in f.poles()? {
        if (p.value.norm() - 1.0).abs() <= BOUNDARY_TOL {
            return Err(InterpError::NotInHInfinity(p.value));
        }
    }
    let phi = hermite_phi(problem);
    let theta = theta_blaschke(problem)?;
    let (tn, td) = theta.num_den();
    let (p, q) = (f.num(), f.den());
    let blocks = node_blocks(problem);
    // q is coprime to p and so to p - phi q; the node factors of tn are
    // the only candidates for cancellation, and a generic reduction could
    // wrongly merge a close pole-zero pair of f far outside the disk
    let residue = p - &(&phi * q);
    let (hn, hd) = match exact_quotient_inner(&residue, &tn) {
        Some(r) => (&r * &td, q.clone()),
        None => deflate_shared(&residue * &td, q * &tn, &blocks, SHARED_ROOT_TOL),
    };
    let h = RatFun::from_parts_unchecked(hn, hd);
    let h_index = poles_in_disk(&h).map_err(|e| match e {
        SchurError::PoleOnBoundary(z) => InterpError::NotInHInfinity(z),
        e => e.into(),
    })?;
    let (h_boundary_sup, _) = boundary_sup(&h).map_err(|e| match e {
        SchurError::PoleOnBoundary(z) => InterpError::NotInHInfinity(z),
        e => e.into(),
    })?;
    let poles = expand(&h.poles()?);
    let h_poles_at_nodes = problem
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| poles.iter().any(|&a| (a - n.z).norm() <= 1e-6 * (1.0 + n.z.norm())))
        .map(|(i, _)| i)
        .collect();
    Ok(DivisorRemainder {
        phi,
        theta,
        h,
        h_index,
        h_boundary_sup,
        h_poles_at_nodes,
    })
}

impl DivisorRemainder {
    /// `phi + theta h` as a reduced rational function.
    pub fn reconstruct(&self) -> Result<RatFun, InterpError> {
        let (tn, td) = self.theta.num_den();
        let (hn, hd) = (self.h.num(), self.h.den());
        // h from divisor_remainder carries td in its numerator, so
        // phi + theta h = (phi hd + tn hn / td) / hd; td has its roots
        // outside the disk, where power-series division is the stable
        // direction
        let tnhn = &tn * hn;
        let (num, den) = match exact_quotient_outer(&tnhn, &td) {
            Some(q) => (&(&self.phi * hd) + &q, hd.clone()),
            None => (&(&self.phi * &(&td * hd)) + &tnhn, &td * hd),
        };
        // node factors h carries as poles also divide the numerator
        let nodes: Vec<(Complex64, usize)> = self.theta.zeros().iter().map(|&a| (a, 1)).collect();
        let (num, den) = deflate_shared(num, den, &nodes, SHARED_ROOT_TOL);
        Ok(RatFun::from_parts_unchecked(num, den))
    }
}

/// Negative eigenvalue count of the bordered matrix
/// `[[P, col(z_q)], [col(z_p)^*, K_f(z_p, z_q)]]` with
/// `col(zeta) = (I - conj(zeta) T)^{-1} (E - C conj f(zeta))`.
pub fn big_kernel_negsquares(
    ps: &PickSystem,
    f: &impl DiskFunction,
    grid: &[Complex64],
    tol: f64,
) -> Result<KernelEstimate, InterpError> {
    crate::schurclass::check_grid(grid)?;
    let sys = &ps.sys;
    let n = sys.dim();
    let g = grid.len();
    let values: Vec<Complex64> = grid.iter().map(|&z| f.value(z)).collect::<Result<_, _>>()?;
    let mut big = DMatrix::<Complex64>::zeros(n + g, n + g);
    big.view_mut((0, 0), (n, n)).copy_from(ps.p.matrix());
    let id = DMatrix::<Complex64>::identity(n, n);
    for (q, (&zeta, &fz)) in grid.iter().zip(&values).enumerate() {
        let rhs = &sys.e - &sys.c * fz.conj();
        let col = (&id - &sys.t * zeta.conj())
            .lu()
            .solve(&rhs)
            .ok_or(InterpError::Schur(SchurError::PoleOnGrid(zeta)))?;
        big.view_mut((0, n + q), (n, 1)).copy_from(&col);
        big.view_mut((n + q, 0), (1, n)).copy_from(&col.adjoint());
    }
    big.view_mut((n, n), (g, g))
        .copy_from(&crate::schurclass::kernel_gram(grid, &values));
    let (negative, eigenvalues) = crate::schurclass::count_negative(big, tol);
    Ok(KernelEstimate {
        negative,
        eigenvalues,
        grid: grid.to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClauseOutcome {
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Disagreement {
    /// The kernel count is below what the certified clauses imply; a finer
    /// grid may resolve it.
    GridPoverty,
    /// The certified clauses contradict each other, or the kernel count
    /// exceeds a bound they certify.
    Bug,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaReport {
    pub kappa: usize,
    pub divisor_remainder: ClauseOutcome,
    pub kernel: ClauseOutcome,
    pub inverse: ClauseOutcome,
    pub member: Option<bool>,
    pub disagreement: Option<Disagreement>,
}

/// Membership of `f` in `(phi + theta H_kappa) ∩ BL`, decided three ways:
/// by the divisor–remainder form, by the bordered kernel on the default
/// grid, and by the inverse linear fractional map.
pub fn omega_check(problem: &InterpProblem, kappa: usize, f: &RatFun) -> Result<OmegaReport, InterpError> {
    omega_check_with(problem, kappa, f, None, None)
}

/// As `omega_check`, with an explicit kernel grid (the default rings
/// otherwise) and Pick eigenvalue tolerance.
pub fn omega_check_with(
    problem: &InterpProblem,
    kappa: usize,
    f: &RatFun,
    grid: Option<&[Complex64]>,
    eig_tol: Option<f64>,
) -> Result<OmegaReport, InterpError> {
    let ps = pick_system_with(problem, eig_tol)?;
    let sq = ps.sq_minus();
    if kappa < sq {
        return Err(InterpError::InvalidParameter(format!("kappa {kappa} is below sq_-(P) = {sq}")));
    }
    let tol = CONTRACTIVE_TOL;

    let divisor = match divisor_remainder(problem, f) {
        Ok(dr) => {
            let sup = boundary_sup(f).map(|(s, _)| s);
            match sup {
                Ok(s) => ClauseOutcome {
                    holds: dr.h_index <= kappa && s <= 1.0 + tol,
                    detail: format!("h has {} poles in the disk; sup |f| = {s}", dr.h_index),
                },
                Err(e) => ClauseOutcome {
                    holds: false,
                    detail: e.to_string(),
                },
            }
        }
        Err(InterpError::NotInHInfinity(z)) => ClauseOutcome {
            holds: false,
            detail: format!("pole on the unit circle at {z}"),
        },
        Err(e) => return Err(e),
    };

    let grid = match grid {
        Some(g) => g.to_vec(),
        None => {
            let mut avoid = problem.points();
            avoid.extend(expand(&f.poles()?));
            default_grid(&avoid)
        }
    };
    let kernel = match big_kernel_negsquares(&ps, f, &grid, DEFAULT_KERNEL_TOL) {
        Ok(est) => ClauseOutcome {
            holds: est.negative <= kappa,
            detail: format!("{} negative eigenvalues on a {}-point grid", est.negative, grid.len()),
        },
        Err(e) => ClauseOutcome {
            holds: false,
            detail: e.to_string(),
        },
    };

    let theta = build_theta(&ps)?;
    let inverse = match lft_invert(&theta, f) {
        Ok(e) => {
            let poles = poles_in_disk(&e);
            let sup = boundary_sup(&e).map(|(s, _)| s);
            match (poles, sup) {
                (Ok(p), Ok(s)) => ClauseOutcome {
                    holds: p <= kappa - sq && s <= 1.0 + tol,
                    detail: format!("E = {e}: {p} poles in the disk, sup |E| = {s}"),
                },
                (Err(err), _) | (_, Err(err)) => ClauseOutcome {
                    holds: false,
                    detail: format!("E = {e}: {err}"),
                },
            }
        }
        Err(e) => ClauseOutcome {
            holds: false,
            detail: e.to_string(),
        },
    };

    let certified_agree = divisor.holds == inverse.holds;
    let (member, disagreement) = if !certified_agree {
        (None, Some(Disagreement::Bug))
    } else if kernel.holds == divisor.holds {
        (Some(divisor.holds), None)
    } else if kernel.holds {
        (Some(divisor.holds), Some(Disagreement::GridPoverty))
    } else {
        (None, Some(Disagreement::Bug))
    };
    Ok(OmegaReport {
        kappa,
        divisor_remainder: divisor,
        kernel,
        inverse,
        member,
        disagreement,
    })
}
