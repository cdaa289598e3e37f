use num_complex::Complex64;
use serde::Serialize;

use super::InterpProblem;
use crate::ratfun::RatFun;
use crate::schurclass::{class_index, CONTRACTIVE_TOL};

pub const VERIFY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionResidual {
    pub node: usize,
    pub order: usize,
    pub target: Complex64,
    /// `None` when `f` has a pole at the node.
    pub value: Option<Complex64>,
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub kappa: usize,
    pub index: Option<usize>,
    pub boundary_sup: Option<f64>,
    pub residuals: Vec<ConditionResidual>,
    pub details: Vec<String>,
}

/// Is `f` a solution of the problem in the class with `problem.kappa`
/// negative squares? Failures are reported, never raised.
pub fn verify_solution(problem: &InterpProblem, f: &RatFun, tol: f64) -> Verdict {
    let mut details = Vec::new();
    let (index, boundary_sup) = match class_index(f, CONTRACTIVE_TOL) {
        Ok(kl) => (Some(kl.index), Some(kl.boundary_sup)),
        Err(e) => {
            details.push(format!("class membership: {e}"));
            (None, None)
        }
    };
    match index {
        Some(i) if i != problem.kappa => details.push(format!("index {i} differs from kappa {}", problem.kappa)),
        _ => {}
    }
    let mut residuals = Vec::new();
    for (i, node) in problem.nodes.iter().enumerate() {
        let jet = f.jet(node.z, node.multiplicity()).ok();
        if jet.is_none() {
            details.push(format!("pole at node {i}"));
        }
        for (j, &target) in node.values.iter().enumerate() {
            let value = jet.as_ref().map(|jt| jt.coeffs[j]);
            let residual = value.map(|v| (v - target).norm());
            if let Some(r) = residual.filter(|&r| !(r <= tol)) {
                details.push(format!("node {i} order {j}: residual {r:e}"));
            }
            residuals.push(ConditionResidual {
                node: i,
                order: j,
                target,
                value,
                residual,
            });
        }
    }
    Verdict {
        pass: details.is_empty(),
        kappa: problem.kappa,
        index,
        boundary_sup,
        residuals,
        details,
    }
}
