use serde::Serialize;

use super::{lft_apply, InterpError, InterpProblem, ParamPair, Theta};
use crate::ratfun::RatFun;
use crate::schurclass::{class_index, CONTRACTIVE_TOL};

/// A jet coefficient of `V` is zero when its magnitude is at most this
/// times `1 + max |coefficient|`.
pub const ZERO_JET_TOL: f64 = 1e-9;

/// Largest tolerated residual of a retained interpolation condition.
const RETAINED_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetainedCondition {
    pub node: usize,
    pub orders: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifyReport {
    /// Zero multiplicity of the unreduced `V = Theta21 S + Theta22 B` at
    /// each node.
    pub m: Vec<usize>,
    pub i_plus: Vec<usize>,
    pub i_minus: Vec<usize>,
    pub i_zero: Vec<usize>,
    pub gamma_m: usize,
    pub kappa_tilde: usize,
    pub sq_minus: usize,
    pub predicted_index: usize,
    pub retained_conditions: Vec<RetainedCondition>,
    pub realized_index: usize,
    pub retained_residual: f64,
    /// A zero/nonzero decision on a jet coefficient was within a factor
    /// of ten of the threshold, or the reduction of `U / V` was.
    pub near_threshold: bool,
    /// Nodes where `E` has a pole and the node carries derivative data or
    /// the pole is multiple.
    pub flagged_nodes: Vec<usize>,
    pub f: RatFun,
}

pub fn classify_parameter(
    theta: &Theta,
    param: &ParamPair,
    problem: &InterpProblem,
) -> Result<ClassifyReport, InterpError> {
    classify_parameter_with(theta, param, problem, ZERO_JET_TOL)
}

/// As `classify_parameter`, with the relative cut below which a jet
/// coefficient of V counts as zero.
pub fn classify_parameter_with(
    theta: &Theta,
    param: &ParamPair,
    problem: &InterpProblem,
    zero_tol: f64,
) -> Result<ClassifyReport, InterpError> {
    let lp = lft_apply(theta, param)?;
    let mut near_threshold = lp.reduction.near_threshold;
    let mut m = Vec::with_capacity(problem.nodes.len());
    let len = lp.v.num.degree().unwrap_or(0) + 1;
    for node in &problem.nodes {
        let jet = lp.v.jet(node.z, len)?;
        let scale = 1.0 + jet.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let cut = zero_tol * scale;
        let mut order = 0;
        for c in &jet.coeffs {
            let r = c.norm() / cut;
            if (0.1..10.0).contains(&r) {
                near_threshold = true;
            }
            if r > 1.0 {
                break;
            }
            order += 1;
        }
        m.push(order);
    }

    let mut i_plus = Vec::new();
    let mut i_minus = Vec::new();
    let mut i_zero = Vec::new();
    let mut gamma_m = 0;
    let mut retained_conditions = Vec::new();
    let mut flagged_nodes = Vec::new();
    for (i, node) in problem.nodes.iter().enumerate() {
        let n = node.multiplicity();
        gamma_m += m[i].min(n);
        match n.cmp(&m[i]) {
            std::cmp::Ordering::Greater => {
                i_plus.push(i);
                retained_conditions.push(RetainedCondition {
                    node: i,
                    orders: (0..n - m[i]).collect(),
                });
            }
            std::cmp::Ordering::Less => i_minus.push(i),
            std::cmp::Ordering::Equal => i_zero.push(i),
        }
        let pole_order = param.b.zeros().iter().filter(|&&a| (a - node.z).norm() <= 1e-12).count();
        if pole_order > 1 || (pole_order == 1 && n > 1) {
            flagged_nodes.push(i);
        }
    }
    let kappa_tilde = param.kappa_tilde();
    let sq_minus = theta.pick.sq_minus();
    let predicted_index = (kappa_tilde + sq_minus).checked_sub(gamma_m).ok_or_else(|| {
        InterpError::ValidationMismatch(format!(
            "gamma_m = {gamma_m} exceeds kappa_tilde + sq_-(P) = {}",
            kappa_tilde + sq_minus
        ))
    })?;

    let realized_index = class_index(&lp.f, CONTRACTIVE_TOL)?.index;
    if realized_index != predicted_index {
        return Err(InterpError::ValidationMismatch(format!(
            "realized index {realized_index}, predicted {predicted_index}"
        )));
    }
    let mut retained_residual: f64 = 0.0;
    for rc in &retained_conditions {
        let node = &problem.nodes[rc.node];
        let jet = lp.f.jet(node.z, rc.orders.len())?;
        for &j in &rc.orders {
            retained_residual = retained_residual.max((jet.coeffs[j] - node.values[j]).norm());
        }
    }
    if !(retained_residual <= RETAINED_TOL) {
        return Err(InterpError::ValidationMismatch(format!(
            "retained conditions violated by {retained_residual:e}"
        )));
    }
    Ok(ClassifyReport {
        m,
        i_plus,
        i_minus,
        i_zero,
        gamma_m,
        kappa_tilde,
        sq_minus,
        predicted_index,
        retained_conditions,
        realized_index,
        retained_residual,
        near_threshold,
        flagged_nodes,
        f: lp.f,
    })
}
