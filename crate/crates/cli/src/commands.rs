use nevpick::hermlin::{eigenvalues, matrix_rows};
use nevpick::interp::{
    admissible, build_theta, classify_parameter, classify_parameter_with, default_contours, divisor_remainder,
    lft_apply, lft_invert, omega_check_with, pick_system_with, schwarz_pick_matrix, selfcheck_report,
    verify_solution, InterpError, InterpProblem, ParamPair, PickSystem, Theta,
};
use nevpick::ratfun::RatFun;
use nevpick::schurclass::{poles_in_disk, ContourSpec};
use num_complex::Complex64;
use serde_json::{json, to_value, Value};

use crate::{CliError, Report, Status};

fn val<T: serde::Serialize + ?Sized>(x: &T) -> Value {
    to_value(x).expect("report values serialize")
}

impl From<InterpError> for CliError {
    fn from(e: InterpError) -> Self {
        match e {
            InterpError::SelfCheckFailed(_) | InterpError::SteinMismatch(_) | InterpError::ValidationMismatch(_) => {
                CliError::Internal(e.to_string())
            }
            e => CliError::Input(e.to_string()),
        }
    }
}

fn pick(problem: &InterpProblem, tol_eig: Option<f64>) -> Result<PickSystem, CliError> {
    Ok(pick_system_with(problem, tol_eig)?)
}

fn theta_for(problem: &InterpProblem, tol_eig: Option<f64>) -> Result<Theta, CliError> {
    Ok(build_theta(&pick(problem, tol_eig)?)?)
}

pub fn analyze(problem: &InterpProblem, tol_eig: Option<f64>) -> Result<Report, CliError> {
    let ps = PickSystem::analyze(problem, tol_eig)?;
    let value = json!({
        "verb": "analyze",
        "size": problem.size(),
        "system": val(&ps.sys),
        "pick_matrix": val(&ps.p),
        "eigenvalues": eigenvalues(&ps.p),
        "eig_tol": ps.eig_tol,
        "inertia": val(&ps.inertia),
        "min_kappa": ps.sq_minus(),
        "singular": ps.inertia.n_zero > 0,
        "pick_inverse": ps.p_inv.as_ref().map(|m| val(&matrix_rows(m))),
        "stein_residual": ps.residual,
        "asymmetry": ps.asymmetry,
        "series_gap": ps.series_gap,
    });
    Ok(Report::new(value, Status::Pass))
}

pub fn theta(problem: &InterpProblem, tol_eig: Option<f64>, points: usize) -> Result<Report, CliError> {
    let theta = theta_for(problem, tol_eig)?;
    let check = selfcheck_report(&theta, points)?;
    let status = if check.pass { Status::Pass } else { Status::SelfCheck };
    let value = json!({
        "verb": "theta",
        "inertia": val(&theta.pick.inertia),
        "entries": val(theta.rational.entries()),
        "shared_denominator": theta.rational.shared().map(|s| val(&s.den)),
        "det": val(&theta.det_closed_form),
        "selfcheck": val(&check),
    });
    Ok(Report::new(value, status))
}

pub fn solve(problem: &InterpProblem, param: &ParamPair, tol_eig: Option<f64>, tol: f64) -> Result<Report, CliError> {
    let theta = theta_for(problem, tol_eig)?;
    let lp = lft_apply(&theta, param)?;
    let adm = admissible(&theta, param, problem)?;
    let predicted = theta.pick.sq_minus() + param.kappa_tilde();
    let verdict = verify_solution(problem, &lp.f, tol);
    let classification = if adm.pass {
        Value::Null
    } else {
        match classify_parameter(&theta, param, problem) {
            Ok(r) => val(&r),
            Err(e) => json!({ "error": e.to_string() }),
        }
    };
    let status = if verdict.pass { Status::Pass } else { Status::Fail };
    let value = json!({
        "verb": "solve",
        "f": val(&lp.f),
        "kappa_generic": predicted,
        "admissible": val(&adm),
        "cancellation": val(&lp.reduction),
        "verdict": val(&verdict),
        "classification": classification,
    });
    Ok(Report::new(value, status))
}

pub fn verify(
    problem: &InterpProblem,
    f: &RatFun,
    tol: f64,
    radius: Option<f64>,
    points: usize,
) -> Result<Report, CliError> {
    let verdict = verify_solution(problem, f, tol);
    let schwarz_pick = schwarz_pick_report(problem, f, radius, points);
    let status = if verdict.pass { Status::Pass } else { Status::Fail };
    let value = json!({
        "verb": "verify",
        "pass": verdict.pass,
        "details": val(&verdict.details),
        "verdict": val(&verdict),
        "schwarz_pick": schwarz_pick,
    });
    Ok(Report::new(value, status))
}

fn schwarz_pick_report(problem: &InterpProblem, f: &RatFun, radius: Option<f64>, points: usize) -> Value {
    let run = || -> Result<Value, String> {
        let contours = match radius {
            Some(r) => vec![ContourSpec::centered(r, points).map_err(|e| e.to_string())?],
            None => default_contours(f, problem, points).map_err(|e| e.to_string())?,
        };
        let sp = schwarz_pick_matrix(f, problem, &contours).map_err(|e| e.to_string())?;
        let ps = PickSystem::analyze(problem, None).map_err(|e| e.to_string())?;
        let gap = (sp.matrix() - ps.p.matrix()).iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        Ok(json!({ "contours": val(&contours), "matrix": val(&sp), "gap": gap }))
    };
    run().unwrap_or_else(|e| json!({ "error": e }))
}

pub fn invert(problem: &InterpProblem, f: &RatFun, tol_eig: Option<f64>) -> Result<Report, CliError> {
    let theta = theta_for(problem, tol_eig)?;
    let e = lft_invert(&theta, f)?;
    let split = match ParamPair::from_e(&e) {
        Ok(p) => json!({ "s": val(&p.s), "b": val(&p.b), "kappa_tilde": p.kappa_tilde() }),
        Err(err) => json!({ "error": err.to_string() }),
    };
    let value = json!({
        "verb": "invert",
        "e": val(&e),
        "poles_in_disk": poles_in_disk(&e).ok(),
        "param": split,
    });
    Ok(Report::new(value, Status::Pass))
}

pub fn classify(
    problem: &InterpProblem,
    param: &ParamPair,
    tol_eig: Option<f64>,
    tol_zero: f64,
) -> Result<Report, CliError> {
    let theta = theta_for(problem, tol_eig)?;
    let report = classify_parameter_with(&theta, param, problem, tol_zero)?;
    let value = json!({ "verb": "classify", "report": val(&report) });
    Ok(Report::new(value, Status::Pass))
}

pub fn decompose(problem: &InterpProblem, f: &RatFun) -> Result<Report, CliError> {
    let dr = divisor_remainder(problem, f)?;
    let gap = dr.reconstruct()?.coeff_distance(f);
    let value = json!({
        "verb": "decompose",
        "phi": val(&dr.phi),
        "theta": val(&dr.theta),
        "h": val(&dr.h),
        "h_index": dr.h_index,
        "h_boundary_sup": dr.h_boundary_sup,
        "h_poles_at_nodes": val(&dr.h_poles_at_nodes),
        "reconstruction_gap": gap,
    });
    Ok(Report::new(value, Status::Pass))
}

pub fn omega(
    problem: &InterpProblem,
    f: &RatFun,
    grid: Option<&[Complex64]>,
    tol_eig: Option<f64>,
) -> Result<Report, CliError> {
    let r = omega_check_with(problem, problem.kappa, f, grid, tol_eig)?;
    let status = match r.member {
        Some(true) => Status::Pass,
        Some(false) => Status::Fail,
        None => Status::SelfCheck,
    };
    let value = json!({ "verb": "omega", "report": val(&r) });
    Ok(Report::new(value, status))
}
