use std::fs;
use std::path::Path;

use nevpick::interp::{InterpProblem, ParamPair};
use nevpick::ratfun::{Poly, RatFun};
use nevpick::schurclass::Blaschke;
use num_complex::Complex64;

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_problem(path: &Path, kappa: Option<usize>) -> Result<InterpProblem, CliError> {
    let mut p: InterpProblem = parse_json(path)?;
    if let Some(k) = kappa {
        p.kappa = k;
    }
    p.validate().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(p)
}

pub fn load_points(path: &Path) -> Result<Vec<Complex64>, CliError> {
    parse_json(path)
}

fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Input(format!("not a number pair: {s:?}"));
    let mut parts = s.split(',');
    let re = parts.next().ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?;
    let im = match parts.next() {
        Some(t) => t.trim().parse::<f64>().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Rational function from the parameter mini-language.
pub fn parse_ratfun(spec: &str) -> Result<RatFun, CliError> {
    if let Some(v) = spec.strip_prefix("const:") {
        return Ok(RatFun::constant(parse_complex(v)?));
    }
    if spec == "identity" {
        return Ok(RatFun::identity());
    }
    if let Some(rest) = spec.strip_prefix("ratio:") {
        let (num, den) = rest
            .split_once(':')
            .ok_or_else(|| CliError::Input(format!("ratio needs <numfile>:<denfile>: {spec:?}")))?;
        let num: Vec<Complex64> = parse_json(Path::new(num))?;
        let den: Vec<Complex64> = parse_json(Path::new(den))?;
        return RatFun::new(Poly::new(num), Poly::new(den)).map_err(|e| CliError::Input(e.to_string()));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return parse_json(Path::new(path));
    }
    Err(CliError::Input(format!("unrecognized rational function {spec:?}")))
}

pub fn parse_blaschke(spec: &str) -> Result<Blaschke, CliError> {
    let b = if let Some(v) = spec.strip_prefix("const:") {
        Blaschke::new(Vec::new(), parse_complex(v)?)
    } else if spec == "identity" {
        Blaschke::new(vec![Complex64::new(0.0, 0.0)], Complex64::new(1.0, 0.0))
    } else if let Some(path) = spec.strip_prefix("blaschke:") {
        Blaschke::new(parse_json(Path::new(path))?, Complex64::new(1.0, 0.0))
    } else {
        return Err(CliError::Input(format!("unrecognized Blaschke product {spec:?}")));
    };
    b.map_err(|e| CliError::Input(format!("{spec:?}: {e}")))
}

pub fn parse_param(e: Option<&str>, s: Option<&str>, b: Option<&str>) -> Result<ParamPair, CliError> {
    let pair = match (e, s, b) {
        (Some(e), None, None) => ParamPair::from_e(&parse_ratfun(e)?),
        (None, Some(s), Some(b)) => ParamPair::new(parse_ratfun(s)?, parse_blaschke(b)?),
        _ => return Err(CliError::Usage("give --param-e, or both --param-s and --param-b".into())),
    };
    pair.map_err(|e| CliError::Input(format!("parameter: {e}")))
}
