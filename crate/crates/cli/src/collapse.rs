//! Scaling fits of CSV curves.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use z2lab::scaling::{estimate_threshold, CollapseParams, CurvePoint, EnsembleCurves, ScalingError, ThresholdEstimate};

use crate::config::{parse_entries, ConfigError, Value};
use crate::runner::{read_csv, Row, RunError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseConfig {
    pub input: PathBuf,
    pub observable: String,
    pub init: CollapseParams,
    /// Which of `(p_c, nu, gamma)` are fitted.
    pub free: [bool; 3],
    pub resamples: usize,
    pub seed: u64,
    pub out: Option<String>,
}

impl CollapseConfig {
    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let entries = parse_entries(text)?;
        const KEYS: [&str; 9] = ["input", "observable", "p_c", "nu", "gamma", "free", "resamples", "seed", "out"];
        if let Some(k) = entries.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(ConfigError::UnknownKey(k.clone()));
        }
        let invalid = |key: &str, msg: &str| ConfigError::Invalid { key: key.into(), msg: msg.into() };
        let word = |key: &str| match entries.get(key) {
            Some(Value::Word(w) | Value::Str(w)) => Ok(Some(w.clone())),
            None => Ok(None),
            Some(_) => Err(invalid(key, "expected a word")),
        };
        let num = |key: &str, default: f64| match entries.get(key) {
            Some(Value::Num(x)) => Ok(*x),
            None => Ok(default),
            Some(_) => Err(invalid(key, "expected a number")),
        };
        let count = |key: &str, default: f64| {
            let x = num(key, default)?;
            if x < 0.0 || x.fract() != 0.0 {
                return Err(invalid(key, "expected a non-negative integer"));
            }
            Ok(x as u64)
        };
        let mut free = [true, true, false];
        if let Some(v) = entries.get("free") {
            let Value::List(items) = v else { return Err(invalid("free", "expected a list")) };
            free = [false; 3];
            for it in items {
                match it {
                    Value::Word(w) if w == "p_c" => free[0] = true,
                    Value::Word(w) if w == "nu" => free[1] = true,
                    Value::Word(w) if w == "gamma" => free[2] = true,
                    _ => return Err(invalid("free", "entries are p_c, nu or gamma")),
                }
            }
        }
        let nu = num("nu", 1.0)?;
        if nu <= 0.0 {
            return Err(invalid("nu", "must be positive"));
        }
        Ok(CollapseConfig {
            input: word("input")?.ok_or(ConfigError::Missing("input".into()))?.into(),
            observable: word("observable")?.ok_or(ConfigError::Missing("observable".into()))?,
            init: CollapseParams { p_c: num("p_c", 0.5)?, nu, gamma: num("gamma", 0.0)? },
            free,
            resamples: count("resamples", 200.0)? as usize,
            seed: count("seed", 0.0)?,
            out: word("out")?,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CollapseError {
    #[error(transparent)]
    Run(#[from] RunError),
    #[error(transparent)]
    Scaling(#[from] ScalingError),
    #[error("no rows for observable `{0}`")]
    NoRows(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseReport {
    pub observable: String,
    pub sizes: Vec<usize>,
    pub estimate: ThresholdEstimate,
}

/// Curves of one observable; rows without a standard error get zero.
pub fn curves_from_rows(rows: &[Row], observable: &str) -> Result<EnsembleCurves, CollapseError> {
    let pts: Vec<CurvePoint> = rows
        .iter()
        .filter(|r| r.observable == observable)
        .map(|r| CurvePoint { p: r.p, l: r.l, mean: r.mean, stderr: r.stderr.unwrap_or(0.0), n: r.n })
        .collect();
    if pts.is_empty() {
        return Err(CollapseError::NoRows(observable.into()));
    }
    Ok(EnsembleCurves::new(pts)?)
}

pub fn run_collapse(cfg: &CollapseConfig, base: &Path) -> Result<CollapseReport, CollapseError> {
    let input = if cfg.input.is_absolute() { cfg.input.clone() } else { base.join(&cfg.input) };
    let rows = read_csv(&input)?;
    let curves = curves_from_rows(&rows, &cfg.observable)?;
    let estimate = estimate_threshold(&curves, cfg.init, cfg.free, cfg.resamples, cfg.seed)?;
    Ok(CollapseReport { observable: cfg.observable.clone(), sizes: curves.sizes(), estimate })
}
