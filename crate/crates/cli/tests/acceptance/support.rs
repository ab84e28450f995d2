//! Ensembles, fits and checks shared by the criteria.

use rayon::prelude::*;
use z2lab::observables::MeanAccumulator;
use z2lab::rng::{trial_rng, TrialRng};
use z2lab::scaling::{CurvePoint, EnsembleCurves};

pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into() }
    }

    /// Conjunction of several checks, details joined.
    pub fn all(parts: Vec<Verdict>) -> Self {
        Verdict {
            pass: parts.iter().all(|v| v.pass),
            detail: parts.iter().map(|v| format!("[{}] {}", if v.pass { "ok" } else { "x" }, v.detail)).collect::<Vec<_>>().join("; "),
        }
    }
}

/// Mean of `trials` draws of `f`, trial `k` seeded by `trial_rng(seed, grid, k)`.
pub fn ensemble<F>(seed: u64, grid: u64, trials: u64, f: F) -> MeanAccumulator
where
    F: Fn(&mut TrialRng) -> f64 + Sync,
{
    let values: Vec<f64> = (0..trials).into_par_iter().map(|k| f(&mut trial_rng(seed, grid, k))).collect();
    values.into_iter().collect()
}

/// Curves over `sizes x ps`, with `f(l, p, rng)` giving one trial.
pub fn curves<F>(seed: u64, sizes: &[usize], ps: &[f64], trials: u64, f: F) -> EnsembleCurves
where
    F: Fn(usize, f64, &mut TrialRng) -> f64 + Sync,
{
    let mut pts = Vec::new();
    for (i, &l) in sizes.iter().enumerate() {
        for (j, &p) in ps.iter().enumerate() {
            let grid = (i * ps.len() + j) as u64;
            let acc = ensemble(seed, grid, trials, |rng| f(l, p, rng));
            pts.push(CurvePoint { p, l, mean: acc.mean(), stderr: acc.stderr().unwrap_or(0.0), n: acc.n });
        }
    }
    EnsembleCurves::new(pts).expect("well-formed grid")
}

pub fn grid(start: f64, step: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| ((start + step * k as f64) * 1e6).round() / 1e6).collect()
}

pub fn table(curves: &EnsembleCurves) -> String {
    curves
        .sizes()
        .iter()
        .map(|&l| {
            let c = curves.curve(l);
            format!("L={l}: {}", c.iter().map(|q| format!("{:.4}", q.mean)).collect::<Vec<_>>().join(" "))
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

pub fn mean_err(acc: &MeanAccumulator) -> (f64, f64) {
    (acc.mean(), acc.stderr().unwrap_or(0.0))
}

/// Least-squares slope and intercept of `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

pub fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}
