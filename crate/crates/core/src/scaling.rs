//! Finite-size scaling: data collapse, curve crossings and bootstrap errors.
//!
//! A collapse rescales `x = (p - p_c) L^{1/nu}` and `y = mean L^{-gamma}`. Its cost is
//! the mean squared normalized residual of every point against a local linear
//! fit through the points of the other sizes, at the kernel bandwidth that makes
//! this cost smallest.

use argmin::core::{CostFunction, Error as ArgminError, Executor};
use argmin::solver::neldermead::NelderMead;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub p: f64,
    pub l: usize,
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ScalingError {
    #[error("need at least two system sizes, got {0}")]
    TooFewSizes(usize),
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
    #[error("curves never cross")]
    NoCrossing,
}

/// Points of one observable over a parameter grid and several sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleCurves {
    points: Vec<CurvePoint>,
}

impl EnsembleCurves {
    /// Sorts by `(L, p)` and checks that every size has a strictly increasing grid.
    pub fn new(mut points: Vec<CurvePoint>) -> Result<Self, ScalingError> {
        if points.iter().any(|q| !q.p.is_finite() || !q.mean.is_finite()) {
            return Err(ScalingError::DegenerateGrid("non-finite value".into()));
        }
        points.sort_by(|a, b| a.l.cmp(&b.l).then(a.p.total_cmp(&b.p)));
        for w in points.windows(2) {
            if w[0].l == w[1].l && w[0].p == w[1].p {
                return Err(ScalingError::DegenerateGrid(format!("duplicate p = {} at L = {}", w[0].p, w[0].l)));
            }
        }
        let c = EnsembleCurves { points };
        let sizes = c.sizes().len();
        if sizes < 2 {
            return Err(ScalingError::TooFewSizes(sizes));
        }
        Ok(c)
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.points.iter().map(|q| q.l).collect();
        s.dedup();
        s
    }

    pub fn curve(&self, l: usize) -> Vec<CurvePoint> {
        self.points.iter().filter(|q| q.l == l).copied().collect()
    }

    /// Same data with every `p` moved by `dp`.
    pub fn shifted(&self, dp: f64) -> Self {
        let points = self.points.iter().map(|q| CurvePoint { p: q.p + dp, ..*q }).collect();
        EnsembleCurves { points }
    }

    /// Means and errors multiplied by `L^{-gamma}`.
    pub fn rescaled(&self, gamma: f64) -> Self {
        let points = self
            .points
            .iter()
            .map(|q| {
                let k = (q.l as f64).powf(-gamma);
                CurvePoint { mean: q.mean * k, stderr: q.stderr * k, ..*q }
            })
            .collect();
        EnsembleCurves { points }
    }

    fn with_means(&self, means: &[f64]) -> Self {
        let points = self.points.iter().zip(means).map(|(q, &m)| CurvePoint { mean: m, ..*q }).collect();
        EnsembleCurves { points }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseParams {
    pub p_c: f64,
    pub nu: f64,
    pub gamma: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseCost {
    pub cost: f64,
    pub bandwidth: f64,
    /// Points that had neighbours from other sizes.
    pub used: usize,
    /// All rescaled values coincide, so every parameter choice collapses.
    pub degenerate: bool,
}

const BANDWIDTHS: [f64; 8] = [0.02, 0.04, 0.07, 0.1, 0.15, 0.2, 0.3, 0.5];

pub fn collapse_quality(curves: &EnsembleCurves, params: CollapseParams) -> Result<CollapseCost, ScalingError> {
    if params.nu <= 0.0 || !params.nu.is_finite() {
        return Err(ScalingError::DegenerateGrid(format!("nu = {}", params.nu)));
    }
    let pts = curves.points();
    let scaled: Vec<(f64, f64, f64, usize)> = pts
        .iter()
        .map(|q| {
            let lf = q.l as f64;
            let k = lf.powf(-params.gamma);
            ((q.p - params.p_c) * lf.powf(1.0 / params.nu), q.mean * k, q.stderr * k, q.l)
        })
        .collect();
    let ymax = scaled.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    if scaled.iter().all(|s| (s.1 - scaled[0].1).abs() <= 1e-12 * ymax.max(1.0)) {
        return Ok(CollapseCost { cost: 0.0, bandwidth: 0.0, used: pts.len(), degenerate: true });
    }
    let floor = 1e-3 * ymax;
    let sig: Vec<f64> = scaled.iter().map(|s| s.2.max(floor)).collect();
    let xmin = scaled.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let xmax = scaled.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
    let range = xmax - xmin;
    if range <= 0.0 {
        return Err(ScalingError::DegenerateGrid("zero x range".into()));
    }
    let mut best: Option<CollapseCost> = None;
    for &frac in &BANDWIDTHS {
        let h = frac * range;
        let mut sum = 0.0;
        let mut used = 0;
        for (i, &(xi, yi, _, li)) in scaled.iter().enumerate() {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            let (mut s0, mut s1, mut s2, mut t0, mut t1) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for (j, &(xj, yj, _, lj)) in scaled.iter().enumerate() {
                if lj == li {
                    continue;
                }
                lo = lo.min(xj);
                hi = hi.max(xj);
                let d = xj - xi;
                let u = d / h;
                if u.abs() > 4.0 {
                    continue;
                }
                let w = (-0.5 * u * u).exp() / (sig[j] * sig[j]);
                s0 += w;
                s1 += w * d;
                s2 += w * d * d;
                t0 += w * yj;
                t1 += w * d * yj;
            }
            if xi < lo || xi > hi || s0 == 0.0 {
                continue;
            }
            let det = s0 * s2 - s1 * s1;
            let pred = if det > 1e-12 * s0 * s2.max(f64::MIN_POSITIVE) { (s2 * t0 - s1 * t1) / det } else { t0 / s0 };
            let r = (yi - pred) / sig[i];
            sum += r * r;
            used += 1;
        }
        if used * 4 < pts.len() || used < 3 {
            continue;
        }
        let c = CollapseCost { cost: sum / used as f64, bandwidth: h, used, degenerate: false };
        if best.as_ref().is_none_or(|b| c.cost < b.cost) {
            best = Some(c);
        }
    }
    best.ok_or_else(|| ScalingError::DegenerateGrid("rescaled sizes do not overlap".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseFit {
    pub params: CollapseParams,
    pub cost: f64,
}

struct CollapseObjective<'a> {
    curves: &'a EnsembleCurves,
    base: CollapseParams,
    free: [bool; 3],
}

impl CollapseObjective<'_> {
    fn params(&self, x: &[f64]) -> CollapseParams {
        let mut v = [self.base.p_c, self.base.nu, self.base.gamma];
        let mut it = x.iter();
        for (k, f) in self.free.iter().enumerate() {
            if *f {
                v[k] = *it.next().expect("one coordinate per free parameter");
            }
        }
        CollapseParams { p_c: v[0], nu: v[1], gamma: v[2] }
    }
}

impl CostFunction for CollapseObjective<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Vec<f64>) -> Result<f64, ArgminError> {
        let p = self.params(x);
        if p.nu < 0.2 || p.nu > 20.0 {
            return Ok(1e12);
        }
        Ok(collapse_quality(self.curves, p).map_or(1e12, |c| c.cost))
    }
}

/// Minimizes the collapse cost over the parameters marked free in `(p_c, nu, gamma)`.
pub fn fit_collapse(curves: &EnsembleCurves, init: CollapseParams, free: [bool; 3]) -> Result<CollapseFit, ScalingError> {
    let obj = CollapseObjective { curves, base: init, free };
    let start: Vec<f64> = [init.p_c, init.nu, init.gamma]
        .iter()
        .zip(free)
        .filter_map(|(v, f)| f.then_some(*v))
        .collect();
    if start.is_empty() {
        let c = collapse_quality(curves, init)?;
        return Ok(CollapseFit { params: init, cost: c.cost });
    }
    let pspan = {
        let ps: Vec<f64> = curves.points().iter().map(|q| q.p).collect();
        ps.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - ps.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    let steps: Vec<f64> =
        [0.1 * pspan.max(1e-3), 0.25 * init.nu, 0.1].iter().zip(free).filter_map(|(s, f)| f.then_some(*s)).collect();
    let mut simplex = vec![start.clone()];
    for k in 0..start.len() {
        let mut v = start.clone();
        v[k] += steps[k];
        simplex.push(v);
    }
    let solver = NelderMead::new(simplex)
        .with_sd_tolerance(1e-7)
        .map_err(|e| ScalingError::DegenerateGrid(e.to_string()))?;
    let res = Executor::new(obj, solver)
        .configure(|s| s.max_iters(400))
        .run()
        .map_err(|e| ScalingError::DegenerateGrid(e.to_string()))?;
    let best = res.state.best_param.clone().unwrap_or(start);
    let obj = CollapseObjective { curves, base: init, free };
    let params = obj.params(&best);
    let cost = collapse_quality(curves, params)?.cost;
    Ok(CollapseFit { params, cost })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub l1: usize,
    pub l2: usize,
    pub p: f64,
}

/// Crossing of each pair of consecutive sizes on their shared grid points. When
/// the difference changes sign several times the most significant change is used.
pub fn pairwise_crossings(curves: &EnsembleCurves) -> Vec<Crossing> {
    let sizes = curves.sizes();
    let mut out = Vec::new();
    for w in sizes.windows(2) {
        let (a, b) = (curves.curve(w[0]), curves.curve(w[1]));
        let shared: Vec<(f64, f64, f64)> = a
            .iter()
            .filter_map(|qa| {
                b.iter()
                    .find(|qb| (qb.p - qa.p).abs() <= 1e-12)
                    .map(|qb| (qa.p, qb.mean - qa.mean, (qa.stderr.powi(2) + qb.stderr.powi(2)).sqrt()))
            })
            .collect();
        let nonzero: Vec<usize> = (0..shared.len()).filter(|&k| shared[k].1 != 0.0).collect();
        let mut best: Option<(f64, f64)> = None;
        for pair in nonzero.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            let (pi, di, si) = shared[i];
            let (pj, dj, sj) = shared[j];
            if di.signum() == dj.signum() {
                continue;
            }
            // exact zeros in between: take the middle one
            let root = if j == i + 1 { pi + (pj - pi) * di / (di - dj) } else { shared[i + (j - i) / 2].0 };
            let score = (dj - di).abs() / (si + sj + 1e-12);
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((root, score));
            }
        }
        if let Some((p, _)) = best {
            out.push(Crossing { l1: w[0], l2: w[1], p });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub err: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    /// Mean of the pairwise crossings.
    pub crossing: Estimate,
    pub p_c: Estimate,
    pub nu: Estimate,
    pub gamma: Estimate,
    pub cost: f64,
}

/// Mean crossing of the curves `mean L^{-gamma}`.
pub fn mean_crossing(curves: &EnsembleCurves, gamma: f64) -> Option<f64> {
    let c = pairwise_crossings(&curves.rescaled(gamma));
    (!c.is_empty()).then(|| c.iter().map(|x| x.p).sum::<f64>() / c.len() as f64)
}

fn spread(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return f64::NAN;
    }
    let m = xs.iter().sum::<f64>() / xs.len() as f64;
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Crossing and collapse estimates with parametric bootstrap errors: every
/// resample redraws each mean from a normal with its standard error. Crossings
/// are taken on `mean L^{-gamma}` with the initial `gamma`.
pub fn estimate_threshold(
    curves: &EnsembleCurves,
    init: CollapseParams,
    free: [bool; 3],
    resamples: usize,
    seed: u64,
) -> Result<ThresholdEstimate, ScalingError> {
    let crossing = mean_crossing(curves, init.gamma).ok_or(ScalingError::NoCrossing)?;
    let fit = fit_collapse(curves, init, free)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut xs, mut pcs, mut nus, mut gammas) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for _ in 0..resamples {
        let means: Vec<f64> = curves
            .points()
            .iter()
            .map(|q| {
                let z: f64 = StandardNormal.sample(&mut rng);
                q.mean + q.stderr * z
            })
            .collect();
        let boot = curves.with_means(&means);
        if let Some(x) = mean_crossing(&boot, init.gamma) {
            xs.push(x);
        }
        if let Ok(f) = fit_collapse(&boot, fit.params, free) {
            pcs.push(f.params.p_c);
            nus.push(f.params.nu);
            gammas.push(f.params.gamma);
        }
    }
    Ok(ThresholdEstimate {
        crossing: Estimate { value: crossing, err: spread(&xs) },
        p_c: Estimate { value: fit.params.p_c, err: spread(&pcs) },
        nu: Estimate { value: fit.params.nu, err: spread(&nus) },
        gamma: Estimate { value: fit.params.gamma, err: spread(&gammas) },
        cost: fit.cost,
    })
}
