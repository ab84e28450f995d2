//! Signed sums over directed backbone paths.
//!
//! Every check layer is one recursion step: a path may stay put or move along a
//! run of consecutive measured checks, collecting their outcomes. Starting from
//! `f(i, 0) = 1`, the update inside a run with prefix signs `s_a` is
//! `f'(r_a) = s_a * sum_b s_b f(r_b)`. A line whose checks are all measured is
//! treated as the open chain through sites `0..n-1`.

use std::ops::{AddAssign, Neg};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use rand::Rng;

use super::located::apply_recovery;
use super::{DecodeVerdict, DecoderId};
use crate::circuits::{circuit_to_bonds, final_readout, ModelError, TrialOutput};
use crate::classical::ClassicalHistory;
use crate::pauli::Sign;
use crate::percolation::{Axis, BondLattice, Geometry, Layer, SpatialBond};
use crate::stabilizer::StabilizerState;

/// Check outcomes of one layer along `axis`; `None` where nothing was measured.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLayer {
    pub axis: Axis,
    pub outcomes: Vec<Option<Sign>>,
}

/// Decoder view of a history: check layers in time order, temporal bonds unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Backbone {
    geometry: Geometry,
    layers: Vec<CheckLayer>,
}

impl Backbone {
    pub fn new(geometry: Geometry, layers: Vec<CheckLayer>) -> Self {
        for l in &layers {
            assert_eq!(l.outcomes.len(), geometry.num_sites(), "check layer size");
        }
        Backbone { geometry, layers }
    }

    /// Keeps the spatial layers of a lattice; dephased checks count as unmeasured.
    pub fn from_lattice(lattice: &BondLattice) -> Self {
        let layers = lattice
            .layers()
            .iter()
            .filter_map(|l| match l {
                Layer::Spatial { axis, bonds } => Some(CheckLayer {
                    axis: *axis,
                    outcomes: bonds
                        .iter()
                        .map(|b| match b {
                            SpatialBond::Connected(s) => Some(*s),
                            _ => None,
                        })
                        .collect(),
                }),
                Layer::Temporal { .. } => None,
            })
            .collect();
        Backbone { geometry: lattice.geometry(), layers }
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn layers(&self) -> &[CheckLayer] {
        &self.layers
    }
}

/// Runs of one layer: `sites[starts[r]..starts[r+1]]` with prefix signs.
struct Runs {
    sites: Vec<usize>,
    signs: Vec<Sign>,
    starts: Vec<usize>,
}

impl Runs {
    fn new() -> Self {
        Runs { sites: Vec::new(), signs: Vec::new(), starts: Vec::new() }
    }

    fn build(&mut self, lines: &[Vec<usize>], outcomes: &[Option<Sign>]) {
        self.sites.clear();
        self.signs.clear();
        self.starts.clear();
        for line in lines {
            let m = line.len();
            let bond = |k: usize| outcomes[line[k % m]];
            // start after an unmeasured check, or at 0 when the whole line is measured
            let first = (0..m).find(|&k| bond(k).is_none()).map_or(0, |k| k + 1);
            let mut k = 0;
            while k < m {
                self.starts.push(self.sites.len());
                let mut s = Sign::Plus;
                loop {
                    let pos = first + k;
                    self.sites.push(line[pos % m]);
                    self.signs.push(s);
                    k += 1;
                    if k == m {
                        break;
                    }
                    match bond(pos) {
                        Some(b) => s = s * b,
                        None => break,
                    }
                }
            }
        }
        self.starts.push(self.sites.len());
    }

    fn propagate<T>(&self, f: &mut [T])
    where
        T: Clone + Zero + Neg<Output = T> + for<'a> AddAssign<&'a T>,
    {
        for r in 0..self.starts.len() - 1 {
            let (a, b) = (self.starts[r], self.starts[r + 1]);
            if b - a < 2 {
                continue;
            }
            let mut total = T::zero();
            for i in a..b {
                let v = &f[self.sites[i]];
                match self.signs[i] {
                    Sign::Plus => total += v,
                    Sign::Minus => total += &(-v.clone()),
                }
            }
            for i in a..b {
                f[self.sites[i]] = match self.signs[i] {
                    Sign::Plus => total.clone(),
                    Sign::Minus => -total.clone(),
                };
            }
        }
    }

    fn propagate_counts(&self, g: &mut [f64]) {
        for r in 0..self.starts.len() - 1 {
            let (a, b) = (self.starts[r], self.starts[r + 1]);
            if b - a < 2 {
                continue;
            }
            let total: f64 = self.sites[a..b].iter().map(|&s| g[s]).sum();
            for &s in &self.sites[a..b] {
                g[s] = total;
            }
        }
    }
}

fn lines_by_axis(geometry: Geometry) -> [Vec<Vec<usize>>; 2] {
    [geometry.lines(Axis::X), geometry.lines(Axis::Y)]
}

/// Value of `f(v, T)` at one final site.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSumValue {
    /// `None` when the sum cancels exactly.
    pub sign: Option<Sign>,
    /// `log2 |f|`, `-inf` for zero.
    pub log2_magnitude: f64,
    /// `log2` of the number of directed paths.
    pub log2_paths: f64,
    /// Exact value, filled when computed.
    pub exact: Option<BigInt>,
}

/// Relative size below which the float sign is not trusted.
const CANCELLATION: f64 = 1e-9;

/// Float evaluation with per-layer power-of-two rescaling. Returns `(f, g, log2 scale)`
/// where `g` counts paths with all signs taken positive.
pub fn path_sum_float(backbone: &Backbone) -> (Vec<f64>, Vec<f64>, f64) {
    let n = backbone.geometry.num_sites();
    let lines = lines_by_axis(backbone.geometry);
    let mut runs = Runs::new();
    let mut f = vec![1.0f64; n];
    let mut g = vec![1.0f64; n];
    let mut log2_scale = 0.0;
    for layer in &backbone.layers {
        runs.build(&lines[layer.axis as usize], &layer.outcomes);
        runs.propagate(&mut f);
        runs.propagate_counts(&mut g);
        let max = g.iter().cloned().fold(0.0, f64::max);
        let e = max.log2().floor() as i32;
        if e != 0 {
            let k = 2f64.powi(-e);
            f.iter_mut().for_each(|x| *x *= k);
            g.iter_mut().for_each(|x| *x *= k);
            log2_scale += e as f64;
        }
    }
    (f, g, log2_scale)
}

/// Exact integer evaluation of `f(v, T)` for every final site.
pub fn path_sum_exact(backbone: &Backbone) -> Vec<BigInt> {
    let n = backbone.geometry.num_sites();
    let lines = lines_by_axis(backbone.geometry);
    let mut runs = Runs::new();
    let mut f = vec![BigInt::from(1); n];
    for layer in &backbone.layers {
        runs.build(&lines[layer.axis as usize], &layer.outcomes);
        runs.propagate(&mut f);
    }
    f
}

fn sign_of_big(x: &BigInt) -> Option<Sign> {
    if x.is_zero() {
        None
    } else {
        Some(Sign::from_parity(x.is_negative()))
    }
}

fn log2_big(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top: BigInt = x.abs() >> shift;
    let top = top.iter_u64_digits().next().unwrap_or(0) as f64;
    top.log2() + shift as f64
}

/// Path sums at every final site. Values whose float magnitude is within
/// rounding of zero are recomputed exactly; `audit` forces the exact twin everywhere
/// and panics on any sign disagreement.
pub fn path_sum_sign(backbone: &Backbone, audit: bool) -> Vec<PathSumValue> {
    let (f, g, scale) = path_sum_float(backbone);
    let uncertain = f.iter().zip(&g).any(|(fv, gv)| fv.abs() <= CANCELLATION * gv || *gv == 0.0);
    let exact = (audit || uncertain).then(|| path_sum_exact(backbone));
    f.iter()
        .zip(&g)
        .enumerate()
        .map(|(v, (&fv, &gv))| {
            let float_sign = (fv != 0.0).then(|| Sign::from_parity(fv < 0.0));
            let trusted = fv.abs() > CANCELLATION * gv && gv > 0.0;
            let log2_paths = gv.log2() + scale;
            match &exact {
                Some(ex) => {
                    let s = sign_of_big(&ex[v]);
                    if audit && trusted {
                        assert_eq!(s, float_sign, "float and exact path sums disagree at site {v}");
                    }
                    PathSumValue { sign: s, log2_magnitude: log2_big(&ex[v]), log2_paths, exact: Some(ex[v].clone()) }
                }
                None => PathSumValue { sign: float_sign, log2_magnitude: fv.abs().log2() + scale, log2_paths, exact: None },
            }
        })
        .collect()
}

/// Sign of `f(v, T)` at one site, the quantity the decoder reports.
pub fn decode_site(backbone: &Backbone, v: usize) -> PathSumValue {
    path_sum_sign(backbone, false).swap_remove(v)
}

fn verdict(value: &PathSumValue, truth: Sign) -> DecodeVerdict {
    let mut v = DecodeVerdict::new(DecoderId::PathSum, vec![value.sign], vec![truth]);
    v.log2_paths = value.log2_paths;
    v
}

/// Path-sum decoding of a classical history at site 0.
pub fn decode_path_sum(history: &ClassicalHistory) -> DecodeVerdict {
    let value = decode_site(&Backbone::from_lattice(&history.lattice), 0);
    verdict(&value, history.truth[0])
}

/// Runs the final readout on a trial, flips by the sign of `f(0, T)`, and compares
/// with `initial`. A cancelled sum counts as a failure.
pub fn decode_path_sum_trial<R: Rng + ?Sized>(
    trial: &mut TrialOutput,
    initial: &StabilizerState,
    rng: &mut R,
) -> Result<DecodeVerdict, ModelError> {
    final_readout(trial, rng)?;
    let lattice = circuit_to_bonds(&trial.record)?;
    let value = decode_site(&Backbone::from_lattice(&lattice), 0);
    let Some(s) = value.sign else {
        return Ok(verdict(&value, Sign::Plus));
    };
    apply_recovery(&mut trial.final_state, 0, s)?;
    let ok = trial.final_state.same_group(initial);
    Ok(verdict(&value, if ok { s } else { s.flipped() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(outcomes: &[i8]) -> CheckLayer {
        CheckLayer {
            axis: Axis::X,
            outcomes: outcomes
                .iter()
                .map(|&o| match o {
                    1 => Some(Sign::Plus),
                    -1 => Some(Sign::Minus),
                    _ => None,
                })
                .collect(),
        }
    }

    #[test]
    fn runs_wrap_around_the_ring() {
        let g = Geometry::Ring { l: 5 };
        let mut runs = Runs::new();
        // checks (3,4) and (4,0) measured: run 3-4-0
        runs.build(&g.lines(Axis::X), &layer(&[0, 0, 0, 1, -1]).outcomes);
        let mut f = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        runs.propagate(&mut f);
        // total = 4 + 5 - 1 = 8 with signs (+, +, -) on sites 3, 4, 0
        assert_eq!(f, vec![-8.0, 2.0, 3.0, 8.0, 8.0]);
    }

    #[test]
    fn full_line_is_an_open_chain() {
        let b = Backbone::new(Geometry::Ring { l: 3 }, vec![layer(&[-1, 1, -1])]);
        let ex = path_sum_exact(&b);
        // signs relative to site 0: +, -, -; total = 1 - 1 - 1 = -1
        assert_eq!(ex, vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn cancellation_is_exact_zero() {
        let b = Backbone::new(Geometry::Ring { l: 4 }, vec![layer(&[-1, 0, 0, 0])]);
        let v = path_sum_sign(&b, true);
        assert_eq!(v[0].sign, None);
        assert_eq!(v[2].sign, Some(Sign::Plus));
    }
}
