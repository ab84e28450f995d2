//! Order parameters and mutual information on a ring.
//!
//! `chi_sg = (1/L) sum_{i in A, j in B} |<Z_i Z_j>|^2` and
//! `chi_pm = (1/L) sum_{i in A, j in B} |<X_i ... X_j>|^2`, where the `X` string runs
//! forward from `i` to `j`. For stabilizer states every squared expectation is 0 or 1.

use serde::{Deserialize, Serialize};

use crate::pauli::{Pauli, PauliString};
use crate::percolation::QuasiGhz;
use crate::stabilizer::StabilizerState;

/// Queries the observables need from a state.
pub trait OrderProbe {
    fn num_sites(&self) -> usize;
    /// Whether `Z_i Z_j` is a stabilizer up to sign.
    fn zz_stabilized(&self, i: usize, j: usize) -> bool;
    /// Whether `X_i X_{i+1} ... X_j` (forward around the ring) is a stabilizer up to sign.
    fn x_string_stabilized(&self, i: usize, j: usize) -> bool;
    /// Entanglement entropy of `region` in bits.
    fn entropy_bits(&self, region: &[usize]) -> usize;
}

impl OrderProbe for StabilizerState {
    fn num_sites(&self) -> usize {
        self.num_qubits()
    }

    fn zz_stabilized(&self, i: usize, j: usize) -> bool {
        self.contains(&PauliString::zz(self.num_qubits(), i, j)).is_some()
    }

    fn x_string_stabilized(&self, i: usize, j: usize) -> bool {
        let n = self.num_qubits();
        let len = (j + n - i) % n + 1;
        self.contains(&PauliString::product(n, (0..len).map(|k| (i + k) % n), Pauli::X)).is_some()
    }

    fn entropy_bits(&self, region: &[usize]) -> usize {
        self.entropy(region)
    }
}

impl OrderProbe for QuasiGhz {
    fn num_sites(&self) -> usize {
        QuasiGhz::num_sites(self)
    }

    fn zz_stabilized(&self, i: usize, j: usize) -> bool {
        self.zz_squared(i, j) > 0.0
    }

    fn x_string_stabilized(&self, i: usize, j: usize) -> bool {
        QuasiGhz::x_string_stabilized(self, i, j)
    }

    fn entropy_bits(&self, region: &[usize]) -> usize {
        self.entropy(region)
    }
}

/// The first `l` qubits of a larger state, viewed as a ring.
pub struct Subsystem<'a> {
    pub state: &'a StabilizerState,
    pub l: usize,
}

impl OrderProbe for Subsystem<'_> {
    fn num_sites(&self) -> usize {
        self.l
    }

    fn zz_stabilized(&self, i: usize, j: usize) -> bool {
        self.state.contains(&PauliString::zz(self.state.num_qubits(), i, j)).is_some()
    }

    fn x_string_stabilized(&self, i: usize, j: usize) -> bool {
        let len = (j + self.l - i) % self.l + 1;
        let s = PauliString::product(self.state.num_qubits(), (0..len).map(|k| (i + k) % self.l), Pauli::X);
        self.state.contains(&s).is_some()
    }

    fn entropy_bits(&self, region: &[usize]) -> usize {
        self.state.entropy(region)
    }
}

/// Two disjoint site sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl RegionSpec {
    /// `A = [0, L/8)` and `B = [L/2, L/2 + L/8)` with `L/8` rounded down.
    pub fn antipodal_eighths(l: usize) -> Self {
        let w = l / 8;
        RegionSpec { a: (0..w).collect(), b: (l / 2..l / 2 + w).collect() }
    }

    /// `A = [x1, x2)` and `B = [x3, x4)` on a ring of `l` sites.
    pub fn intervals(l: usize, x1: usize, x2: usize, x3: usize, x4: usize) -> Self {
        let span = |a: usize, b: usize| (a..b).map(|x| x % l).collect();
        RegionSpec { a: span(x1, x2), b: span(x3, x4) }
    }

    pub fn validate(&self, l: usize) -> Result<(), String> {
        if self.a.iter().chain(&self.b).any(|&s| s >= l) {
            return Err("region site out of range".into());
        }
        if self.a.iter().any(|s| self.b.contains(s)) {
            return Err("regions overlap".into());
        }
        Ok(())
    }
}

pub fn chi_sg<P: OrderProbe + ?Sized>(state: &P, regions: &RegionSpec) -> f64 {
    let l = state.num_sites();
    let mut count = 0usize;
    for &i in &regions.a {
        for &j in &regions.b {
            count += state.zz_stabilized(i, j) as usize;
        }
    }
    count as f64 / l as f64
}

pub fn chi_pm<P: OrderProbe + ?Sized>(state: &P, regions: &RegionSpec) -> f64 {
    let l = state.num_sites();
    let mut count = 0usize;
    for &i in &regions.a {
        for &j in &regions.b {
            count += state.x_string_stabilized(i, j) as usize;
        }
    }
    count as f64 / l as f64
}

/// `I(A:B) = S_A + S_B - S_AB` in bits.
pub fn mutual_information<P: OrderProbe + ?Sized>(state: &P, a: &[usize], b: &[usize]) -> usize {
    let ab: Vec<usize> = a.iter().chain(b).copied().collect();
    state.entropy_bits(a) + state.entropy_bits(b) - state.entropy_bits(&ab)
}

/// `I(A : complement)` for `A = [0, x)`, in bits.
pub fn bipartite_mutual_information<P: OrderProbe + ?Sized>(state: &P, x: usize) -> usize {
    let l = state.num_sites();
    let a: Vec<usize> = (0..x).collect();
    let b: Vec<usize> = (x..l).collect();
    mutual_information(state, &a, &b)
}

/// `ln((L / pi) sin(pi x / L))`.
pub fn log_chord(l: usize, x: usize) -> f64 {
    let lf = l as f64;
    (lf / std::f64::consts::PI * (std::f64::consts::PI * x as f64 / lf).sin()).ln()
}

/// Cross ratio `w12 w34 / (w13 w24)` with chord distances `w_ij = sin(pi x_ij / L)`.
pub fn cross_ratio(l: usize, x1: usize, x2: usize, x3: usize, x4: usize) -> f64 {
    let w = |a: usize, b: usize| (std::f64::consts::PI * a.abs_diff(b) as f64 / l as f64).sin();
    w(x1, x2) * w(x3, x4) / (w(x1, x3) * w(x2, x4))
}

/// Running mean and standard error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MeanAccumulator {
    pub n: u64,
    mean: f64,
    m2: f64,
}

impl MeanAccumulator {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    /// Combines two accumulators (order-independent up to rounding).
    pub fn merge(&mut self, other: &MeanAccumulator) {
        if other.n == 0 {
            return;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        self.mean += d * other.n as f64 / n as f64;
        self.m2 += other.m2 + d * d * self.n as f64 * other.n as f64 / n as f64;
        self.n = n;
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// `None` with fewer than two samples.
    pub fn stderr(&self) -> Option<f64> {
        (self.n > 1).then(|| (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt())
    }
}

impl FromIterator<f64> for MeanAccumulator {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = MeanAccumulator::default();
        iter.into_iter().for_each(|x| acc.push(x));
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ghz(l: usize) -> StabilizerState {
        let mut gens = vec![PauliString::product(l, 0..l, Pauli::X)];
        gens.extend((0..l - 1).map(|j| PauliString::zz(l, j, j + 1)));
        StabilizerState::from_generators(l, gens).unwrap()
    }

    #[test]
    fn ghz_and_product_values() {
        let l = 32;
        let r = RegionSpec::antipodal_eighths(l);
        assert_eq!(chi_sg(&ghz(l), &r), l as f64 / 64.0);
        assert_eq!(chi_pm(&ghz(l), &r), 0.0);
        let plus = StabilizerState::plus_state(l);
        assert_eq!(chi_sg(&plus, &r), 0.0);
        assert_eq!(chi_pm(&plus, &r), (l / 8).pow(2) as f64 / l as f64);
        assert_eq!(mutual_information(&ghz(l), &[0], &[16]), 1);
        assert_eq!(mutual_information(&plus, &[0], &[16]), 0);
        assert_eq!(bipartite_mutual_information(&ghz(l), 5), 2);
    }

    #[test]
    fn accumulator_merges() {
        let xs = [1.0, 2.0, 4.0, 8.0, 3.0];
        let all: MeanAccumulator = xs.iter().copied().collect();
        let mut a: MeanAccumulator = xs[..2].iter().copied().collect();
        a.merge(&xs[2..].iter().copied().collect());
        assert!((a.mean() - all.mean()).abs() < 1e-12);
        assert!((a.stderr().unwrap() - all.stderr().unwrap()).abs() < 1e-12);
        assert!((all.mean() - 3.6).abs() < 1e-12);
    }

    #[test]
    fn cross_ratio_of_antipodal_points_is_small() {
        let eta = cross_ratio(256, 0, 1, 128, 129);
        assert!(eta > 0.0 && eta < 1e-3);
    }
}
