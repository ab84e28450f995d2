//! Minimum-weight perfect matching of syndrome changes.
//!
//! Unmeasured checks read `+1` and the history starts from `+1`, so a defect is a
//! check whose value differs from the previous check layer. Defects are paired
//! under periodic Manhattan distance in space plus the layer distance, and each
//! pair is joined by a spatial correction chain.

use rand::Rng;

use super::blossom::min_weight_perfect_matching;
use super::{DecodeVerdict, DecoderId};
use crate::circuits::toric::ToricLayout;
use crate::circuits::{circuit_to_bonds, final_readout, ModelError, TrialOutput};
use crate::classical::{ClassicalHistory, ToricHistory};
use crate::pauli::{Pauli, PauliString, Sign};
use crate::percolation::{BondLattice, Geometry, Layer, SpatialBond};
use crate::stabilizer::StabilizerState;

/// Candidate neighbours per defect before falling back to denser graphs.
pub const NEIGHBOURS: usize = 16;
/// Defect counts up to this size use the complete graph.
pub const COMPLETE_BELOW: usize = 64;

/// A syndrome change at check `check` between layers `layer - 1` and `layer`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Defect {
    pub check: usize,
    pub layer: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub weight: u64,
}

fn ring_distance(a: usize, b: usize, l: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(l - d)
}

/// Matches `n` defects under `dist`, using sparse nearest-neighbour candidates
/// and densifying until a perfect matching exists.
pub fn match_defects(n: usize, dist: impl Fn(usize, usize) -> u64) -> Matching {
    assert!(n % 2 == 0, "odd defect count {n}");
    if n == 0 {
        return Matching { pairs: Vec::new(), weight: 0 };
    }
    let mut k = NEIGHBOURS;
    loop {
        let complete = n <= COMPLETE_BELOW || k >= n - 1;
        let mut edges = Vec::new();
        if complete {
            for i in 0..n {
                for j in i + 1..n {
                    edges.push((i, j, dist(i, j)));
                }
            }
        } else {
            let mut seen = std::collections::HashSet::new();
            let mut row: Vec<(u64, usize)> = Vec::with_capacity(n);
            for i in 0..n {
                row.clear();
                row.extend((0..n).filter(|&j| j != i).map(|j| (dist(i, j), j)));
                row.select_nth_unstable(k - 1);
                for &(d, j) in &row[..k] {
                    if seen.insert((i.min(j), i.max(j))) {
                        edges.push((i.min(j), i.max(j), d));
                    }
                }
            }
        }
        if let Some(mate) = min_weight_perfect_matching(n, &edges) {
            let pairs: Vec<(usize, usize)> = (0..n).filter(|&i| mate[i] > i).map(|i| (i, mate[i])).collect();
            let weight = pairs.iter().map(|&(i, j)| dist(i, j)).sum();
            return Matching { pairs, weight };
        }
        assert!(!complete, "complete graph always has a perfect matching");
        k *= 2;
    }
}

/// Check layers of a ring lattice with unmeasured or dephased checks read as `+1`.
pub fn ring_syndromes(lattice: &BondLattice) -> Vec<Vec<bool>> {
    lattice
        .layers()
        .iter()
        .filter_map(|l| match l {
            Layer::Spatial { bonds, .. } => {
                Some(bonds.iter().map(|b| matches!(b, SpatialBond::Connected(Sign::Minus))).collect())
            }
            Layer::Temporal { .. } => None,
        })
        .collect()
}

/// Changes between consecutive layers, starting from all `+1`.
pub fn syndrome_defects(layers: &[Vec<bool>]) -> Vec<Defect> {
    let mut out = Vec::new();
    let Some(first) = layers.first() else { return out };
    let mut prev = vec![false; first.len()];
    for (t, layer) in layers.iter().enumerate() {
        for (c, (&a, &b)) in prev.iter().zip(layer).enumerate() {
            if a != b {
                out.push(Defect { check: c, layer: t });
            }
        }
        prev.clone_from(layer);
    }
    out
}

/// Bit flips on a ring of `l` sites that fix the matched check pairs.
pub fn ring_correction(l: usize, defects: &[Defect], matching: &Matching) -> Vec<bool> {
    let mut flips = vec![false; l];
    for &(i, j) in &matching.pairs {
        let (a, b) = (defects[i].check.min(defects[j].check), defects[i].check.max(defects[j].check));
        // flipping sites a+1..=b toggles checks a and b
        let range: Vec<usize> = if b - a <= l - (b - a) { (a + 1..=b).collect() } else { (b + 1..a + 1 + l).collect() };
        for s in range {
            flips[s % l] ^= true;
        }
    }
    flips
}

/// Matching and correction for a ring history.
pub fn ring_decode(lattice: &BondLattice) -> (Vec<bool>, Matching) {
    let Geometry::Ring { l } = lattice.geometry() else { panic!("ring decoder needs a ring lattice") };
    let defects = syndrome_defects(&ring_syndromes(lattice));
    let m = match_defects(defects.len(), |i, j| {
        let (a, b) = (defects[i], defects[j]);
        (ring_distance(a.check, b.check, l) + a.layer.abs_diff(b.layer)) as u64
    });
    (ring_correction(l, &defects, &m), m)
}

/// MWPM on a 1+1d classical history; success when the corrected bits are all zero.
pub fn decode_mwpm_repetition(history: &ClassicalHistory) -> DecodeVerdict {
    let (c, m) = ring_decode(&history.lattice);
    let mut v = DecodeVerdict::new(DecoderId::Mwpm, vec![Some(Sign::from_parity(c[0]))], vec![history.truth[0]]);
    v.success = c.iter().zip(&history.final_bits).all(|(a, b)| a == b);
    v.matching_weight = m.weight;
    v
}

/// MWPM on a ring Clifford trajectory; success when the corrected state equals `initial`.
pub fn decode_mwpm_trial<R: Rng + ?Sized>(
    trial: &mut TrialOutput,
    initial: &StabilizerState,
    rng: &mut R,
) -> Result<DecodeVerdict, ModelError> {
    final_readout(trial, rng)?;
    let lattice = circuit_to_bonds(&trial.record)?;
    let (c, m) = ring_decode(&lattice);
    let n = trial.final_state.num_qubits();
    let flips = PauliString::product(n, (0..n).filter(|&j| c[j]), Pauli::X);
    trial.final_state.apply_pauli(&flips)?;
    let ok = trial.final_state.same_group(initial);
    let pred = Sign::from_parity(c[0]);
    let mut v = DecodeVerdict::new(DecoderId::Mwpm, vec![Some(pred)], vec![if ok { pred } else { pred.flipped() }]);
    v.matching_weight = m.weight;
    Ok(v)
}

/// Plaquette records with unmeasured slots read as `+1`.
pub fn toric_syndromes(records: &[Vec<Option<Sign>>]) -> Vec<Vec<bool>> {
    records.iter().map(|r| r.iter().map(|s| *s == Some(Sign::Minus)).collect()).collect()
}

/// Edge flips joining matched plaquette pairs, first along `x` then along `y`.
pub fn toric_correction(lay: &ToricLayout, defects: &[Defect], matching: &Matching) -> Vec<bool> {
    let mut flips = vec![false; lay.num_qubits()];
    let (lx, ly) = (lay.lx, lay.ly);
    for &(i, j) in &matching.pairs {
        let (x1, y1) = lay.plaquette_coords(defects[i].check);
        let (x2, y2) = lay.plaquette_coords(defects[j].check);
        let dx = (x2 + lx - x1) % lx;
        let mut x = x1;
        if dx <= lx - dx {
            for _ in 0..dx {
                flips[lay.v(x + 1, y1)] ^= true;
                x = (x + 1) % lx;
            }
        } else {
            for _ in 0..lx - dx {
                flips[lay.v(x, y1)] ^= true;
                x = (x + lx - 1) % lx;
            }
        }
        let dy = (y2 + ly - y1) % ly;
        let mut y = y1;
        if dy <= ly - dy {
            for _ in 0..dy {
                flips[lay.h(x, y + 1)] ^= true;
                y = (y + 1) % ly;
            }
        } else {
            for _ in 0..ly - dy {
                flips[lay.h(x, y)] ^= true;
                y = (y + ly - 1) % ly;
            }
        }
    }
    flips
}

/// MWPM on a toric bit-flip history; success when error and correction together
/// wind evenly around both cycles.
pub fn decode_mwpm_toric(history: &ToricHistory) -> DecodeVerdict {
    let lay = history.layout;
    let defects = syndrome_defects(&toric_syndromes(&history.records));
    let m = match_defects(defects.len(), |i, j| {
        let (a, b) = (lay.plaquette_coords(defects[i].check), lay.plaquette_coords(defects[j].check));
        (ring_distance(a.0, b.0, lay.lx) + ring_distance(a.1, b.1, lay.ly) + defects[i].layer.abs_diff(defects[j].layer))
            as u64
    });
    let c = toric_correction(&lay, &defects, &m);
    let (c1, c2) = lay.logical_parities(&c);
    let (t1, t2) = history.logical_flips();
    let mut v = DecodeVerdict::new(
        DecoderId::Mwpm,
        vec![Some(Sign::from_parity(c1)), Some(Sign::from_parity(c2))],
        vec![Sign::from_parity(t1), Sign::from_parity(t2)],
    );
    v.matching_weight = m.weight;
    v
}
