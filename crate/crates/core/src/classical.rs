//! Classical bit-flip dynamics that produce decoder inputs without a quantum state.
//!
//! Bits start at zero. Odd steps record check parities `(-1)^(m_i + m_j)` with
//! probability `p_zz` (the torus alternates x and y checks), even steps flip each
//! bit with probability `p_err`. The final slice measures every check perfectly.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::toric::ToricLayout;
use crate::circuits::{step_kind, LayerKind};
use crate::pauli::Sign;
use crate::percolation::{BondLattice, Geometry, SpatialBond, TemporalBond};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalParams {
    pub geometry: Geometry,
    pub steps: usize,
    pub p_zz: f64,
    pub p_err: f64,
    /// Probability that a bulk record is reported flipped; zero for perfect checks.
    pub p_faulty: f64,
}

impl ClassicalParams {
    pub fn new(geometry: Geometry, steps: usize, p_zz: f64, p_err: f64) -> Self {
        ClassicalParams { geometry, steps, p_zz, p_err, p_faulty: 0.0 }
    }

    /// Faulty records at the same rate as bit flips.
    pub fn faulty(mut self) -> Self {
        self.p_faulty = self.p_err;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalHistory {
    /// Spatial bonds carry reported outcomes; flipped sites are decorated temporal bonds.
    pub lattice: BondLattice,
    pub final_bits: Vec<bool>,
    /// `(-1)^{m_v}` of the final bits.
    pub truth: Vec<Sign>,
}

fn parity(a: bool, b: bool) -> Sign {
    Sign::from_parity(a ^ b)
}

/// Samples one history.
pub fn sample_history<R: Rng + ?Sized>(params: &ClassicalParams, rng: &mut R) -> ClassicalHistory {
    let g = params.geometry;
    let n = g.num_sites();
    let mut bits = vec![false; n];
    let mut lat = BondLattice::new(g);
    for t in 1..=params.steps {
        match step_kind(g, t) {
            LayerKind::Checks(axis) => {
                let bonds = (0..n)
                    .map(|b| {
                        if rng.gen::<f64>() < params.p_zz {
                            let (u, v) = g.bond_sites(axis, b);
                            let mut s = parity(bits[u], bits[v]);
                            if params.p_faulty > 0.0 && rng.gen::<f64>() < params.p_faulty {
                                s = s.flipped();
                            }
                            SpatialBond::Connected(s)
                        } else {
                            SpatialBond::Broken
                        }
                    })
                    .collect();
                lat.push_spatial(axis, bonds).expect("layer sized to geometry");
            }
            _ => {
                let bonds = bits
                    .iter_mut()
                    .map(|m| {
                        if rng.gen::<f64>() < params.p_err {
                            *m = !*m;
                            TemporalBond::Decorated
                        } else {
                            TemporalBond::Connected
                        }
                    })
                    .collect();
                lat.push_temporal(bonds).expect("layer sized to geometry");
            }
        }
    }
    for &axis in g.axes() {
        let bonds = (0..n)
            .map(|b| {
                let (u, v) = g.bond_sites(axis, b);
                SpatialBond::Connected(parity(bits[u], bits[v]))
            })
            .collect();
        lat.push_spatial(axis, bonds).expect("layer sized to geometry");
    }
    let truth = bits.iter().map(|&m| Sign::from_parity(m)).collect();
    ClassicalHistory { lattice: lat, final_bits: bits, truth }
}

/// Probability that a check recorded after `k` flip layers reads `-1`.
pub fn odd_parity_probability(p_err: f64, k: usize) -> f64 {
    0.5 * (1.0 - (1.0 - 2.0 * p_err).powi(2 * k as i32))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToricParams {
    pub lx: usize,
    pub ly: usize,
    pub steps: usize,
    pub p_plaq: f64,
    pub p_err: f64,
    pub p_faulty: f64,
}

/// Bit-flip history of the toric code: plaquette records and flipped edges.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricHistory {
    pub layout: ToricLayout,
    /// One entry per check layer, `None` where the plaquette was not measured.
    /// The last layer is the perfect final readout.
    pub records: Vec<Vec<Option<Sign>>>,
    /// Edges flipped during each error layer (in order), for located decoding.
    pub flips: Vec<Vec<usize>>,
    pub final_flips: Vec<bool>,
}

impl ToricHistory {
    /// Whether the final flips anticommute with the two logical `Z` loops.
    pub fn logical_flips(&self) -> (bool, bool) {
        self.layout.logical_parities(&self.final_flips)
    }
}

fn plaquette_sign(lay: &ToricLayout, flipped: &[bool], p: usize) -> Sign {
    Sign::from_parity(lay.plaquette_edges(p).iter().filter(|&&e| flipped[e]).count() % 2 == 1)
}

pub fn sample_toric_history<R: Rng + ?Sized>(params: &ToricParams, rng: &mut R) -> ToricHistory {
    let lay = ToricLayout::new(params.lx, params.ly);
    let ne = lay.num_qubits();
    let np = lay.num_plaquettes();
    let mut flipped = vec![false; ne];
    let mut records = Vec::new();
    let mut flips = Vec::new();
    for t in 1..=params.steps {
        if t % 2 == 1 {
            let layer = (0..np)
                .map(|p| {
                    (rng.gen::<f64>() < params.p_plaq).then(|| {
                        let s = plaquette_sign(&lay, &flipped, p);
                        if params.p_faulty > 0.0 && rng.gen::<f64>() < params.p_faulty {
                            s.flipped()
                        } else {
                            s
                        }
                    })
                })
                .collect();
            records.push(layer);
        } else {
            let mut layer = Vec::new();
            for (e, f) in flipped.iter_mut().enumerate() {
                if rng.gen::<f64>() < params.p_err {
                    *f = !*f;
                    layer.push(e);
                }
            }
            flips.push(layer);
        }
    }
    records.push((0..np).map(|p| Some(plaquette_sign(&lay, &flipped, p))).collect());
    ToricHistory { layout: lay, records, flips, final_flips: flipped }
}
