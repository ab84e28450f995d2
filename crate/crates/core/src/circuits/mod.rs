//! Monitored circuit models and their measurement records.
//!
//! Time steps run `t = 1..=T`. Odd steps are check layers and even steps are
//! single-site layers. On the torus the repetition code alternates x-checks and
//! y-checks, giving a period of four steps.

mod encode;
pub mod toric;

pub use encode::{encode_logical, encode_toric, Logical};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{self, CliffordGate};
use crate::pauli::{Pauli, PauliString, Sign};
use crate::percolation::{Axis, BondLattice, Geometry, QuasiGhz, QuasiGhzTracker, SpatialBond, TemporalBond};
use crate::stabilizer::{StabilizerState, StateError};
use toric::ToricLayout;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    Baseline1D,
    Perturbed1D,
    Ladder,
    Repetition2D,
    Toric2D,
}

/// Per-slot probabilities. Check slots draw one lottery over
/// `p_u | p_zz_m | p_zz_e | idle`, site slots over `p_u | p_x_m | p_x_e (or p_x_i) | idle`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Rates {
    pub p_zz_m: f64,
    pub p_zz_e: f64,
    pub p_x_m: f64,
    pub p_x_e: f64,
    /// Symmetric-unitary probability per slot (perturbed model).
    pub p_u: f64,
    /// Rung-coupling probability per system site (ladder).
    pub p_x_i: f64,
    /// Bath `Z` measurement probability per bath site and even step (ladder).
    pub p_bath_m: f64,
    pub p_plaq_m: f64,
    pub p_star_m: f64,
    /// Bit-flip probability per edge and error step (toric).
    pub p_flip: f64,
    /// Probability that a reported check outcome is flipped (faulty records).
    pub p_faulty: f64,
}

impl Rates {
    /// `p_zz_m = p`, `p_x_m = (1-q)(1-p)`, `p_x_e = q(1-p)`.
    pub fn baseline(p: f64, q: f64) -> Self {
        Rates { p_zz_m: p, p_x_m: (1.0 - q) * (1.0 - p), p_x_e: q * (1.0 - p), ..Default::default() }
    }

    /// Baseline rates diluted by a symmetric unitary taking each slot with probability `p_u`.
    pub fn perturbed(p: f64, q: f64, p_u: f64) -> Self {
        let b = Self::baseline(p, q);
        Rates {
            p_zz_m: (1.0 - p_u) * b.p_zz_m,
            p_x_m: (1.0 - p_u) * b.p_x_m,
            p_x_e: (1.0 - p_u) * b.p_x_e,
            p_u,
            ..Default::default()
        }
    }

    /// System `p_zz_m = p`, `p_x_m = (1-p)(1-q)`, rung coupling `p_x_i = (1-p) q`.
    pub fn ladder(p: f64, q: f64, p_bath_m: f64) -> Self {
        Rates { p_zz_m: p, p_x_m: (1.0 - p) * (1.0 - q), p_x_i: (1.0 - p) * q, p_bath_m, ..Default::default() }
    }

    /// Repetition-code noise: checks at `p_zz_m`, X dephasing at `p_x_e`.
    pub fn repetition(p_zz_m: f64, p_x_e: f64) -> Self {
        Rates { p_zz_m, p_x_e, ..Default::default() }
    }

    pub fn toric(p_plaq_m: f64, p_flip: f64) -> Self {
        Rates { p_plaq_m, p_flip, ..Default::default() }
    }

    fn validate(&self) -> Result<(), ModelError> {
        let all = [
            self.p_zz_m,
            self.p_zz_e,
            self.p_x_m,
            self.p_x_e,
            self.p_u,
            self.p_x_i,
            self.p_bath_m,
            self.p_plaq_m,
            self.p_star_m,
            self.p_flip,
            self.p_faulty,
        ];
        if all.iter().any(|p| !(0.0..=1.0).contains(p) || p.is_nan()) {
            return Err(ModelError::InvalidRates("probabilities must lie in [0, 1]".into()));
        }
        let eps = 1e-12;
        if self.p_u + self.p_zz_m + self.p_zz_e > 1.0 + eps {
            return Err(ModelError::InvalidRates("p_u + p_zz_m + p_zz_e exceeds 1".into()));
        }
        if self.p_u + self.p_x_m + self.p_x_e + self.p_x_i > 1.0 + eps {
            return Err(ModelError::InvalidRates("site-slot probabilities exceed 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub kind: ModelKind,
    pub geometry: Geometry,
    /// Number of time steps `T`.
    pub steps: usize,
    pub rates: Rates,
    /// Record flipped check outcomes with probability `rates.p_faulty`.
    pub faulty: bool,
}

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("invalid rates: {0}")]
    InvalidRates(String),
    #[error("model {kind:?} does not support geometry {geometry:?}")]
    BadGeometry { kind: ModelKind, geometry: Geometry },
    #[error("initial state has {got} qubits, model needs {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("record cannot be mapped to a bond lattice: {0}")]
    NotMeasurementOnly(String),
    #[error("record replay diverged at layer {layer}: {msg}")]
    Replay { layer: usize, msg: String },
    #[error(transparent)]
    State(#[from] StateError),
}

impl ModelConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        self.rates.validate()?;
        let ok = match (self.kind, self.geometry) {
            (ModelKind::Baseline1D | ModelKind::Perturbed1D | ModelKind::Ladder, Geometry::Ring { l }) => l >= 2,
            (ModelKind::Repetition2D | ModelKind::Toric2D, Geometry::Torus { lx, ly }) => lx >= 2 && ly >= 2,
            _ => false,
        };
        if !ok {
            return Err(ModelError::BadGeometry { kind: self.kind, geometry: self.geometry });
        }
        if self.kind == ModelKind::Ladder {
            if let Geometry::Ring { l } = self.geometry {
                if l % 2 == 1 {
                    return Err(ModelError::BadGeometry { kind: self.kind, geometry: self.geometry });
                }
            }
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        match (self.kind, self.geometry) {
            (ModelKind::Ladder, g) => 2 * g.num_sites(),
            (ModelKind::Toric2D, Geometry::Torus { lx, ly }) => 2 * lx * ly,
            (_, g) => g.num_sites(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabKind {
    Plaquette,
    Star,
}

/// One recorded operation. `outcome` is the projected eigenvalue; `reported`
/// is what the record shows (they differ only for faulty measurements).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    MeasureZZ { bond: usize, outcome: Sign, reported: Sign },
    DephaseZZ { bond: usize },
    MeasureX { site: usize, outcome: Sign },
    DephaseX { site: usize },
    MeasureZ { site: usize, outcome: Sign },
    Gate { sites: [usize; 2], gate: CliffordGate },
    FlipX { site: usize },
    MeasureStab { kind: StabKind, index: usize, outcome: Sign, reported: Sign },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LayerKind {
    /// `ZZ` checks along an axis.
    Checks(Axis),
    /// Single-site layer on the system qubits.
    Sites,
    /// Bath unitaries and measurements (ladder).
    Bath,
    /// Toric stabilizer measurements.
    Stabilizers(StabKind),
    /// Toric error layer.
    Errors,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordLayer {
    pub kind: LayerKind,
    pub ops: Vec<Op>,
}

/// Complete account of what a trial did, sufficient to replay it exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    pub kind: ModelKind,
    pub geometry: Geometry,
    pub num_qubits: usize,
    pub layers: Vec<RecordLayer>,
}

#[derive(Clone, Debug)]
pub struct TrialOutput {
    pub final_state: StabilizerState,
    pub record: MeasurementRecord,
}

/// Draw for a check slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckSlot {
    Unitary,
    Measure,
    Dephase,
    Idle,
}

/// Draw for a site slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiteSlot {
    Unitary,
    Measure,
    Dephase,
    Rung,
    Idle,
}

#[inline]
pub fn draw_check<R: Rng + ?Sized>(rates: &Rates, rng: &mut R) -> CheckSlot {
    let u: f64 = rng.gen();
    if u < rates.p_u {
        CheckSlot::Unitary
    } else if u < rates.p_u + rates.p_zz_m {
        CheckSlot::Measure
    } else if u < rates.p_u + rates.p_zz_m + rates.p_zz_e {
        CheckSlot::Dephase
    } else {
        CheckSlot::Idle
    }
}

#[inline]
pub fn draw_site<R: Rng + ?Sized>(rates: &Rates, rng: &mut R) -> SiteSlot {
    let u: f64 = rng.gen();
    if u < rates.p_u {
        SiteSlot::Unitary
    } else if u < rates.p_u + rates.p_x_m {
        SiteSlot::Measure
    } else if u < rates.p_u + rates.p_x_m + rates.p_x_e {
        SiteSlot::Dephase
    } else if u < rates.p_u + rates.p_x_m + rates.p_x_e + rates.p_x_i {
        SiteSlot::Rung
    } else {
        SiteSlot::Idle
    }
}

fn report<R: Rng + ?Sized>(outcome: Sign, cfg: &ModelConfig, rng: &mut R) -> Sign {
    if cfg.faulty && rng.gen::<f64>() < cfg.rates.p_faulty {
        outcome.flipped()
    } else {
        outcome
    }
}

/// Layer kind of step `t` (1-based) for the check-based models.
pub fn step_kind(geometry: Geometry, t: usize) -> LayerKind {
    match geometry {
        Geometry::Ring { .. } => {
            if t % 2 == 1 {
                LayerKind::Checks(Axis::X)
            } else {
                LayerKind::Sites
            }
        }
        Geometry::Torus { .. } => match t % 4 {
            1 => LayerKind::Checks(Axis::X),
            3 => LayerKind::Checks(Axis::Y),
            _ => LayerKind::Sites,
        },
    }
}

/// Runs one trajectory from `initial`.
pub fn run_trial<R: Rng + ?Sized>(
    cfg: &ModelConfig,
    initial: &StabilizerState,
    rng: &mut R,
) -> Result<TrialOutput, ModelError> {
    cfg.validate()?;
    let n = cfg.num_qubits();
    if initial.num_qubits() != n {
        return Err(ModelError::WrongSize { expected: n, got: initial.num_qubits() });
    }
    let mut st = initial.clone();
    let mut layers = Vec::with_capacity(cfg.steps + cfg.steps / 2);
    match cfg.kind {
        ModelKind::Baseline1D | ModelKind::Perturbed1D | ModelKind::Repetition2D => {
            for t in 1..=cfg.steps {
                layers.push(check_model_step(cfg, &mut st, step_kind(cfg.geometry, t), rng)?);
            }
        }
        ModelKind::Ladder => {
            for t in 1..=cfg.steps {
                ladder_step(cfg, &mut st, t, rng, &mut layers)?;
            }
        }
        ModelKind::Toric2D => {
            let Geometry::Torus { lx, ly } = cfg.geometry else { unreachable!() };
            let lay = ToricLayout::new(lx, ly);
            for t in 1..=cfg.steps {
                layers.push(toric_step(cfg, &lay, &mut st, t, rng)?);
            }
        }
    }
    let record = MeasurementRecord { kind: cfg.kind, geometry: cfg.geometry, num_qubits: n, layers };
    Ok(TrialOutput { final_state: st, record })
}

fn check_model_step<R: Rng + ?Sized>(
    cfg: &ModelConfig,
    st: &mut StabilizerState,
    kind: LayerKind,
    rng: &mut R,
) -> Result<RecordLayer, ModelError> {
    let n = st.num_qubits();
    let g = cfg.geometry;
    let mut ops = Vec::new();
    match kind {
        LayerKind::Checks(axis) => {
            for b in 0..g.num_sites() {
                let (a, c) = g.bond_sites(axis, b);
                match draw_check(&cfg.rates, rng) {
                    CheckSlot::Unitary => {
                        let gate = clifford::sample(clifford::z2_symmetric_two_qubit(), rng);
                        st.apply_gate(&gate, &[a, c])?;
                        ops.push(Op::Gate { sites: [a, c], gate });
                    }
                    CheckSlot::Measure => {
                        let outcome = st.measure(&PauliString::zz(n, a, c), rng)?.outcome;
                        let reported = report(outcome, cfg, rng);
                        ops.push(Op::MeasureZZ { bond: b, outcome, reported });
                    }
                    CheckSlot::Dephase => {
                        st.dephase(&PauliString::zz(n, a, c))?;
                        ops.push(Op::DephaseZZ { bond: b });
                    }
                    CheckSlot::Idle => {}
                }
            }
        }
        LayerKind::Sites => {
            for j in 0..g.num_sites() {
                match draw_site(&cfg.rates, rng) {
                    SiteSlot::Unitary => {
                        let gate = clifford::sample(clifford::z2_symmetric_one_qubit(), rng);
                        st.apply_gate(&gate, &[j])?;
                        ops.push(Op::Gate { sites: [j, j], gate });
                    }
                    SiteSlot::Measure => {
                        let outcome = st.measure(&PauliString::single(n, j, Pauli::X), rng)?.outcome;
                        ops.push(Op::MeasureX { site: j, outcome });
                    }
                    SiteSlot::Dephase => {
                        st.dephase(&PauliString::single(n, j, Pauli::X))?;
                        ops.push(Op::DephaseX { site: j });
                    }
                    SiteSlot::Rung | SiteSlot::Idle => {}
                }
            }
        }
        _ => unreachable!("not a check-model layer"),
    }
    Ok(RecordLayer { kind, ops })
}

fn ladder_step<R: Rng + ?Sized>(
    cfg: &ModelConfig,
    st: &mut StabilizerState,
    t: usize,
    rng: &mut R,
    layers: &mut Vec<RecordLayer>,
) -> Result<(), ModelError> {
    let l = cfg.geometry.num_sites();
    let n = 2 * l;
    if t % 2 == 1 {
        layers.push(check_model_step(cfg, st, LayerKind::Checks(Axis::X), rng)?);
    } else {
        let mut ops = Vec::new();
        for j in 0..l {
            match draw_site(&cfg.rates, rng) {
                SiteSlot::Measure => {
                    let outcome = st.measure(&PauliString::single(n, j, Pauli::X), rng)?.outcome;
                    ops.push(Op::MeasureX { site: j, outcome });
                }
                SiteSlot::Dephase => {
                    st.dephase(&PauliString::single(n, j, Pauli::X))?;
                    ops.push(Op::DephaseX { site: j });
                }
                SiteSlot::Rung => {
                    let gate = clifford::sample(clifford::rung_two_qubit(), rng);
                    st.apply_gate(&gate, &[j, l + j])?;
                    ops.push(Op::Gate { sites: [j, l + j], gate });
                }
                SiteSlot::Unitary | SiteSlot::Idle => {}
            }
        }
        layers.push(RecordLayer { kind: LayerKind::Sites, ops });
    }
    // bath brickwork, alternating pairings, then bath measurements on even steps
    let mut ops = Vec::new();
    let offset = (t + 1) % 2;
    for i in 0..l / 2 {
        let a = l + (2 * i + offset) % l;
        let b = l + (2 * i + 1 + offset) % l;
        let gate = clifford::sample(clifford::all_two_qubit(), rng);
        st.apply_gate(&gate, &[a, b])?;
        ops.push(Op::Gate { sites: [a, b], gate });
    }
    if t % 2 == 0 {
        for j in l..n {
            if rng.gen::<f64>() < cfg.rates.p_bath_m {
                let outcome = st.measure(&PauliString::single(n, j, Pauli::Z), rng)?.outcome;
                ops.push(Op::MeasureZ { site: j, outcome });
            }
        }
    }
    layers.push(RecordLayer { kind: LayerKind::Bath, ops });
    Ok(())
}

fn toric_step<R: Rng + ?Sized>(
    cfg: &ModelConfig,
    lay: &ToricLayout,
    st: &mut StabilizerState,
    t: usize,
    rng: &mut R,
) -> Result<RecordLayer, ModelError> {
    let n = lay.num_qubits();
    let mut ops = Vec::new();
    if t % 2 == 1 {
        let stars = cfg.rates.p_star_m > 0.0 && ((t - 1) / 2) % 2 == 1;
        let (kind, rate) =
            if stars { (StabKind::Star, cfg.rates.p_star_m) } else { (StabKind::Plaquette, cfg.rates.p_plaq_m) };
        for index in 0..lay.num_plaquettes() {
            if rng.gen::<f64>() < rate {
                let op = match kind {
                    StabKind::Plaquette => lay.plaquette(index),
                    StabKind::Star => lay.star(index),
                };
                let outcome = st.measure(&op, rng)?.outcome;
                let reported = report(outcome, cfg, rng);
                ops.push(Op::MeasureStab { kind, index, outcome, reported });
            }
        }
        Ok(RecordLayer { kind: LayerKind::Stabilizers(kind), ops })
    } else {
        for e in 0..n {
            if rng.gen::<f64>() < cfg.rates.p_flip {
                st.apply_pauli(&PauliString::single(n, e, Pauli::X))?;
                ops.push(Op::FlipX { site: e });
            }
        }
        Ok(RecordLayer { kind: LayerKind::Errors, ops })
    }
}

/// Measures every check perfectly and appends the layer(s) to the record.
pub fn final_readout<R: Rng + ?Sized>(out: &mut TrialOutput, rng: &mut R) -> Result<(), ModelError> {
    let n = out.record.num_qubits;
    let g = out.record.geometry;
    let st = &mut out.final_state;
    match out.record.kind {
        ModelKind::Toric2D => {
            let Geometry::Torus { lx, ly } = g else { unreachable!() };
            let lay = ToricLayout::new(lx, ly);
            let mut ops = Vec::new();
            for index in 0..lay.num_plaquettes() {
                let outcome = st.measure(&lay.plaquette(index), rng)?.outcome;
                ops.push(Op::MeasureStab { kind: StabKind::Plaquette, index, outcome, reported: outcome });
            }
            out.record.layers.push(RecordLayer { kind: LayerKind::Stabilizers(StabKind::Plaquette), ops });
        }
        _ => {
            for &axis in g.axes() {
                let mut ops = Vec::new();
                for b in 0..g.num_sites() {
                    let (a, c) = g.bond_sites(axis, b);
                    let outcome = st.measure(&PauliString::zz(n, a, c), rng)?.outcome;
                    ops.push(Op::MeasureZZ { bond: b, outcome, reported: outcome });
                }
                out.record.layers.push(RecordLayer { kind: LayerKind::Checks(axis), ops });
            }
        }
    }
    Ok(())
}

impl MeasurementRecord {
    /// Re-applies every operation with its recorded outcome.
    pub fn replay(&self, initial: &StabilizerState) -> Result<StabilizerState, ModelError> {
        let mut st = initial.clone();
        for li in 0..self.layers.len() {
            let probs = self.replay_layer(li, &mut st)?;
            if let Some(k) = probs.iter().position(|&p| p == 0.0) {
                return Err(ModelError::Replay { layer: li, msg: format!("outcome of op {k} impossible") });
            }
        }
        Ok(st)
    }

    /// Applies layer `li` to `st` and returns the probability of each recorded
    /// outcome, `1` for operations without one. Impossible outcomes leave `st` unchanged
    /// for that operation and report `0`.
    pub fn replay_layer(&self, li: usize, st: &mut StabilizerState) -> Result<Vec<f64>, ModelError> {
        let n = self.num_qubits;
        let layer = &self.layers[li];
        let toric = match self.geometry {
            Geometry::Torus { lx, ly } if self.kind == ModelKind::Toric2D => Some(ToricLayout::new(lx, ly)),
            _ => None,
        };
        let check = |bond: usize| -> Result<PauliString, ModelError> {
            let LayerKind::Checks(axis) = layer.kind else {
                return Err(ModelError::Replay { layer: li, msg: "check outside a check layer".into() });
            };
            let (a, c) = self.geometry.bond_sites(axis, bond);
            Ok(PauliString::zz(n, a, c))
        };
        let mut probs = Vec::with_capacity(layer.ops.len());
        for op in &layer.ops {
            let prob = match *op {
                Op::MeasureZZ { bond, outcome, .. } => st.measure_forced(&check(bond)?, outcome)?,
                Op::DephaseZZ { bond } => {
                    st.dephase(&check(bond)?)?;
                    1.0
                }
                Op::MeasureX { site, outcome } => st.measure_forced(&PauliString::single(n, site, Pauli::X), outcome)?,
                Op::DephaseX { site } => {
                    st.dephase(&PauliString::single(n, site, Pauli::X))?;
                    1.0
                }
                Op::MeasureZ { site, outcome } => st.measure_forced(&PauliString::single(n, site, Pauli::Z), outcome)?,
                Op::Gate { sites, gate } => {
                    st.apply_gate(&gate, &sites[..gate.arity()])?;
                    1.0
                }
                Op::FlipX { site } => {
                    st.apply_pauli(&PauliString::single(n, site, Pauli::X))?;
                    1.0
                }
                Op::MeasureStab { kind, index, outcome, .. } => {
                    let lay = toric
                        .ok_or_else(|| ModelError::Replay { layer: li, msg: "stabilizer outside toric model".into() })?;
                    let p = match kind {
                        StabKind::Plaquette => lay.plaquette(index),
                        StabKind::Star => lay.star(index),
                    };
                    st.measure_forced(&p, outcome)?
                }
            };
            probs.push(prob);
        }
        Ok(probs)
    }

    /// Sites hit by `X` measurements, `X` dephasing or flips, as `(layer, site)`.
    pub fn error_locations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (li, layer) in self.layers.iter().enumerate() {
            for op in &layer.ops {
                match *op {
                    Op::MeasureX { site, .. } | Op::DephaseX { site } | Op::FlipX { site } => out.push((li, site)),
                    _ => {}
                }
            }
        }
        out
    }
}

/// Maps a measurement-only record onto its space-time bond lattice.
pub fn circuit_to_bonds(record: &MeasurementRecord) -> Result<BondLattice, ModelError> {
    let g = record.geometry;
    let n = g.num_sites();
    if !matches!(record.kind, ModelKind::Baseline1D | ModelKind::Perturbed1D | ModelKind::Repetition2D) {
        return Err(ModelError::NotMeasurementOnly(format!("{:?} records have no bond lattice", record.kind)));
    }
    let mut lat = BondLattice::new(g);
    for (li, layer) in record.layers.iter().enumerate() {
        match layer.kind {
            LayerKind::Checks(axis) => {
                let mut bonds = vec![SpatialBond::Broken; n];
                for op in &layer.ops {
                    match *op {
                        Op::MeasureZZ { bond, reported, .. } => bonds[bond] = SpatialBond::Connected(reported),
                        Op::DephaseZZ { bond } => bonds[bond] = SpatialBond::Decorated,
                        _ => return Err(ModelError::NotMeasurementOnly(format!("layer {li} holds {op:?}"))),
                    }
                }
                lat.push_spatial(axis, bonds).map_err(|e| ModelError::NotMeasurementOnly(e.to_string()))?;
            }
            LayerKind::Sites => {
                let mut bonds = vec![TemporalBond::Connected; n];
                for op in &layer.ops {
                    match *op {
                        Op::MeasureX { site, .. } => bonds[site] = TemporalBond::Broken,
                        Op::DephaseX { site } => bonds[site] = TemporalBond::Decorated,
                        _ => return Err(ModelError::NotMeasurementOnly(format!("layer {li} holds {op:?}"))),
                    }
                }
                lat.push_temporal(bonds).map_err(|e| ModelError::NotMeasurementOnly(e.to_string()))?;
            }
            other => return Err(ModelError::NotMeasurementOnly(format!("layer kind {other:?}"))),
        }
    }
    Ok(lat)
}

/// Samples the quasi-GHZ structure of a measurement-only trajectory from `|+...+>`
/// without tracking the state: only bond species are drawn.
pub fn sample_quasi_ghz<R: Rng + ?Sized>(geometry: Geometry, steps: usize, rates: &Rates, rng: &mut R) -> QuasiGhz {
    let n = geometry.num_sites();
    let mut tr = QuasiGhzTracker::new(n);
    for t in 1..=steps {
        match step_kind(geometry, t) {
            LayerKind::Checks(axis) => {
                for b in 0..n {
                    let bond = match draw_check(rates, rng) {
                        CheckSlot::Measure => SpatialBond::Connected(Sign::Plus),
                        CheckSlot::Dephase => SpatialBond::Decorated,
                        _ => SpatialBond::Broken,
                    };
                    if bond != SpatialBond::Broken {
                        let (u, v) = geometry.bond_sites(axis, b);
                        tr.spatial(u, v, bond);
                    }
                }
            }
            _ => {
                for j in 0..n {
                    match draw_site(rates, rng) {
                        SiteSlot::Measure => tr.temporal(j, TemporalBond::Broken),
                        SiteSlot::Dephase => tr.temporal(j, TemporalBond::Decorated),
                        _ => {}
                    }
                }
            }
        }
    }
    tr.finish()
}

/// Samples the bond species of a measurement-only trajectory without tracking the
/// state. Connected spatial bonds carry `+1`.
pub fn sample_bond_lattice<R: Rng + ?Sized>(geometry: Geometry, steps: usize, rates: &Rates, rng: &mut R) -> BondLattice {
    let n = geometry.num_sites();
    let mut lat = BondLattice::new(geometry);
    for t in 1..=steps {
        match step_kind(geometry, t) {
            LayerKind::Checks(axis) => {
                let bonds = (0..n)
                    .map(|_| match draw_check(rates, rng) {
                        CheckSlot::Measure => SpatialBond::Connected(Sign::Plus),
                        CheckSlot::Dephase => SpatialBond::Decorated,
                        _ => SpatialBond::Broken,
                    })
                    .collect();
                lat.push_spatial(axis, bonds).expect("layer sized to geometry");
            }
            _ => {
                let bonds = (0..n)
                    .map(|_| match draw_site(rates, rng) {
                        SiteSlot::Measure => TemporalBond::Broken,
                        SiteSlot::Dephase => TemporalBond::Decorated,
                        _ => TemporalBond::Connected,
                    })
                    .collect();
                lat.push_temporal(bonds).expect("layer sized to geometry");
            }
        }
    }
    lat
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rates_validation() {
        let cfg = ModelConfig {
            kind: ModelKind::Baseline1D,
            geometry: Geometry::Ring { l: 4 },
            steps: 4,
            rates: Rates { p_zz_m: 0.7, p_zz_e: 0.5, ..Default::default() },
            faulty: false,
        };
        assert!(matches!(cfg.validate(), Err(ModelError::InvalidRates(_))));
        let cfg2 = ModelConfig { kind: ModelKind::Toric2D, rates: Rates::default(), ..cfg };
        assert!(matches!(cfg2.validate(), Err(ModelError::BadGeometry { .. })));
    }

    #[test]
    fn baseline_rates_sum_to_one() {
        let r = Rates::baseline(0.3, 0.4);
        assert!((r.p_zz_m + r.p_x_m + r.p_x_e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_measurement_makes_ghz() {
        let cfg = ModelConfig {
            kind: ModelKind::Baseline1D,
            geometry: Geometry::Ring { l: 6 },
            steps: 1,
            rates: Rates { p_zz_m: 1.0, ..Default::default() },
            faulty: false,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let out = run_trial(&cfg, &StabilizerState::plus_state(6), &mut rng).unwrap();
        let x: PauliString = "XXXXXX".parse().unwrap();
        assert_eq!(out.final_state.contains(&x), Some(Sign::Plus));
        assert_eq!(out.final_state.entropy(&[0, 1, 2]), 1);
        let lat = circuit_to_bonds(&out.record).unwrap();
        assert_eq!(lat.num_steps(), 1);
    }
}
