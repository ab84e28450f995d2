//! Checks that the four logical branches of a repetition-code trajectory stay
//! aligned and that located recovery restores each of them.
//!
//! The branches `rho_g` (g in I, X, Y, Z) are replayed through one recorded
//! trajectory. After every layer the group of `rho_g` must be that of `rho_I`
//! plus one extra generator, every recorded outcome must have the same
//! probability on all branches, and the final recovery must return each branch
//! to its initial generators.

use thiserror::Error;

use super::located::{recovery_operator, spanning_sign};
use crate::circuits::{circuit_to_bonds, encode_logical, Logical, MeasurementRecord, ModelError};
use crate::pauli::{PauliString, Sign};
use crate::stabilizer::StabilizerState;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `G(rho_g) = G(rho_I) + {L_g}` failed.
    GroupRelation,
    /// A recorded outcome has different probabilities on two branches.
    BornProbability,
    /// Recovery did not restore the branch.
    Recovery,
}

#[derive(Debug, Error)]
pub enum RecoveryError {
    #[error("{condition:?} violated on branch {branch:?} at layer {layer}")]
    Violated { condition: Condition, branch: Logical, layer: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug)]
pub struct RecoveryReport {
    pub layers_checked: usize,
    /// End site and `Z_cum` of the spanning path used for recovery.
    pub spanning: Option<(usize, Sign)>,
    /// Branch states after the record, in `Logical::ALL` order.
    pub final_states: Vec<StabilizerState>,
    /// Recovery operator applied to every branch.
    pub recovery: Option<PauliString>,
}

fn group_relation(base: &StabilizerState, branch: &StabilizerState) -> bool {
    branch.num_generators() == base.num_generators() + 1
        && base.generators().iter().all(|g| branch.contains(g) == Some(Sign::Plus))
}

/// Replays `record` (which must end with the final readout) on the four branches.
pub fn verify_recovery_conditions(record: &MeasurementRecord) -> Result<RecoveryReport, RecoveryError> {
    let initial: Vec<StabilizerState> = Logical::ALL
        .iter()
        .map(|&g| encode_logical(g, record.kind, record.geometry))
        .collect::<Result<_, _>>()?;
    let mut states = initial.clone();
    let violated = |condition, b: usize, layer| RecoveryError::Violated { condition, branch: Logical::ALL[b], layer };
    for li in 0..record.layers.len() {
        let probs: Vec<Vec<f64>> =
            states.iter_mut().map(|st| record.replay_layer(li, st)).collect::<Result<_, _>>()?;
        for b in 1..4 {
            if probs[b] != probs[0] {
                return Err(violated(Condition::BornProbability, b, li));
            }
        }
        if probs[0].contains(&0.0) {
            return Err(ModelError::Replay { layer: li, msg: "record impossible on the identity branch".into() }.into());
        }
        for b in 1..4 {
            if !group_relation(&states[0], &states[b]) {
                return Err(violated(Condition::GroupRelation, b, li));
            }
        }
    }
    let lattice = circuit_to_bonds(record)?;
    let spanning = spanning_sign(&lattice);
    let recovery = spanning.map(|(v, s)| recovery_operator(&states[0], v, s));
    if let Some(r) = &recovery {
        for (b, st) in states.iter().enumerate() {
            let mut fixed = st.clone();
            fixed.apply_pauli(r).map_err(ModelError::from)?;
            if !fixed.same_group(&initial[b]) {
                return Err(violated(Condition::Recovery, b, record.layers.len()));
            }
        }
    }
    Ok(RecoveryReport { layers_checked: record.layers.len(), spanning, final_states: states, recovery })
}
