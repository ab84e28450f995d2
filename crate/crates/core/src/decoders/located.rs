//! Exact decoding when the error locations are known.

use rand::Rng;

use super::{DecodeVerdict, DecoderId};
use crate::circuits::{circuit_to_bonds, final_readout, ModelError, TrialOutput};
use crate::classical::ClassicalHistory;
use crate::pauli::{Pauli, PauliString, Sign};
use crate::percolation::{find_error_avoiding_path, z_cum, BondLattice};
use crate::stabilizer::{StabilizerState, StateError};

/// `Z_cum` along an error-avoiding spanning path and the site where it ends.
pub fn spanning_sign(lattice: &BondLattice) -> Option<(usize, Sign)> {
    let path = find_error_avoiding_path(lattice, None)?;
    let s = z_cum(lattice, &path).expect("search returns coherent paths");
    Some((path.end, s))
}

/// Bit flips that set every `Z_j Z_v` to `+1`, times the global flip when `zcum = -1`.
pub fn recovery_operator(state: &StabilizerState, v: usize, zcum: Sign) -> PauliString {
    let n = state.num_qubits();
    let mut flips = PauliString::identity(n);
    for j in 0..n {
        let wrong = j != v && state.contains(&PauliString::zz(n, j, v)) == Some(Sign::Minus);
        if wrong != (zcum == Sign::Minus) {
            flips.set(j, Pauli::X);
        }
    }
    flips
}

pub fn apply_recovery(state: &mut StabilizerState, v: usize, zcum: Sign) -> Result<(), StateError> {
    let flips = recovery_operator(state, v, zcum);
    state.apply_pauli(&flips)
}

/// Runs the final readout on a trial, recovers, and compares with `initial`.
///
/// The reported truth is the sign whose correction restores the initial state.
pub fn decode_located<R: Rng + ?Sized>(
    trial: &mut TrialOutput,
    initial: &StabilizerState,
    rng: &mut R,
) -> Result<DecodeVerdict, ModelError> {
    final_readout(trial, rng)?;
    let lattice = circuit_to_bonds(&trial.record)?;
    let Some((v, s)) = spanning_sign(&lattice) else {
        return Ok(DecodeVerdict::new(DecoderId::Located, vec![None], vec![Sign::Plus]));
    };
    apply_recovery(&mut trial.final_state, v, s)?;
    let ok = trial.final_state.same_group(initial);
    Ok(DecodeVerdict::new(DecoderId::Located, vec![Some(s)], vec![if ok { s } else { s.flipped() }]))
}

/// Located decoding of a classical history: `Z_cum` predicts `(-1)^{m_v}`.
pub fn decode_located_classical(history: &ClassicalHistory) -> DecodeVerdict {
    match spanning_sign(&history.lattice) {
        Some((v, s)) => DecodeVerdict::new(DecoderId::Located, vec![Some(s)], vec![history.truth[v]]),
        None => DecodeVerdict::new(DecoderId::Located, vec![None], vec![history.truth[0]]),
    }
}
