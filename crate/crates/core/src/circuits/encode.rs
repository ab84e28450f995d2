//! Code states for the logical branches `1, X, Y, Z`.

use serde::{Deserialize, Serialize};

use super::toric::ToricLayout;
use super::{ModelError, ModelKind};
use crate::pauli::{Pauli, PauliString};
use crate::percolation::Geometry;
use crate::stabilizer::{StabilizerState, StateError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Logical {
    I,
    X,
    Y,
    Z,
}

impl Logical {
    pub const ALL: [Logical; 4] = [Logical::I, Logical::X, Logical::Y, Logical::Z];

    /// Logical operator for given `X` and `Z` representatives; `None` for the identity.
    pub fn operator(self, x: &PauliString, z: &PauliString) -> Option<PauliString> {
        match self {
            Logical::I => None,
            Logical::X => Some(x.clone()),
            Logical::Z => Some(z.clone()),
            Logical::Y => {
                // Y = i X Z
                let mut y = x.clone();
                y.mul_assign_right(z);
                y.add_phase(1);
                Some(y)
            }
        }
    }
}

fn push_all(st: &mut StabilizerState, gens: impl IntoIterator<Item = PauliString>) -> Result<(), StateError> {
    for g in gens {
        match st.add_generator(g) {
            Ok(()) | Err(StateError::Dependent(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

/// Repetition-code checks on a ring or torus.
pub fn repetition_checks(geometry: Geometry) -> Vec<PauliString> {
    let n = geometry.num_sites();
    let mut out = Vec::new();
    for &axis in geometry.axes() {
        for b in 0..n {
            let (a, c) = geometry.bond_sites(axis, b);
            out.push(PauliString::zz(n, a, c));
        }
    }
    out
}

/// Logical `X = prod X_j` and `Z = Z_0` of the repetition code.
pub fn repetition_logicals(n: usize) -> (PauliString, PauliString) {
    (PauliString::product(n, 0..n, Pauli::X), PauliString::single(n, 0, Pauli::Z))
}

/// Code state of the repetition code carrying branch `g`.
pub fn encode_logical(branch: Logical, kind: ModelKind, geometry: Geometry) -> Result<StabilizerState, ModelError> {
    match (kind, geometry) {
        (ModelKind::Baseline1D | ModelKind::Perturbed1D, Geometry::Ring { .. })
        | (ModelKind::Repetition2D, Geometry::Torus { .. }) => {}
        (ModelKind::Toric2D, Geometry::Torus { .. }) => return encode_toric([branch, Logical::I], geometry),
        _ => return Err(ModelError::BadGeometry { kind, geometry }),
    }
    let n = geometry.num_sites();
    let mut st = StabilizerState::maximally_mixed(n);
    push_all(&mut st, repetition_checks(geometry))?;
    let (x, z) = repetition_logicals(n);
    if let Some(op) = branch.operator(&x, &z) {
        st.add_generator(op)?;
    }
    Ok(st)
}

/// Code stabilizers of the toric code (dependent ones dropped).
pub fn toric_code_state(lay: &ToricLayout) -> StabilizerState {
    let mut st = StabilizerState::maximally_mixed(lay.num_qubits());
    let gens = (0..lay.num_plaquettes()).map(|p| lay.plaquette(p)).chain((0..lay.num_plaquettes()).map(|s| lay.star(s)));
    push_all(&mut st, gens).expect("toric stabilizers commute");
    st
}

/// Toric code state with one branch per logical qubit.
pub fn encode_toric(branches: [Logical; 2], geometry: Geometry) -> Result<StabilizerState, ModelError> {
    let Geometry::Torus { lx, ly } = geometry else {
        return Err(ModelError::BadGeometry { kind: ModelKind::Toric2D, geometry });
    };
    let lay = ToricLayout::new(lx, ly);
    let mut st = toric_code_state(&lay);
    let pairs = [(lay.logical_x1(), lay.logical_z1()), (lay.logical_x2(), lay.logical_z2())];
    for (b, (x, z)) in branches.iter().zip(&pairs) {
        if let Some(op) = b.operator(x, z) {
            st.add_generator(op)?;
        }
    }
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Sign;

    #[test]
    fn repetition_branches() {
        let g = Geometry::Ring { l: 3 };
        let z = encode_logical(Logical::Z, ModelKind::Baseline1D, g).unwrap();
        assert_eq!(z.num_generators(), 3);
        for s in ["ZZI", "IZZ", "ZII"] {
            assert_eq!(z.contains(&s.parse().unwrap()), Some(Sign::Plus));
        }
        let one = encode_logical(Logical::I, ModelKind::Baseline1D, g).unwrap();
        assert_eq!(one.num_generators(), 2);
        let y = encode_logical(Logical::Y, ModelKind::Baseline1D, g).unwrap();
        assert_eq!(y.contains(&"YXX".parse().unwrap()), Some(Sign::Plus));
        assert!(encode_logical(Logical::X, ModelKind::Ladder, g).is_err());
    }

    #[test]
    fn toric_branch_counts() {
        let g = Geometry::Torus { lx: 4, ly: 4 };
        let st = encode_toric([Logical::Z, Logical::I], g).unwrap();
        assert_eq!(st.num_generators(), 2 * 16 - 1);
        let full = encode_toric([Logical::Y, Logical::X], g).unwrap();
        assert!(full.is_pure());
    }
}
