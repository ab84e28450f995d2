//! One- and two-qubit Clifford gates given by their Heisenberg images.
//!
//! A gate on sites `(a, b)` is fixed by the images of `X_a, Z_a, X_b, Z_b`.
//! Images are stored as local Pauli words where bit 0 is site `a`.

use std::sync::OnceLock;

use rand::Rng;
use thiserror::Error;

use crate::pauli::{Pauli, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalPauli {
    pub x: u8,
    pub z: u8,
    pub phase: u8,
}

impl LocalPauli {
    pub const IDENTITY: LocalPauli = LocalPauli { x: 0, z: 0, phase: 0 };

    /// Hermitian word with the given sign.
    pub fn hermitian(x: u8, z: u8, negative: bool) -> Self {
        let y = (x & z).count_ones() as u8;
        LocalPauli { x, z, phase: (y + 2 * negative as u8) % 4 }
    }

    pub fn parse(s: &str) -> Self {
        let p: PauliString = s.parse().expect("bad local Pauli literal");
        assert!(p.num_qubits() <= 2);
        let mut out = LocalPauli { x: 0, z: 0, phase: p.phase() };
        for j in 0..p.num_qubits() {
            out.x |= (p.x_bit(j) as u8) << j;
            out.z |= (p.z_bit(j) as u8) << j;
        }
        out
    }

    #[inline]
    pub fn mul(self, o: LocalPauli) -> LocalPauli {
        let cross = (self.z & o.x).count_ones() as u8;
        LocalPauli { x: self.x ^ o.x, z: self.z ^ o.z, phase: (self.phase + o.phase + 2 * cross) % 4 }
    }

    pub fn is_identity(self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_hermitian(self) -> bool {
        (self.phase + 4 - (self.x & self.z).count_ones() as u8) % 2 == 0
    }

    pub fn commutes(self, o: LocalPauli) -> bool {
        ((self.x & o.z).count_ones() + (self.z & o.x).count_ones()) % 2 == 0
    }

    fn to_string_on(self, arity: usize) -> String {
        let mut p = PauliString::identity(arity);
        for j in 0..arity {
            let (xb, zb) = ((self.x >> j) & 1 == 1, (self.z >> j) & 1 == 1);
            let q = match (xb, zb) {
                (false, false) => Pauli::I,
                (true, false) => Pauli::X,
                (true, true) => Pauli::Y,
                (false, true) => Pauli::Z,
            };
            p.set(j, q);
        }
        let y = (self.x & self.z).count_ones() as u8;
        if (self.phase + 4 - y) % 4 == 2 {
            p.negate();
        }
        p.to_string()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GateError {
    #[error("image {0} is not a Hermitian non-identity Pauli")]
    BadImage(usize),
    #[error("images violate the canonical commutation relations")]
    NotSymplectic,
    #[error("gate arity {0} is not 1 or 2")]
    BadArity(u8),
}

/// Clifford unitary on one or two qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CliffordGate {
    arity: u8,
    /// Images of `X_a, Z_a, X_b, Z_b`.
    images: [LocalPauli; 4],
}

impl CliffordGate {
    pub fn new(arity: u8, images: &[LocalPauli]) -> Result<Self, GateError> {
        if arity != 1 && arity != 2 {
            return Err(GateError::BadArity(arity));
        }
        let m = 2 * arity as usize;
        if images.len() != m {
            return Err(GateError::BadArity(arity));
        }
        let mask = if arity == 1 { 1 } else { 3 };
        for (i, im) in images.iter().enumerate() {
            if im.is_identity() || !im.is_hermitian() || im.x & !mask != 0 || im.z & !mask != 0 {
                return Err(GateError::BadImage(i));
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                let should_anticommute = i / 2 == j / 2;
                if images[i].commutes(images[j]) == should_anticommute {
                    return Err(GateError::NotSymplectic);
                }
            }
        }
        let mut full = [LocalPauli::IDENTITY; 4];
        full[..m].copy_from_slice(images);
        Ok(CliffordGate { arity, images: full })
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn images(&self) -> &[LocalPauli] {
        &self.images[..2 * self.arity as usize]
    }

    /// Heisenberg image of a local word.
    #[inline]
    pub fn conjugate_local(&self, p: LocalPauli) -> LocalPauli {
        let mut acc = LocalPauli { x: 0, z: 0, phase: p.phase };
        for q in 0..self.arity as usize {
            if (p.x >> q) & 1 == 1 {
                acc = acc.mul(self.images[2 * q]);
            }
            if (p.z >> q) & 1 == 1 {
                acc = acc.mul(self.images[2 * q + 1]);
            }
        }
        acc
    }

    pub fn hadamard() -> Self {
        Self::new(1, &[LocalPauli::parse("Z"), LocalPauli::parse("X")]).unwrap()
    }

    pub fn phase_s() -> Self {
        Self::new(1, &[LocalPauli::parse("Y"), LocalPauli::parse("Z")]).unwrap()
    }

    pub fn cnot() -> Self {
        let im = ["XX", "ZI", "IX", "ZZ"].map(LocalPauli::parse);
        Self::new(2, &im).unwrap()
    }

    pub fn describe(&self) -> String {
        let a = self.arity as usize;
        let names = ["X0", "Z0", "X1", "Z1"];
        (0..2 * a)
            .map(|i| format!("{}->{}", names[i], self.images[i].to_string_on(a)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn hermitian_words(arity: usize) -> Vec<LocalPauli> {
    let mask = (1u8 << arity) - 1;
    let mut out = Vec::new();
    for x in 0..=mask {
        for z in 0..=mask {
            if x == 0 && z == 0 {
                continue;
            }
            for neg in [false, true] {
                out.push(LocalPauli::hermitian(x, z, neg));
            }
        }
    }
    out
}

fn enumerate(arity: usize) -> Vec<CliffordGate> {
    let words = hermitian_words(arity);
    let m = 2 * arity;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(m);
    fn rec(
        words: &[LocalPauli],
        m: usize,
        chosen: &mut Vec<LocalPauli>,
        out: &mut Vec<CliffordGate>,
    ) {
        let i = chosen.len();
        if i == m {
            out.push(CliffordGate::new((m / 2) as u8, chosen).unwrap());
            return;
        }
        for &w in words {
            let ok = chosen.iter().enumerate().all(|(j, &c)| c.commutes(w) != (j / 2 == i / 2));
            if ok {
                chosen.push(w);
                rec(words, m, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(&words, m, &mut chosen, &mut out);
    out
}

/// All signed one-qubit Cliffords (24 tables).
pub fn all_one_qubit() -> &'static [CliffordGate] {
    static CELL: OnceLock<Vec<CliffordGate>> = OnceLock::new();
    CELL.get_or_init(|| enumerate(1))
}

/// All signed two-qubit Cliffords (11520 tables).
pub fn all_two_qubit() -> &'static [CliffordGate] {
    static CELL: OnceLock<Vec<CliffordGate>> = OnceLock::new();
    CELL.get_or_init(|| enumerate(2))
}

/// Two-qubit Cliffords commuting with `X_a X_b`.
pub fn z2_symmetric_two_qubit() -> &'static [CliffordGate] {
    static CELL: OnceLock<Vec<CliffordGate>> = OnceLock::new();
    CELL.get_or_init(|| {
        let xx = LocalPauli::parse("XX");
        all_two_qubit().iter().copied().filter(|g| g.conjugate_local(xx) == xx).collect()
    })
}

/// One-qubit Cliffords commuting with `X`.
pub fn z2_symmetric_one_qubit() -> &'static [CliffordGate] {
    static CELL: OnceLock<Vec<CliffordGate>> = OnceLock::new();
    CELL.get_or_init(|| {
        let x = LocalPauli::parse("X");
        all_one_qubit().iter().copied().filter(|g| g.conjugate_local(x) == x).collect()
    })
}

/// Two-qubit Cliffords commuting with `X` on the first site (system-bath rungs).
pub fn rung_two_qubit() -> &'static [CliffordGate] {
    static CELL: OnceLock<Vec<CliffordGate>> = OnceLock::new();
    CELL.get_or_init(|| {
        let xi = LocalPauli::parse("XI");
        all_two_qubit().iter().copied().filter(|g| g.conjugate_local(xi) == xi).collect()
    })
}

pub fn sample<R: Rng + ?Sized>(set: &[CliffordGate], rng: &mut R) -> CliffordGate {
    set[rng.gen_range(0..set.len())]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(all_one_qubit().len(), 24);
        assert_eq!(all_two_qubit().len(), 11520);
        assert_eq!(z2_symmetric_one_qubit().len(), 4);
    }

    #[test]
    fn symmetric_gates_fix_xx() {
        let xx = LocalPauli::parse("XX");
        assert!(!z2_symmetric_two_qubit().is_empty());
        for g in z2_symmetric_two_qubit() {
            assert_eq!(g.conjugate_local(xx), xx);
        }
        let xi = LocalPauli::parse("XI");
        for g in rung_two_qubit() {
            assert_eq!(g.conjugate_local(xi), xi);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let x = LocalPauli::parse("X");
        assert_eq!(CliffordGate::new(1, &[x, x]), Err(GateError::NotSymplectic));
        let bad = LocalPauli { x: 1, z: 0, phase: 1 };
        assert_eq!(CliffordGate::new(1, &[bad, LocalPauli::parse("Z")]), Err(GateError::BadImage(0)));
    }

    #[test]
    fn cnot_propagation() {
        let g = CliffordGate::cnot();
        assert_eq!(g.conjugate_local(LocalPauli::parse("XI")), LocalPauli::parse("XX"));
        assert_eq!(g.conjugate_local(LocalPauli::parse("IZ")), LocalPauli::parse("ZZ"));
        // Y_a -> Y_a X_b
        assert_eq!(g.conjugate_local(LocalPauli::parse("YI")), LocalPauli::parse("YX"));
    }
}
