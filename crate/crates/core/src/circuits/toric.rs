//! Toric-code layout with qubits on the edges of an `lx x ly` torus.
//!
//! Edge `h(x, y)` joins vertices `(x, y)` and `(x+1, y)`; edge `v(x, y)` joins
//! `(x, y)` and `(x, y+1)`. Plaquette `p(x, y)` is bounded by `h(x, y)`,
//! `h(x, y+1)`, `v(x, y)` and `v(x+1, y)`; star `s(x, y)` touches the four edges
//! at vertex `(x, y)`.

use crate::pauli::{Pauli, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ToricLayout {
    pub lx: usize,
    pub ly: usize,
}

impl ToricLayout {
    pub fn new(lx: usize, ly: usize) -> Self {
        assert!(lx >= 2 && ly >= 2, "toric layout needs lx, ly >= 2");
        ToricLayout { lx, ly }
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.lx * self.ly
    }

    pub fn num_plaquettes(&self) -> usize {
        self.lx * self.ly
    }

    #[inline]
    pub fn h(&self, x: usize, y: usize) -> usize {
        (x % self.lx) + self.lx * (y % self.ly)
    }

    #[inline]
    pub fn v(&self, x: usize, y: usize) -> usize {
        self.lx * self.ly + (x % self.lx) + self.lx * (y % self.ly)
    }

    pub fn plaquette_index(&self, x: usize, y: usize) -> usize {
        (x % self.lx) + self.lx * (y % self.ly)
    }

    pub fn plaquette_coords(&self, p: usize) -> (usize, usize) {
        (p % self.lx, p / self.lx)
    }

    pub fn plaquette_edges(&self, p: usize) -> [usize; 4] {
        let (x, y) = self.plaquette_coords(p);
        [self.h(x, y), self.h(x, y + 1), self.v(x, y), self.v(x + 1, y)]
    }

    pub fn star_edges(&self, s: usize) -> [usize; 4] {
        let (x, y) = (s % self.lx, s / self.lx);
        [self.h(x, y), self.h(x + self.lx - 1, y), self.v(x, y), self.v(x, y + self.ly - 1)]
    }

    pub fn plaquette(&self, p: usize) -> PauliString {
        PauliString::product(self.num_qubits(), self.plaquette_edges(p), Pauli::Z)
    }

    pub fn star(&self, s: usize) -> PauliString {
        PauliString::product(self.num_qubits(), self.star_edges(s), Pauli::X)
    }

    /// Z loop along y through the vertical edges `v(0, y)`.
    pub fn logical_z1(&self) -> PauliString {
        PauliString::product(self.num_qubits(), (0..self.ly).map(|y| self.v(0, y)), Pauli::Z)
    }

    /// Z loop along x through the horizontal edges `h(x, 0)`.
    pub fn logical_z2(&self) -> PauliString {
        PauliString::product(self.num_qubits(), (0..self.lx).map(|x| self.h(x, 0)), Pauli::Z)
    }

    /// X string on `v(x, 0)`, crossing the `Z1` loop once.
    pub fn logical_x1(&self) -> PauliString {
        PauliString::product(self.num_qubits(), (0..self.lx).map(|x| self.v(x, 0)), Pauli::X)
    }

    /// X string on `h(0, y)`, crossing the `Z2` loop once.
    pub fn logical_x2(&self) -> PauliString {
        PauliString::product(self.num_qubits(), (0..self.ly).map(|y| self.h(0, y)), Pauli::X)
    }

    /// Parities of flipped edges crossing the two reference cuts; they give the
    /// logical-Z signs after bit flips.
    pub fn logical_parities(&self, flipped: &[bool]) -> (bool, bool) {
        let z1 = (0..self.ly).filter(|&y| flipped[self.v(0, y)]).count() % 2 == 1;
        let z2 = (0..self.lx).filter(|&x| flipped[self.h(x, 0)]).count() % 2 == 1;
        (z1, z2)
    }
}
