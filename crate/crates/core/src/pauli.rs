//! Bit-packed Pauli strings.
//!
//! A string stores `i^phase * prod_j X_j^{x_j} Z_j^{z_j}`. Multiplying two
//! strings XORs the masks and picks up `2 * popcount(z1 & x2)` in the phase.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A measurement outcome or generator sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() ^ rhs.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Single-site Pauli label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliParseError {
    #[error("empty Pauli string")]
    Empty,
    #[error("invalid character {0:?} in Pauli string")]
    BadChar(char),
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString { n, x: vec![0; w], z: vec![0; w], phase: 0 }
    }

    pub fn single(n: usize, site: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.set(site, p);
        s
    }

    /// `Z_a Z_b`.
    pub fn zz(n: usize, a: usize, b: usize) -> Self {
        let mut s = Self::single(n, a, Pauli::Z);
        s.mul_assign_right(&Self::single(n, b, Pauli::Z));
        s
    }

    /// Product of `p` over the listed sites (sites must be distinct).
    pub fn product(n: usize, sites: impl IntoIterator<Item = usize>, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        for j in sites {
            s.set(j, p);
        }
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.x.len()
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    #[inline]
    pub fn x_bit(&self, j: usize) -> bool {
        (self.x[j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn z_bit(&self, j: usize) -> bool {
        (self.z[j / 64] >> (j % 64)) & 1 == 1
    }

    /// Bit in the combined column space: `c < n` is an x bit, otherwise a z bit.
    #[inline]
    pub(crate) fn col_bit(&self, c: usize) -> bool {
        if c < self.n {
            self.x_bit(c)
        } else {
            self.z_bit(c - self.n)
        }
    }

    pub fn get(&self, j: usize) -> Pauli {
        match (self.x_bit(j), self.z_bit(j)) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// Replace the factor on `site` by the Hermitian Pauli `p`, keeping the sign.
    pub fn set(&mut self, site: usize, p: Pauli) {
        assert!(site < self.n, "site {site} out of range for {} qubits", self.n);
        let old_y = self.x_bit(site) && self.z_bit(site);
        let (xb, zb) = match p {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        };
        let w = site / 64;
        let m = 1u64 << (site % 64);
        self.x[w] = (self.x[w] & !m) | if xb { m } else { 0 };
        self.z[w] = (self.z[w] & !m) | if zb { m } else { 0 };
        let new_y = xb && zb;
        // keep i^phase consistent with Y = i X Z
        self.phase = (self.phase + new_y as u8 + 4 - old_y as u8) % 4;
    }

    pub(crate) fn set_raw(&mut self, site: usize, xb: bool, zb: bool) {
        let w = site / 64;
        let m = 1u64 << (site % 64);
        self.x[w] = (self.x[w] & !m) | if xb { m } else { 0 };
        self.z[w] = (self.z[w] & !m) | if zb { m } else { 0 };
    }

    pub(crate) fn add_phase(&mut self, k: u8) {
        self.phase = (self.phase + k) % 4;
    }

    pub fn negate(&mut self) {
        self.add_phase(2);
    }

    pub fn negated(mut self) -> Self {
        self.negate();
        self
    }

    pub fn with_sign(mut self, s: Sign) -> Self {
        if s.is_minus() {
            self.negate();
        }
        self
    }

    fn y_count(&self) -> u32 {
        self.x.iter().zip(&self.z).map(|(a, b)| (a & b).count_ones()).sum()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as u32 + 4 - self.y_count() % 4) % 2 == 0
    }

    /// Sign of a Hermitian string relative to its unsigned Pauli word.
    pub fn sign(&self) -> Option<Sign> {
        match (self.phase as u32 + 4 - self.y_count() % 4) % 4 {
            0 => Some(Sign::Plus),
            2 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.x_bit(j) || self.z_bit(j)).collect()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        debug_assert_eq!(self.n, other.n);
        let mut par = 0u32;
        for w in 0..self.x.len() {
            par ^= (self.x[w] & other.z[w]).count_ones() ^ (self.z[w] & other.x[w]).count_ones();
        }
        par & 1 == 0
    }

    /// `self <- self * other`.
    #[inline]
    pub fn mul_assign_right(&mut self, other: &PauliString) {
        debug_assert_eq!(self.n, other.n);
        let mut cross = 0u32;
        for w in 0..self.x.len() {
            cross += (self.z[w] & other.x[w]).count_ones();
            self.x[w] ^= other.x[w];
            self.z[w] ^= other.z[w];
        }
        self.phase = ((self.phase as u32 + other.phase as u32 + 2 * cross) % 4) as u8;
    }

    /// Same operator with the sign dropped; used for group comparisons up to signs.
    pub fn unsigned(&self) -> PauliString {
        let mut s = self.clone();
        s.phase = (self.y_count() % 4) as u8;
        s
    }

    /// Restriction to the listed sites (other factors replaced by identity), sign kept.
    pub fn restricted(&self, keep: &[bool]) -> PauliString {
        let mut s = PauliString::identity(self.n);
        for j in 0..self.n {
            if keep[j] {
                s.set_raw(j, self.x_bit(j), self.z_bit(j));
            }
        }
        let sign = self.sign().unwrap_or(Sign::Plus);
        s.phase = (s.y_count() % 4) as u8;
        s.with_sign(sign)
    }
}

impl Mul<&PauliString> for &PauliString {
    type Output = PauliString;
    fn mul(self, rhs: &PauliString) -> PauliString {
        let mut out = self.clone();
        out.mul_assign_right(rhs);
        out
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign() {
            Some(s) => write!(f, "{s}")?,
            None => {
                let extra = (self.phase as u32 + 4 - self.y_count() % 4) % 4;
                f.write_str(if extra == 1 { "+i" } else { "-i" })?
            }
        }
        for j in 0..self.n {
            let c = match self.get(j) {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliParseError;

    /// Parses `[+|-]` followed by letters from `IXYZ`, site 0 first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (neg, body) = match s.as_bytes().first() {
            Some(b'+') => (false, &s[1..]),
            Some(b'-') => (true, &s[1..]),
            _ => (false, s),
        };
        if body.is_empty() {
            return Err(PauliParseError::Empty);
        }
        let n = body.chars().count();
        let mut p = PauliString::identity(n);
        for (j, c) in body.chars().enumerate() {
            let q = match c {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => return Err(PauliParseError::BadChar(other)),
            };
            p.set(j, q);
        }
        if neg {
            p.negate();
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_site_products() {
        // X Z = -i Y
        let xz = &ps("X") * &ps("Z");
        assert_eq!(xz.to_string(), "-iY");
        let zx = &ps("Z") * &ps("X");
        assert_eq!(zx.to_string(), "+iY");
        let yy = &ps("Y") * &ps("Y");
        assert!(yy.is_identity_up_to_phase());
        assert_eq!(yy.sign(), Some(Sign::Plus));
    }

    #[test]
    fn commutation() {
        assert!(ps("XX").commutes_with(&ps("ZZ")));
        assert!(!ps("XI").commutes_with(&ps("ZZ")));
        assert!(!ps("Y").commutes_with(&ps("X")));
    }

    #[test]
    fn roundtrip_display() {
        for s in ["+XYZI", "-YYI", "+IIII"] {
            assert_eq!(ps(s).to_string(), s);
        }
        assert_eq!(ps("XZ").to_string(), "+XZ");
    }

    #[test]
    fn wide_strings() {
        let n = 150;
        let a = PauliString::single(n, 130, Pauli::X);
        let b = PauliString::single(n, 130, Pauli::Z);
        assert!(!a.commutes_with(&b));
        let c = PauliString::zz(n, 3, 140);
        assert_eq!(c.weight(), 2);
        assert_eq!(c.support(), vec![3, 140]);
    }

    #[test]
    fn restriction_keeps_sign() {
        let p = ps("-XYZ");
        let r = p.restricted(&[true, true, false]);
        assert_eq!(r.to_string(), "-XYI");
    }
}
