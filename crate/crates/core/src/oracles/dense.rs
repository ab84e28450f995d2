//! Dense density-matrix reference simulator for a handful of qubits.
//!
//! Everything here works on explicit `2^n x 2^n` complex matrices and shares no
//! code with the tableau simulator beyond reading the bits of a Pauli string.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::clifford::{CliffordGate, LocalPauli};
use crate::pauli::{PauliString, Sign};

const MAX_QUBITS: usize = 10;

fn ipow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Monomial action `P|b> = w(b) |b ^ x>`.
#[derive(Clone, Copy, Debug)]
struct Monomial {
    x: usize,
    z: usize,
    phase: u8,
}

impl Monomial {
    fn from_pauli(p: &PauliString) -> Self {
        let mut x = 0;
        let mut z = 0;
        for j in 0..p.num_qubits() {
            x |= (p.x_bit(j) as usize) << j;
            z |= (p.z_bit(j) as usize) << j;
        }
        Monomial { x, z, phase: p.phase() }
    }

    fn from_local(p: LocalPauli) -> Self {
        Monomial { x: p.x as usize, z: p.z as usize, phase: p.phase }
    }

    #[inline]
    fn weight(&self, b: usize) -> Complex64 {
        let s = ((self.z & b).count_ones() % 2) as u8;
        ipow(self.phase + 2 * s)
    }
}

#[derive(Clone, Debug)]
pub struct DensityMatrix {
    n: usize,
    d: usize,
    m: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn maximally_mixed(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "dense oracle limited to {MAX_QUBITS} qubits");
        let d = 1 << n;
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            m[i * d + i] = Complex64::new(1.0 / d as f64, 0.0);
        }
        DensityMatrix { n, d, m }
    }

    /// `2^-n prod_i (1 + g_i)`.
    pub fn from_generators(n: usize, gens: &[PauliString]) -> Self {
        let mut rho = Self::maximally_mixed(n);
        for g in gens {
            let gm = rho.left_mul(&Monomial::from_pauli(g));
            for (a, b) in rho.m.iter_mut().zip(gm) {
                *a += b;
            }
        }
        rho
    }

    /// Pure state from amplitudes.
    pub fn from_vector(n: usize, psi: &[Complex64]) -> Self {
        let d = 1 << n;
        assert_eq!(psi.len(), d);
        let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for c in 0..d {
                m[r * d + c] = psi[r] * psi[c].conj() / norm;
            }
        }
        DensityMatrix { n, d, m }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.m[r * self.d + c]
    }

    fn left_mul(&self, p: &Monomial) -> Vec<Complex64> {
        let d = self.d;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for b in 0..d {
            let w = p.weight(b);
            let r = b ^ p.x;
            for c in 0..d {
                out[r * d + c] = w * self.m[b * d + c];
            }
        }
        out
    }

    fn right_mul(&self, p: &Monomial) -> Vec<Complex64> {
        // (rho P)[r][c] = rho[r][c ^ x] w(c)
        let d = self.d;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for c in 0..d {
            let w = p.weight(c);
            let b = c ^ p.x;
            for r in 0..d {
                out[r * d + c] = self.m[r * d + b] * w;
            }
        }
        out
    }

    fn sandwich(&self, p: &Monomial) -> Vec<Complex64> {
        let tmp = DensityMatrix { n: self.n, d: self.d, m: self.left_mul(p) };
        tmp.right_mul(p)
    }

    pub fn trace(&self) -> f64 {
        (0..self.d).map(|i| self.m[i * self.d + i].re).sum()
    }

    pub fn expectation(&self, p: &PauliString) -> f64 {
        let mono = Monomial::from_pauli(p);
        // Tr(rho P) = sum_b w(b) rho[b][b ^ x]
        let d = self.d;
        let mut acc = Complex64::new(0.0, 0.0);
        for b in 0..d {
            acc += mono.weight(b) * self.m[b * d + (b ^ mono.x)];
        }
        acc.re
    }

    pub fn apply_pauli(&mut self, p: &PauliString) {
        self.m = self.sandwich(&Monomial::from_pauli(p));
    }

    /// Projects onto the `outcome` eigenspace of `p`; returns the probability.
    /// A zero-probability branch is left unnormalized.
    pub fn project(&mut self, p: &PauliString, outcome: Sign) -> f64 {
        let mono = Monomial::from_pauli(p);
        let s = outcome.to_i8() as f64;
        let lp = self.left_mul(&mono);
        let rp = self.right_mul(&mono);
        let pp = self.sandwich(&mono);
        for i in 0..self.m.len() {
            self.m[i] = (self.m[i] + s * lp[i] + s * rp[i] + pp[i]) / 4.0;
        }
        let t = self.trace();
        if t > 1e-12 {
            for v in &mut self.m {
                *v /= t;
            }
        }
        t
    }

    pub fn dephase(&mut self, p: &PauliString) {
        let pp = self.sandwich(&Monomial::from_pauli(p));
        for (a, b) in self.m.iter_mut().zip(pp) {
            *a = (*a + b) / 2.0;
        }
    }

    /// Conjugation by a Clifford gate built from its images.
    pub fn apply_gate(&mut self, gate: &CliffordGate, sites: &[usize]) {
        let u = local_unitary(gate);
        self.apply_local(&u, sites);
    }

    /// `rho -> U rho U^dagger` with `U` acting on `sites` (bit `q` of the local index is `sites[q]`).
    pub fn apply_local(&mut self, u: &[Complex64], sites: &[usize]) {
        let k = sites.len();
        let dl = 1 << k;
        assert_eq!(u.len(), dl * dl);
        let d = self.d;
        let mut mask = 0;
        for &s in sites {
            mask |= 1 << s;
        }
        let spread = |loc: usize| -> usize {
            let mut b = 0;
            for (q, &s) in sites.iter().enumerate() {
                b |= ((loc >> q) & 1) << s;
            }
            b
        };
        let offsets: Vec<usize> = (0..dl).map(spread).collect();
        // rows
        let mut tmp = self.m.clone();
        for base in (0..d).filter(|b| b & mask == 0) {
            for c in 0..d {
                for lr in 0..dl {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for lc in 0..dl {
                        acc += u[lr * dl + lc] * self.m[(base | offsets[lc]) * d + c];
                    }
                    tmp[(base | offsets[lr]) * d + c] = acc;
                }
            }
        }
        // columns
        let mut out = tmp.clone();
        for base in (0..d).filter(|b| b & mask == 0) {
            for r in 0..d {
                for lc in 0..dl {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for lk in 0..dl {
                        acc += tmp[r * d + (base | offsets[lk])] * u[lc * dl + lk].conj();
                    }
                    out[r * d + (base | offsets[lc])] = acc;
                }
            }
        }
        self.m = out;
    }

    pub fn frobenius_distance(&self, other: &DensityMatrix) -> f64 {
        self.m.iter().zip(&other.m).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Upper bound on the trace distance: `sqrt(d)/2 * ||rho - sigma||_F`.
    pub fn trace_distance_bound(&self, other: &DensityMatrix) -> f64 {
        0.5 * (self.d as f64).sqrt() * self.frobenius_distance(other)
    }

    pub fn purity(&self) -> f64 {
        let d = self.d;
        let mut acc = 0.0;
        for r in 0..d {
            for c in 0..d {
                acc += (self.m[r * d + c] * self.m[c * d + r]).re;
            }
        }
        acc
    }

    /// Partial trace keeping `keep` (in the listed order).
    pub fn reduced(&self, keep: &[usize]) -> DensityMatrix {
        let k = keep.len();
        let dk = 1 << k;
        let rest: Vec<usize> = (0..self.n).filter(|j| !keep.contains(j)).collect();
        let dr = 1 << rest.len();
        let spread = |loc: usize, sites: &[usize]| -> usize {
            let mut b = 0;
            for (q, &s) in sites.iter().enumerate() {
                b |= ((loc >> q) & 1) << s;
            }
            b
        };
        let mut m = vec![Complex64::new(0.0, 0.0); dk * dk];
        for e in 0..dr {
            let be = spread(e, &rest);
            for r in 0..dk {
                let br = spread(r, keep) | be;
                for c in 0..dk {
                    let bc = spread(c, keep) | be;
                    m[r * dk + c] += self.m[br * self.d + bc];
                }
            }
        }
        DensityMatrix { n: k, d: dk, m }
    }

    /// Von Neumann entropy of the reduced state on `region`, in bits.
    pub fn entropy(&self, region: &[usize]) -> f64 {
        if region.is_empty() {
            return 0.0;
        }
        let red = self.reduced(region);
        let mat = DMatrix::from_fn(red.d, red.d, |r, c| red.m[r * red.d + c]);
        // Singular values of a positive semidefinite matrix are its eigenvalues.
        let eig = mat.singular_values();
        eig.iter().filter(|&&l| l > 1e-12).map(|&l| -l * l.log2()).sum()
    }
}

/// Unitary (up to a global phase) realizing the gate's images.
pub fn local_unitary(gate: &CliffordGate) -> Vec<Complex64> {
    let a = gate.arity();
    let dl = 1 << a;
    let im: Vec<Monomial> = gate.images().iter().map(|&p| Monomial::from_local(p)).collect();
    let mat_of = |p: &Monomial| -> Vec<Complex64> {
        let mut m = vec![Complex64::new(0.0, 0.0); dl * dl];
        for b in 0..dl {
            m[(b ^ p.x) * dl + b] = p.weight(b);
        }
        m
    };
    let mul = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); dl * dl];
        for r in 0..dl {
            for c in 0..dl {
                for k in 0..dl {
                    out[r * dl + c] += x[r * dl + k] * y[k * dl + c];
                }
            }
        }
        out
    };
    // projector onto the joint +1 eigenspace of the Z images
    let mut proj = vec![Complex64::new(0.0, 0.0); dl * dl];
    for i in 0..dl {
        proj[i * dl + i] = Complex64::new(1.0, 0.0);
    }
    for q in 0..a {
        let zq = mat_of(&im[2 * q + 1]);
        let mut half = proj.clone();
        let zp = mul(&zq, &proj);
        for i in 0..dl * dl {
            half[i] = (proj[i] + zp[i]) / 2.0;
        }
        proj = half;
    }
    let best = (0..dl)
        .max_by(|&c1, &c2| {
            let n1: f64 = (0..dl).map(|r| proj[r * dl + c1].norm_sqr()).sum();
            let n2: f64 = (0..dl).map(|r| proj[r * dl + c2].norm_sqr()).sum();
            n1.partial_cmp(&n2).unwrap()
        })
        .unwrap();
    let norm: f64 = (0..dl).map(|r| proj[r * dl + best].norm_sqr()).sum::<f64>().sqrt();
    let psi: Vec<Complex64> = (0..dl).map(|r| proj[r * dl + best] / norm).collect();
    let mut u = vec![Complex64::new(0.0, 0.0); dl * dl];
    for col in 0..dl {
        let mut v = psi.clone();
        for q in 0..a {
            if (col >> q) & 1 == 1 {
                let xm = mat_of(&im[2 * q]);
                let mut nv = vec![Complex64::new(0.0, 0.0); dl];
                for r in 0..dl {
                    for k in 0..dl {
                        nv[r] += xm[r * dl + k] * v[k];
                    }
                }
                v = nv;
            }
        }
        for r in 0..dl {
            u[r * dl + col] = v[r];
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_state_entropy() {
        let gens: Vec<PauliString> = ["XX", "ZZ"].iter().map(|s| s.parse().unwrap()).collect();
        let rho = DensityMatrix::from_generators(2, &gens);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert!((rho.entropy(&[0]) - 1.0).abs() < 1e-10);
        assert!((rho.expectation(&"ZZ".parse().unwrap()) - 1.0).abs() < 1e-12);
        assert!((rho.expectation(&"YY".parse().unwrap()) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_matches_images() {
        for g in crate::clifford::all_two_qubit().iter().step_by(97) {
            let u = local_unitary(g);
            // unitarity
            for r in 0..4 {
                for c in 0..4 {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..4 {
                        acc += u[r * 4 + k] * u[c * 4 + k].conj();
                    }
                    let want = if r == c { 1.0 } else { 0.0 };
                    assert!((acc - want).norm() < 1e-12);
                }
            }
            // U X_a U^dag = image
            let mut rho = DensityMatrix::from_generators(2, &["XI".parse().unwrap(), "IZ".parse().unwrap()]);
            rho.apply_gate(g, &[0, 1]);
            let img = g.images()[0];
            let mut p = PauliString::identity(2);
            for q in 0..2 {
                let (xb, zb) = ((img.x >> q) & 1 == 1, (img.z >> q) & 1 == 1);
                p.set(q, match (xb, zb) {
                    (true, false) => crate::pauli::Pauli::X,
                    (true, true) => crate::pauli::Pauli::Y,
                    (false, true) => crate::pauli::Pauli::Z,
                    _ => crate::pauli::Pauli::I,
                });
            }
            let y = (img.x & img.z).count_ones() as u8;
            if (img.phase + 4 - y) % 4 == 2 {
                p.negate();
            }
            assert!((rho.expectation(&p) - 1.0).abs() < 1e-10);
        }
    }
}
