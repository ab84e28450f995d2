//! Mixed stabilizer states.
//!
//! The state is `rho = 2^-n prod_i (1 + g_i)` for `k <= n` independent, commuting,
//! Hermitian generators. Generators are kept in reduced row-echelon form: every row
//! owns a pivot column (an x or z bit) that no other row has set. Membership tests
//! and deterministic outcomes then need one pass over the pivots hit by the query.

use rand::Rng;
use thiserror::Error;

use crate::clifford::{CliffordGate, LocalPauli};
use crate::pauli::{PauliString, Sign};

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StateError {
    #[error("Pauli acts on {got} qubits, state has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("operator {0} is not Hermitian")]
    NotHermitian(String),
    #[error("generator {0} does not commute with the others")]
    NotCommuting(String),
    #[error("generator {0} is dependent on the others")]
    Dependent(String),
    #[error("generators are inconsistent (contain -1)")]
    Inconsistent,
    #[error("gate of arity {arity} applied to sites {sites:?}")]
    BadSites { arity: usize, sites: Vec<usize> },
}

/// Result of a Born-rule measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    pub outcome: Sign,
    /// False when the outcome was fixed by the state.
    pub random: bool,
}

enum Class {
    Anticommuting(Vec<usize>),
    InGroup(Sign),
    Independent,
}

#[derive(Clone, Debug)]
pub struct StabilizerState {
    n: usize,
    rows: Vec<PauliString>,
    pivots: Vec<usize>,
    owner: Vec<u32>,
}

impl StabilizerState {
    pub fn maximally_mixed(n: usize) -> Self {
        StabilizerState { n, rows: Vec::new(), pivots: Vec::new(), owner: vec![NONE; 2 * n] }
    }

    pub fn from_generators(n: usize, gens: impl IntoIterator<Item = PauliString>) -> Result<Self, StateError> {
        let mut s = Self::maximally_mixed(n);
        for g in gens {
            s.add_generator(g)?;
        }
        Ok(s)
    }

    /// `|0...0>`.
    pub fn zero_state(n: usize) -> Self {
        let gens = (0..n).map(|j| PauliString::single(n, j, crate::pauli::Pauli::Z));
        Self::from_generators(n, gens).expect("product state")
    }

    /// `|+...+>`.
    pub fn plus_state(n: usize) -> Self {
        let gens = (0..n).map(|j| PauliString::single(n, j, crate::pauli::Pauli::X));
        Self::from_generators(n, gens).expect("product state")
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.rows
    }

    pub fn is_pure(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Appends a generator; it must commute with and be independent of the current ones.
    pub fn add_generator(&mut self, g: PauliString) -> Result<(), StateError> {
        self.check(&g)?;
        if let Some(bad) = self.rows.iter().find(|r| !r.commutes_with(&g)) {
            let _ = bad;
            return Err(StateError::NotCommuting(g.to_string()));
        }
        let q = self.reduce(&g);
        if q.is_identity_up_to_phase() {
            return Err(match q.sign() {
                Some(Sign::Plus) => StateError::Dependent(g.to_string()),
                _ => StateError::Inconsistent,
            });
        }
        self.push_reduced(q);
        Ok(())
    }

    fn check(&self, p: &PauliString) -> Result<(), StateError> {
        if p.num_qubits() != self.n {
            return Err(StateError::SizeMismatch { expected: self.n, got: p.num_qubits() });
        }
        if !p.is_hermitian() {
            return Err(StateError::NotHermitian(p.to_string()));
        }
        Ok(())
    }

    fn mul_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        if dst < src {
            let (a, b) = self.rows.split_at_mut(src);
            a[dst].mul_assign_right(&b[0]);
        } else {
            let (a, b) = self.rows.split_at_mut(dst);
            b[0].mul_assign_right(&a[src]);
        }
    }

    /// Multiplies `p` by every generator whose pivot it hits.
    fn reduce(&self, p: &PauliString) -> PauliString {
        let mut q = p.clone();
        for_each_set_col(p, self.n, |c| {
            let r = self.owner[c];
            if r != NONE {
                q.mul_assign_right(&self.rows[r as usize]);
            }
        });
        q
    }

    fn first_col(p: &PauliString, n: usize) -> Option<usize> {
        let mut best = None;
        for_each_set_col(p, n, |c| {
            if best.is_none() {
                best = Some(c);
            }
        });
        best
    }

    /// Appends an already reduced row and eliminates its pivot from the others.
    fn push_reduced(&mut self, q: PauliString) {
        let c = Self::first_col(&q, self.n).expect("reduced row is non-trivial");
        let r = self.rows.len();
        self.rows.push(q);
        self.pivots.push(c);
        self.owner[c] = r as u32;
        self.eliminate(r);
    }

    fn eliminate(&mut self, r: usize) {
        let c = self.pivots[r];
        for s in 0..self.rows.len() {
            if s != r && self.rows[s].col_bit(c) {
                self.mul_rows(s, r);
            }
        }
    }

    /// Re-reduces row `r` (whose pivot has been released) and assigns a new pivot.
    fn reinsert(&mut self, r: usize) {
        let mut hits = Vec::new();
        for_each_set_col(&self.rows[r], self.n, |c| {
            let s = self.owner[c];
            if s != NONE && s as usize != r {
                hits.push(s as usize);
            }
        });
        for s in hits {
            self.mul_rows(r, s);
        }
        let c = Self::first_col(&self.rows[r], self.n).expect("independent generators");
        self.pivots[r] = c;
        self.owner[c] = r as u32;
        self.eliminate(r);
    }

    fn classify(&self, p: &PauliString) -> (Class, PauliString) {
        let anti: Vec<usize> = (0..self.rows.len()).filter(|&r| !self.rows[r].commutes_with(p)).collect();
        if !anti.is_empty() {
            return (Class::Anticommuting(anti), PauliString::identity(0));
        }
        let q = self.reduce(p);
        if q.is_identity_up_to_phase() {
            let s = q.sign().expect("commuting Hermitian product");
            (Class::InGroup(s), q)
        } else {
            (Class::Independent, q)
        }
    }

    /// Projects onto the `outcome` eigenspace of `p` when the outcome is not fixed.
    fn project_random(&mut self, p: &PauliString, outcome: Sign, class: Class, reduced: PauliString) {
        match class {
            Class::Anticommuting(anti) => {
                let r0 = anti[0];
                for &r in &anti[1..] {
                    self.mul_rows(r, r0);
                }
                let c0 = self.pivots[r0];
                self.owner[c0] = NONE;
                self.rows[r0] = p.clone().with_sign(outcome);
                self.reinsert(r0);
            }
            Class::Independent => {
                let q = reduced.with_sign(outcome);
                self.push_reduced(q);
            }
            Class::InGroup(_) => unreachable!(),
        }
    }

    /// Born-rule measurement of the Hermitian Pauli `p`.
    pub fn measure<R: Rng + ?Sized>(&mut self, p: &PauliString, rng: &mut R) -> Result<Measurement, StateError> {
        self.check(p)?;
        let (class, reduced) = self.classify(p);
        if let Class::InGroup(s) = class {
            return Ok(Measurement { outcome: s, random: false });
        }
        let outcome = Sign::from_parity(rng.gen::<bool>());
        self.project_random(p, outcome, class, reduced);
        Ok(Measurement { outcome, random: true })
    }

    /// Projects onto a prescribed outcome and returns its Born probability.
    /// A zero-probability outcome leaves the state untouched.
    pub fn measure_forced(&mut self, p: &PauliString, outcome: Sign) -> Result<f64, StateError> {
        self.check(p)?;
        let (class, reduced) = self.classify(p);
        if let Class::InGroup(s) = class {
            return Ok(if s == outcome { 1.0 } else { 0.0 });
        }
        self.project_random(p, outcome, class, reduced);
        Ok(0.5)
    }

    /// Applies `rho -> (rho + p rho p) / 2`.
    pub fn dephase(&mut self, p: &PauliString) -> Result<(), StateError> {
        self.check(p)?;
        let anti: Vec<usize> = (0..self.rows.len()).filter(|&r| !self.rows[r].commutes_with(p)).collect();
        let Some(&r0) = anti.first() else { return Ok(()) };
        for &r in &anti[1..] {
            self.mul_rows(r, r0);
        }
        self.remove_row(r0);
        Ok(())
    }

    fn remove_row(&mut self, r: usize) {
        self.owner[self.pivots[r]] = NONE;
        let last = self.rows.len() - 1;
        self.rows.swap_remove(r);
        self.pivots.swap_remove(r);
        if r != last {
            self.owner[self.pivots[r]] = r as u32;
        }
    }

    /// Conjugates the state by a Pauli operator (flips the anticommuting generators).
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<(), StateError> {
        if p.num_qubits() != self.n {
            return Err(StateError::SizeMismatch { expected: self.n, got: p.num_qubits() });
        }
        for row in &mut self.rows {
            if !row.commutes_with(p) {
                row.negate();
            }
        }
        Ok(())
    }

    /// Conjugates the state by a Clifford gate on `sites`.
    pub fn apply_gate(&mut self, gate: &CliffordGate, sites: &[usize]) -> Result<(), StateError> {
        let a = gate.arity();
        if sites.len() != a || sites.iter().any(|&s| s >= self.n) || (a == 2 && sites[0] == sites[1]) {
            return Err(StateError::BadSites { arity: a, sites: sites.to_vec() });
        }
        for row in &mut self.rows {
            let mut loc = LocalPauli::IDENTITY;
            for (q, &s) in sites.iter().enumerate() {
                loc.x |= (row.x_bit(s) as u8) << q;
                loc.z |= (row.z_bit(s) as u8) << q;
            }
            if loc.is_identity() {
                continue;
            }
            let img = gate.conjugate_local(loc);
            for (q, &s) in sites.iter().enumerate() {
                row.set_raw(s, (img.x >> q) & 1 == 1, (img.z >> q) & 1 == 1);
            }
            row.add_phase(img.phase);
        }
        // release and re-establish pivots living on the touched columns
        let mut released = Vec::new();
        for &s in sites {
            for c in [s, self.n + s] {
                let r = self.owner[c];
                if r != NONE {
                    self.owner[c] = NONE;
                    released.push(r as usize);
                }
            }
        }
        for r in released {
            self.reinsert(r);
        }
        Ok(())
    }

    /// `Some(sign)` when `sign * p` belongs to the stabilizer group.
    pub fn contains(&self, p: &PauliString) -> Option<Sign> {
        if p.num_qubits() != self.n || !p.is_hermitian() {
            return None;
        }
        if self.rows.iter().any(|r| !r.commutes_with(p)) {
            return None;
        }
        let q = self.reduce(p);
        if q.is_identity_up_to_phase() {
            q.sign()
        } else {
            None
        }
    }

    /// `Tr(rho p)`.
    pub fn expectation(&self, p: &PauliString) -> f64 {
        match self.contains(p) {
            Some(s) => s.to_i8() as f64,
            None => 0.0,
        }
    }

    /// Same stabilizer group, signs included.
    pub fn same_group(&self, other: &StabilizerState) -> bool {
        self.n == other.n
            && self.rows.len() == other.rows.len()
            && other.rows.iter().all(|g| self.contains(g) == Some(Sign::Plus))
    }

    /// Same group of unsigned Pauli words.
    pub fn same_group_unsigned(&self, other: &StabilizerState) -> bool {
        if self.n != other.n || self.rows.len() != other.rows.len() {
            return false;
        }
        let mine = unsigned_state(self);
        let theirs = unsigned_state(other);
        theirs.rows.iter().all(|g| mine.contains(g).is_some())
    }

    /// Von Neumann entropy of `region` in bits: `|A| - k + rank(G restricted to the complement)`.
    pub fn entropy(&self, region: &[usize]) -> usize {
        let mut in_a = vec![false; self.n];
        for &j in region {
            in_a[j] = true;
        }
        let a_size = in_a.iter().filter(|&&b| b).count();
        let comp: Vec<usize> = (0..self.n).filter(|&j| !in_a[j]).collect();
        let r = restricted_rank(&self.rows, &comp);
        a_size + r - self.rows.len()
    }

    pub fn mutual_information(&self, a: &[usize], b: &[usize]) -> isize {
        let mut ab: Vec<usize> = a.iter().chain(b).copied().collect();
        ab.sort_unstable();
        ab.dedup();
        self.entropy(a) as isize + self.entropy(b) as isize - self.entropy(&ab) as isize
    }

    /// Internal consistency of the reduced form; used by tests.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.rows.len() > self.n {
            return Err("too many generators".into());
        }
        for (r, row) in self.rows.iter().enumerate() {
            if !row.is_hermitian() {
                return Err(format!("row {r} not Hermitian"));
            }
            if !row.col_bit(self.pivots[r]) {
                return Err(format!("row {r} lacks its pivot"));
            }
            if self.owner[self.pivots[r]] != r as u32 {
                return Err(format!("owner table stale for row {r}"));
            }
            for (s, other) in self.rows.iter().enumerate() {
                if s != r && other.col_bit(self.pivots[r]) {
                    return Err(format!("row {s} has pivot of row {r}"));
                }
                if !row.commutes_with(other) {
                    return Err(format!("rows {r},{s} anticommute"));
                }
            }
        }
        let owned = self.owner.iter().filter(|&&o| o != NONE).count();
        if owned != self.rows.len() {
            return Err("owner table has stray entries".into());
        }
        Ok(())
    }
}

fn unsigned_state(s: &StabilizerState) -> StabilizerState {
    StabilizerState::from_generators(s.n, s.rows.iter().map(|g| g.unsigned())).expect("unsigned generators stay independent")
}

fn for_each_set_col(p: &PauliString, n: usize, mut f: impl FnMut(usize)) {
    for (w, &word) in p.x_words().iter().enumerate() {
        let mut m = word;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            f(w * 64 + b);
            m &= m - 1;
        }
    }
    for (w, &word) in p.z_words().iter().enumerate() {
        let mut m = word;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            f(n + w * 64 + b);
            m &= m - 1;
        }
    }
}

/// GF(2) rank of the generators truncated to `cols` (sites).
fn restricted_rank(rows: &[PauliString], sites: &[usize]) -> usize {
    if sites.is_empty() || rows.is_empty() {
        return 0;
    }
    let m = 2 * sites.len();
    let words = m.div_ceil(64);
    let mut mat: Vec<Vec<u64>> = rows
        .iter()
        .map(|g| {
            let mut v = vec![0u64; words];
            for (i, &s) in sites.iter().enumerate() {
                if g.x_bit(s) {
                    v[(2 * i) / 64] |= 1 << ((2 * i) % 64);
                }
                if g.z_bit(s) {
                    v[(2 * i + 1) / 64] |= 1 << ((2 * i + 1) % 64);
                }
            }
            v
        })
        .collect();
    gf2_rank(&mut mat, m)
}

pub(crate) fn gf2_rank(mat: &mut [Vec<u64>], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..mat.len()).find(|&r| mat[r][w] & b != 0) else { continue };
        mat.swap(rank, p);
        let pivot = mat[rank].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}
