//! Streaming connectivity of the final time slice.
//!
//! Only the partition of the current slice matters for connectivity to the final
//! boundary, so a trial needs O(L) memory regardless of its depth. The final
//! partitions give the quasi-GHZ structure of a measurement-only state.

use super::{BondLattice, Layer, SpatialBond, TemporalBond};
use crate::pauli::{Pauli, PauliString};

/// Partition of the sites of the current slice.
#[derive(Clone, Debug)]
pub struct FrontierPartition {
    n: usize,
    parent: Vec<u32>,
    label: Vec<u32>,
}

impl FrontierPartition {
    pub fn singletons(n: usize) -> Self {
        FrontierPartition { n, parent: (0..n as u32).collect(), label: (0..n as u32).collect() }
    }

    #[inline]
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    #[inline]
    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(self.label[a]);
        let rb = self.find(self.label[b]);
        if ra != rb {
            // smaller id wins: keeps the arena compactable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    /// Cuts site `j` from everything below it.
    #[inline]
    pub fn detach(&mut self, j: usize) {
        self.label[j] = self.parent.len() as u32;
        self.parent.push(self.parent.len() as u32);
        if self.parent.len() > 4 * self.n + 64 {
            self.compact();
        }
    }

    fn compact(&mut self) {
        let mut map = vec![u32::MAX; self.parent.len()];
        let mut next = 0u32;
        for j in 0..self.n {
            let r = self.find(self.label[j]);
            if map[r as usize] == u32::MAX {
                map[r as usize] = next;
                next += 1;
            }
            self.label[j] = map[r as usize];
        }
        self.parent.clear();
        self.parent.extend(0..next);
    }

    /// Canonical labels numbered by first appearance.
    pub fn labels(&mut self) -> Vec<u32> {
        let mut map = std::collections::HashMap::new();
        (0..self.n)
            .map(|j| {
                let r = self.find(self.label[j]);
                let next = map.len() as u32;
                *map.entry(r).or_insert(next)
            })
            .collect()
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(self.label[a]) == self.find(self.label[b])
    }
}

/// Pair of frontier partitions evolved together under a measurement-only record.
#[derive(Clone, Debug)]
pub struct QuasiGhzTracker {
    pub clusters: FrontierPartition,
    pub components: FrontierPartition,
}

impl QuasiGhzTracker {
    /// Product state `|+...+>`.
    pub fn new(n: usize) -> Self {
        QuasiGhzTracker { clusters: FrontierPartition::singletons(n), components: FrontierPartition::singletons(n) }
    }

    #[inline]
    pub fn spatial(&mut self, a: usize, b: usize, bond: SpatialBond) {
        match bond {
            SpatialBond::Connected(_) => {
                self.clusters.union(a, b);
                self.components.union(a, b);
            }
            SpatialBond::Decorated => self.clusters.union(a, b),
            SpatialBond::Broken => {}
        }
    }

    #[inline]
    pub fn temporal(&mut self, j: usize, bond: TemporalBond) {
        match bond {
            TemporalBond::Broken => {
                self.clusters.detach(j);
                self.components.detach(j);
            }
            TemporalBond::Decorated => self.components.detach(j),
            TemporalBond::Connected => {}
        }
    }

    pub fn finish(mut self) -> QuasiGhz {
        QuasiGhz::new(self.clusters.labels(), self.components.labels())
    }
}

/// Quasi-GHZ description of a state reached from `|+...+>` by `ZZ`/`X` measurements and dephasing.
///
/// Every cluster `C` carries the stabilizer `prod_{j in C} X_j`; sites in the same
/// component are linked by `Z_i Z_j` stabilizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiGhz {
    cluster: Vec<u32>,
    component: Vec<u32>,
    cluster_size: Vec<u32>,
    component_cluster: Vec<u32>,
}

impl QuasiGhz {
    pub fn new(cluster: Vec<u32>, component: Vec<u32>) -> Self {
        assert_eq!(cluster.len(), component.len());
        let nc = cluster.iter().max().map_or(0, |&m| m + 1) as usize;
        let nk = component.iter().max().map_or(0, |&m| m + 1) as usize;
        let mut cluster_size = vec![0u32; nc];
        let mut component_cluster = vec![u32::MAX; nk];
        for (j, (&c, &k)) in cluster.iter().zip(&component).enumerate() {
            cluster_size[c as usize] += 1;
            let slot = &mut component_cluster[k as usize];
            assert!(*slot == u32::MAX || *slot == c, "component of site {j} straddles clusters");
            *slot = c;
        }
        QuasiGhz { cluster, component, cluster_size, component_cluster }
    }

    /// Evolves `|+...+>` through a measurement-only lattice.
    pub fn from_lattice(lattice: &BondLattice) -> Self {
        let geom = lattice.geometry();
        let mut tr = QuasiGhzTracker::new(lattice.num_sites());
        for layer in lattice.layers() {
            match layer {
                Layer::Spatial { axis, bonds } => {
                    for (b, &bond) in bonds.iter().enumerate() {
                        let (u, v) = geom.bond_sites(*axis, b);
                        tr.spatial(u, v, bond);
                    }
                }
                Layer::Temporal { bonds } => {
                    for (j, &bond) in bonds.iter().enumerate() {
                        tr.temporal(j, bond);
                    }
                }
            }
        }
        tr.finish()
    }

    pub fn num_sites(&self) -> usize {
        self.cluster.len()
    }

    pub fn cluster_labels(&self) -> &[u32] {
        &self.cluster
    }

    pub fn component_labels(&self) -> &[u32] {
        &self.component
    }

    pub fn num_clusters(&self) -> usize {
        self.cluster_size.len()
    }

    pub fn num_components(&self) -> usize {
        self.component_cluster.len()
    }

    /// `|<Z_i Z_j>|^2`.
    pub fn zz_squared(&self, i: usize, j: usize) -> f64 {
        (self.component[i] == self.component[j]) as u8 as f64
    }

    /// Whether `X_i X_{i+1} ... X_j` (walking forward around the ring) is a stabilizer.
    pub fn x_string_stabilized(&self, i: usize, j: usize) -> bool {
        let n = self.num_sites();
        let len = (j + n - i) % n + 1;
        let mut seen = vec![0u32; self.cluster_size.len()];
        let mut open = 0usize;
        for step in 0..len {
            let c = self.cluster[(i + step) % n] as usize;
            seen[c] += 1;
            if seen[c] == 1 {
                open += 1;
            }
            if seen[c] == self.cluster_size[c] {
                open -= 1;
            }
        }
        open == 0
    }

    /// Entanglement entropy in bits: components meeting `A` minus clusters inside `A`.
    pub fn entropy(&self, region: &[usize]) -> usize {
        let mut comp_seen = vec![false; self.component_cluster.len()];
        let mut count = vec![0u32; self.cluster_size.len()];
        let mut meets = 0;
        let mut inside = 0;
        for &j in region {
            let k = self.component[j] as usize;
            if !comp_seen[k] {
                comp_seen[k] = true;
                meets += 1;
            }
            let c = self.cluster[j] as usize;
            count[c] += 1;
            if count[c] == self.cluster_size[c] {
                inside += 1;
            }
        }
        meets - inside
    }

    pub fn mutual_information(&self, a: &[usize], b: &[usize]) -> isize {
        let ab: Vec<usize> = a.iter().chain(b).copied().collect();
        self.entropy(a) as isize + self.entropy(b) as isize - self.entropy(&ab) as isize
    }

    /// Unsigned stabilizer generators: one X string per cluster and a ZZ chain per component.
    pub fn generators(&self) -> Vec<PauliString> {
        let n = self.num_sites();
        let mut gens = Vec::new();
        for c in 0..self.cluster_size.len() as u32 {
            let sites = (0..n).filter(|&j| self.cluster[j] == c);
            gens.push(PauliString::product(n, sites, Pauli::X));
        }
        let mut last = vec![usize::MAX; self.component_cluster.len()];
        for j in 0..n {
            let k = self.component[j] as usize;
            if last[k] != usize::MAX {
                gens.push(PauliString::zz(n, last[k], j));
            }
            last[k] = j;
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detach_and_compact() {
        let mut p = FrontierPartition::singletons(4);
        p.union(0, 1);
        p.union(1, 2);
        for _ in 0..100 {
            p.detach(3);
        }
        p.detach(1);
        assert!(p.same(0, 2));
        assert!(!p.same(0, 1));
        assert_eq!(p.labels(), vec![0, 1, 0, 2]);
    }

    #[test]
    fn ghz_entropy() {
        let q = QuasiGhz::new(vec![0; 6], vec![0; 6]);
        assert_eq!(q.entropy(&[0, 1]), 1);
        assert_eq!(q.entropy(&[0, 1, 2, 3, 4, 5]), 0);
        assert!(q.x_string_stabilized(0, 5));
        assert!(!q.x_string_stabilized(0, 4));
        assert!(q.x_string_stabilized(3, 2));
    }

    #[test]
    fn mixed_cluster_entropy() {
        // one cluster {0,1,2,3} with components {0,1} and {2,3}, plus singleton 4
        let q = QuasiGhz::new(vec![0, 0, 0, 0, 1], vec![0, 0, 1, 1, 2]);
        assert_eq!(q.entropy(&[0, 1, 2, 3, 4]), 1);
        assert_eq!(q.entropy(&[0]), 1);
        assert_eq!(q.entropy(&[0, 1]), 1);
        assert_eq!(q.entropy(&[4]), 0);
    }
}
