//! Union-find cluster labelling of a bond lattice (and of its dual for rings).

use super::{BondLattice, Geometry, Layer, LatticeError, SpatialBond, TemporalBond};

/// Which bond species count as open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpeciesFilter {
    pub spatial_connected: bool,
    pub spatial_decorated: bool,
    pub temporal_connected: bool,
    pub temporal_decorated: bool,
    /// Label the dual lattice, whose bonds are open when the crossed primal bond is closed.
    pub dual: bool,
}

impl SpeciesFilter {
    /// Coherent bonds only (spin-glass order).
    pub fn coherent() -> Self {
        SpeciesFilter {
            spatial_connected: true,
            spatial_decorated: false,
            temporal_connected: true,
            temporal_decorated: false,
            dual: false,
        }
    }

    /// Coherent and decorated bonds (cluster structure of the quasi-GHZ state).
    pub fn clusters() -> Self {
        SpeciesFilter { spatial_decorated: true, temporal_decorated: true, ..Self::coherent() }
    }

    /// Dual of the cluster filter: paths through broken bonds (paramagnetic order).
    pub fn broken_dual() -> Self {
        SpeciesFilter { dual: true, ..Self::clusters() }
    }

    pub fn spatial_open(&self, b: SpatialBond) -> bool {
        match b {
            SpatialBond::Broken => false,
            SpatialBond::Connected(_) => self.spatial_connected,
            SpatialBond::Decorated => self.spatial_decorated,
        }
    }

    pub fn temporal_open(&self, b: TemporalBond) -> bool {
        match b {
            TemporalBond::Broken => false,
            TemporalBond::Connected => self.temporal_connected,
            TemporalBond::Decorated => self.temporal_decorated,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterInfo {
    pub size: usize,
    pub touches_bottom: bool,
    pub touches_top: bool,
    pub wraps_x: bool,
    pub wraps_y: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterStats {
    /// Clusters sorted by decreasing size.
    pub clusters: Vec<ClusterInfo>,
    /// Cluster label per vertex (`slice * sites + site`, or dual face index).
    pub labels: Vec<usize>,
}

impl ClusterStats {
    pub fn sizes(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.size).collect()
    }

    pub fn largest(&self) -> usize {
        self.clusters.first().map_or(0, |c| c.size)
    }

    /// Some cluster connects the initial and final boundaries.
    pub fn spans_time(&self) -> bool {
        self.clusters.iter().any(|c| c.touches_bottom && c.touches_top)
    }

    /// Some cluster winds around a periodic spatial direction.
    pub fn spans_space(&self) -> bool {
        self.clusters.iter().any(|c| c.wraps_x || c.wraps_y)
    }
}

/// Union-find tracking each vertex's displacement from its root, which detects winding.
struct OffsetUnionFind {
    parent: Vec<u32>,
    off: Vec<(i32, i32)>,
    rank: Vec<u8>,
    wraps: Vec<(bool, bool)>,
}

impl OffsetUnionFind {
    fn new(n: usize) -> Self {
        OffsetUnionFind {
            parent: (0..n as u32).collect(),
            off: vec![(0, 0); n],
            rank: vec![0; n],
            wraps: vec![(false, false); n],
        }
    }

    fn find(&mut self, v: usize) -> (usize, (i32, i32)) {
        let mut path = Vec::new();
        let mut r = v;
        while self.parent[r] as usize != r {
            path.push(r);
            r = self.parent[r] as usize;
        }
        // compress from the top of the path down
        let mut acc = (0, 0);
        for &u in path.iter().rev() {
            acc = (acc.0 + self.off[u].0, acc.1 + self.off[u].1);
            self.off[u] = acc;
            self.parent[u] = r as u32;
        }
        (r, if path.is_empty() { (0, 0) } else { self.off[v] })
    }

    /// Joins `a` and `b` where `pos(b) = pos(a) + d`.
    fn union(&mut self, a: usize, b: usize, d: (i32, i32)) {
        let (ra, oa) = self.find(a);
        let (rb, ob) = self.find(b);
        if ra == rb {
            let mismatch = (oa.0 + d.0 - ob.0, oa.1 + d.1 - ob.1);
            self.wraps[ra].0 |= mismatch.0 != 0;
            self.wraps[ra].1 |= mismatch.1 != 0;
            return;
        }
        // pos(rb) - pos(ra)
        let delta = (oa.0 + d.0 - ob.0, oa.1 + d.1 - ob.1);
        let w = (self.wraps[ra].0 | self.wraps[rb].0, self.wraps[ra].1 | self.wraps[rb].1);
        if self.rank[ra] >= self.rank[rb] {
            self.parent[rb] = ra as u32;
            self.off[rb] = delta;
            self.wraps[ra] = w;
            if self.rank[ra] == self.rank[rb] {
                self.rank[ra] += 1;
            }
        } else {
            self.parent[ra] = rb as u32;
            self.off[ra] = (-delta.0, -delta.1);
            self.wraps[rb] = w;
        }
    }
}

fn unit(axis: super::Axis) -> (i32, i32) {
    match axis {
        super::Axis::X => (1, 0),
        super::Axis::Y => (0, 1),
    }
}

/// Labels clusters of open bonds and reports sizes and spanning properties.
pub fn cluster_stats(lattice: &BondLattice, filter: SpeciesFilter) -> Result<ClusterStats, LatticeError> {
    if filter.dual {
        return dual_stats(lattice, filter);
    }
    let n = lattice.num_sites();
    let slices = lattice.num_slices();
    let mut uf = OffsetUnionFind::new(n * slices);
    let mut s = 0;
    for layer in lattice.layers() {
        match layer {
            Layer::Spatial { axis, bonds } => {
                for (b, &bond) in bonds.iter().enumerate() {
                    if filter.spatial_open(bond) {
                        let (u, v) = lattice.geometry().bond_sites(*axis, b);
                        uf.union(s * n + u, s * n + v, unit(*axis));
                    }
                }
            }
            Layer::Temporal { bonds } => {
                for (j, &bond) in bonds.iter().enumerate() {
                    if filter.temporal_open(bond) {
                        uf.union(s * n + j, (s + 1) * n + j, (0, 0));
                    }
                }
                s += 1;
            }
        }
    }
    Ok(collect(&mut uf, n, slices))
}

fn collect(uf: &mut OffsetUnionFind, row: usize, rows: usize) -> ClusterStats {
    let total = row * rows;
    let mut index = vec![usize::MAX; total];
    let mut clusters: Vec<ClusterInfo> = Vec::new();
    let mut labels = vec![0; total];
    for v in 0..total {
        let (r, _) = uf.find(v);
        if index[r] == usize::MAX {
            index[r] = clusters.len();
            clusters.push(ClusterInfo {
                size: 0,
                touches_bottom: false,
                touches_top: false,
                wraps_x: uf.wraps[r].0,
                wraps_y: uf.wraps[r].1,
            });
        }
        let c = &mut clusters[index[r]];
        c.size += 1;
        c.touches_bottom |= v < row;
        c.touches_top |= v >= row * (rows - 1);
        labels[v] = index[r];
    }
    // sort by size, keeping labels consistent
    let mut order: Vec<usize> = (0..clusters.len()).collect();
    order.sort_by(|&a, &b| clusters[b].size.cmp(&clusters[a].size).then(a.cmp(&b)));
    let mut rank = vec![0; clusters.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let clusters = order.iter().map(|&o| clusters[o].clone()).collect();
    for l in &mut labels {
        *l = rank[*l];
    }
    ClusterStats { clusters, labels }
}

/// Faces `(j, r)` sit between sites `j` and `j+1` and between slices `r-1` and `r`;
/// rows `0` and `S+1` are the outer boundaries.
fn dual_stats(lattice: &BondLattice, filter: SpeciesFilter) -> Result<ClusterStats, LatticeError> {
    let Geometry::Ring { l } = lattice.geometry() else {
        return Err(LatticeError::DualUnsupported);
    };
    let slices = lattice.num_slices();
    let rows = slices + 1;
    let mut horizontal_open = vec![vec![false; l]; slices];
    let mut s = 0;
    let mut uf = OffsetUnionFind::new(l * rows);
    for layer in lattice.layers() {
        match layer {
            Layer::Spatial { bonds, .. } => {
                for (b, &bond) in bonds.iter().enumerate() {
                    horizontal_open[s][b] |= filter.spatial_open(bond);
                }
            }
            Layer::Temporal { bonds } => {
                s += 1;
                for (j, &bond) in bonds.iter().enumerate() {
                    if !filter.temporal_open(bond) {
                        let left = (j + l - 1) % l;
                        uf.union(s * l + left, s * l + j, (1, 0));
                    }
                }
            }
        }
    }
    for (s, row) in horizontal_open.iter().enumerate() {
        for (j, &open) in row.iter().enumerate() {
            if !open {
                uf.union(s * l + j, (s + 1) * l + j, (0, 0));
            }
        }
    }
    Ok(collect(&mut uf, l, rows))
}
