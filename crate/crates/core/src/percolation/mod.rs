//! Space-time bond lattices for measurement-only records.
//!
//! A lattice is a sequence of layers on a ring or torus. Spatial layers hold one
//! bond per nearest-neighbour pair along an axis, temporal layers one bond per site.
//! Vertices are `(site, slice)`, where the slice counts temporal layers seen so far.

mod clusters;
mod frontier;
mod paths;
mod text;

pub use clusters::{cluster_stats, ClusterInfo, ClusterStats, SpeciesFilter};
pub use frontier::{FrontierPartition, QuasiGhz, QuasiGhzTracker};
pub use paths::{find_error_avoiding_path, z_cum, PathError, PathStep, SpanningPath};
pub use text::LatticeParseError;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Geometry {
    Ring { l: usize },
    Torus { lx: usize, ly: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

impl Geometry {
    pub fn num_sites(&self) -> usize {
        match *self {
            Geometry::Ring { l } => l,
            Geometry::Torus { lx, ly } => lx * ly,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Geometry::Ring { .. } => 1,
            Geometry::Torus { .. } => 2,
        }
    }

    pub fn site(&self, x: usize, y: usize) -> usize {
        match *self {
            Geometry::Ring { .. } => x,
            Geometry::Torus { lx, .. } => x + lx * y,
        }
    }

    pub fn coords(&self, s: usize) -> (usize, usize) {
        match *self {
            Geometry::Ring { .. } => (s, 0),
            Geometry::Torus { lx, .. } => (s % lx, s / lx),
        }
    }

    /// Bonds along `axis` are indexed by their lower endpoint.
    pub fn bond_sites(&self, axis: Axis, b: usize) -> (usize, usize) {
        match (*self, axis) {
            (Geometry::Ring { l }, _) => (b, (b + 1) % l),
            (Geometry::Torus { lx, .. }, Axis::X) => {
                let (x, y) = (b % lx, b / lx);
                (b, (x + 1) % lx + lx * y)
            }
            (Geometry::Torus { lx, ly }, Axis::Y) => {
                let (x, y) = (b % lx, b / lx);
                (b, x + lx * ((y + 1) % ly))
            }
        }
    }

    /// Length of the periodic direction along `axis`.
    pub fn extent(&self, axis: Axis) -> usize {
        match (*self, axis) {
            (Geometry::Ring { l }, _) => l,
            (Geometry::Torus { lx, .. }, Axis::X) => lx,
            (Geometry::Torus { ly, .. }, Axis::Y) => ly,
        }
    }

    pub fn axes(&self) -> &'static [Axis] {
        match self {
            Geometry::Ring { .. } => &[Axis::X],
            Geometry::Torus { .. } => &[Axis::X, Axis::Y],
        }
    }

    /// Site lines along `axis`: each line lists sites in order of increasing coordinate.
    pub fn lines(&self, axis: Axis) -> Vec<Vec<usize>> {
        match (*self, axis) {
            (Geometry::Ring { l }, _) => vec![(0..l).collect()],
            (Geometry::Torus { lx, ly }, Axis::X) => (0..ly).map(|y| (0..lx).map(|x| x + lx * y).collect()).collect(),
            (Geometry::Torus { lx, ly }, Axis::Y) => (0..lx).map(|x| (0..ly).map(|y| x + lx * y).collect()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpatialBond {
    /// No check measured.
    Broken,
    /// `ZZ` measured with the recorded outcome.
    Connected(Sign),
    /// `ZZ` dephasing.
    Decorated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TemporalBond {
    /// Nothing happened on the site.
    Connected,
    /// `X` measured.
    Broken,
    /// `X` dephasing (or a classical bit flip).
    Decorated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layer {
    Spatial { axis: Axis, bonds: Vec<SpatialBond> },
    Temporal { bonds: Vec<TemporalBond> },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("layer has {got} bonds, geometry needs {expected}")]
    WrongLayerSize { expected: usize, got: usize },
    #[error("axis {0:?} not available on this geometry")]
    BadAxis(Axis),
    #[error("site {0} out of range")]
    BadSite(usize),
    #[error("the dual lattice is only defined for rings with alternating layers")]
    DualUnsupported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BondLattice {
    geometry: Geometry,
    layers: Vec<Layer>,
}

impl BondLattice {
    pub fn new(geometry: Geometry) -> Self {
        BondLattice { geometry, layers: Vec::new() }
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn num_sites(&self) -> usize {
        self.geometry.num_sites()
    }

    /// Number of layers (time steps).
    pub fn num_steps(&self) -> usize {
        self.layers.len()
    }

    /// Number of vertex slices (temporal layers plus one).
    pub fn num_slices(&self) -> usize {
        1 + self.layers.iter().filter(|l| matches!(l, Layer::Temporal { .. })).count()
    }

    pub fn push_spatial(&mut self, axis: Axis, bonds: Vec<SpatialBond>) -> Result<(), LatticeError> {
        if !self.geometry.axes().contains(&axis) {
            return Err(LatticeError::BadAxis(axis));
        }
        let n = self.num_sites();
        if bonds.len() != n {
            return Err(LatticeError::WrongLayerSize { expected: n, got: bonds.len() });
        }
        self.layers.push(Layer::Spatial { axis, bonds });
        Ok(())
    }

    pub fn push_temporal(&mut self, bonds: Vec<TemporalBond>) -> Result<(), LatticeError> {
        let n = self.num_sites();
        if bonds.len() != n {
            return Err(LatticeError::WrongLayerSize { expected: n, got: bonds.len() });
        }
        self.layers.push(Layer::Temporal { bonds });
        Ok(())
    }

    /// Slice index each layer lives on (temporal layers connect `s - 1` to `s`).
    pub fn layer_slices(&self) -> Vec<usize> {
        let mut s = 0;
        self.layers
            .iter()
            .map(|l| {
                if matches!(l, Layer::Temporal { .. }) {
                    s += 1;
                }
                s
            })
            .collect()
    }

    /// Spatial outcomes of the last layer along each axis, when it is fully measured.
    pub fn final_syndrome(&self, axis: Axis) -> Option<Vec<Sign>> {
        let layer = self.layers.iter().rev().find_map(|l| match l {
            Layer::Spatial { axis: a, bonds } if *a == axis => Some(bonds),
            _ => None,
        })?;
        layer
            .iter()
            .map(|b| match b {
                SpatialBond::Connected(s) => Some(*s),
                _ => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_bonds_wrap() {
        let g = Geometry::Torus { lx: 3, ly: 2 };
        assert_eq!(g.bond_sites(Axis::X, 2), (2, 0));
        assert_eq!(g.bond_sites(Axis::Y, 4), (4, 1));
        assert_eq!(g.lines(Axis::Y)[1], vec![1, 4]);
    }

    #[test]
    fn slices_count_temporal_layers() {
        let mut lat = BondLattice::new(Geometry::Ring { l: 3 });
        lat.push_spatial(Axis::X, vec![SpatialBond::Broken; 3]).unwrap();
        lat.push_temporal(vec![TemporalBond::Connected; 3]).unwrap();
        lat.push_spatial(Axis::X, vec![SpatialBond::Connected(Sign::Plus); 3]).unwrap();
        assert_eq!(lat.num_slices(), 2);
        assert_eq!(lat.layer_slices(), vec![0, 1, 1]);
        assert_eq!(lat.final_syndrome(Axis::X), Some(vec![Sign::Plus; 3]));
        assert!(lat.push_spatial(Axis::Y, vec![SpatialBond::Broken; 3]).is_err());
        assert!(lat.push_temporal(vec![TemporalBond::Connected; 2]).is_err());
    }
}
