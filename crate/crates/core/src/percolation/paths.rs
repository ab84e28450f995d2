//! Error-avoiding spanning paths and the cumulative check product along them.

use std::collections::VecDeque;

use thiserror::Error;

use super::{BondLattice, Layer, SpatialBond, TemporalBond};
use crate::pauli::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathStep {
    Spatial { layer: usize, bond: usize },
    Temporal { layer: usize, site: usize },
}

/// Path through coherent bonds from `(start, 0)` to `(end, last slice)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningPath {
    pub start: usize,
    pub end: usize,
    pub steps: Vec<PathStep>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("step {0} is not incident to the current vertex")]
    Disconnected(usize),
    #[error("step {0} crosses a bond that is not coherent")]
    NotCoherent(usize),
    #[error("path ends at ({site}, slice {slice}) instead of the final slice")]
    WrongEnd { site: usize, slice: usize },
}

/// Incident coherent edges of every vertex, listed in a fixed order.
fn neighbours(lattice: &BondLattice) -> (Vec<Vec<usize>>, Vec<Option<usize>>) {
    let slices = lattice.num_slices();
    let mut spatial_by_slice = vec![Vec::new(); slices];
    let mut temporal_into = vec![None; slices];
    for (li, (layer, s)) in lattice.layers().iter().zip(lattice.layer_slices()).enumerate() {
        match layer {
            Layer::Spatial { .. } => spatial_by_slice[s].push(li),
            Layer::Temporal { .. } => temporal_into[s] = Some(li),
        }
    }
    (spatial_by_slice, temporal_into)
}

/// Breadth-first search from the whole initial boundary through coherent bonds.
///
/// The search is seeded with the initial sites in increasing order and explores
/// edges in a fixed order, so results are reproducible. Among reachable final
/// vertices the smallest site is chosen unless `end` is given.
pub fn find_error_avoiding_path(lattice: &BondLattice, end: Option<usize>) -> Option<SpanningPath> {
    let n = lattice.num_sites();
    let slices = lattice.num_slices();
    let geom = lattice.geometry();
    let (spatial_by_slice, temporal_into) = neighbours(lattice);
    let layers = lattice.layers();
    let total = n * slices;
    let mut prev: Vec<Option<(usize, PathStep)>> = vec![None; total];
    let mut seen = vec![false; total];
    let mut queue = VecDeque::new();
    for j in 0..n {
        seen[j] = true;
        queue.push_back(j);
    }
    let mut visit = |from: usize, to: usize, step: PathStep, queue: &mut VecDeque<usize>, seen: &mut Vec<bool>| {
        if !seen[to] {
            seen[to] = true;
            prev[to] = Some((from, step));
            queue.push_back(to);
        }
    };
    while let Some(v) = queue.pop_front() {
        let (s, j) = (v / n, v % n);
        if s > 0 {
            let li = temporal_into[s].expect("slice has an incoming temporal layer");
            if let Layer::Temporal { bonds } = &layers[li] {
                if bonds[j] == TemporalBond::Connected {
                    visit(v, v - n, PathStep::Temporal { layer: li, site: j }, &mut queue, &mut seen);
                }
            }
        }
        if s + 1 < slices {
            let li = temporal_into[s + 1].expect("next slice has an incoming temporal layer");
            if let Layer::Temporal { bonds } = &layers[li] {
                if bonds[j] == TemporalBond::Connected {
                    visit(v, v + n, PathStep::Temporal { layer: li, site: j }, &mut queue, &mut seen);
                }
            }
        }
        for &li in &spatial_by_slice[s] {
            let Layer::Spatial { axis, bonds } = &layers[li] else { unreachable!() };
            // bond below j along the axis, then the bond starting at j
            let below = match (geom, axis) {
                (super::Geometry::Ring { l }, _) => (j + l - 1) % l,
                (super::Geometry::Torus { lx, .. }, super::Axis::X) => {
                    let (x, y) = (j % lx, j / lx);
                    (x + lx - 1) % lx + lx * y
                }
                (super::Geometry::Torus { lx, ly }, super::Axis::Y) => {
                    let (x, y) = (j % lx, j / lx);
                    x + lx * ((y + ly - 1) % ly)
                }
            };
            for b in [below, j] {
                if matches!(bonds[b], SpatialBond::Connected(_)) {
                    let (u, w) = geom.bond_sites(*axis, b);
                    let other = if u == j { w } else { u };
                    visit(v, s * n + other, PathStep::Spatial { layer: li, bond: b }, &mut queue, &mut seen);
                }
            }
        }
    }
    let top = (slices - 1) * n;
    let target = match end {
        Some(e) => {
            if e >= n || !seen[top + e] {
                return None;
            }
            top + e
        }
        None => (top..top + n).find(|&v| seen[v])?,
    };
    let mut steps = Vec::new();
    let mut v = target;
    while let Some((from, step)) = prev[v] {
        steps.push(step);
        v = from;
    }
    steps.reverse();
    Some(SpanningPath { start: v, end: target - top, steps })
}

/// Product of the recorded check outcomes along a path.
pub fn z_cum(lattice: &BondLattice, path: &SpanningPath) -> Result<Sign, PathError> {
    let n = lattice.num_sites();
    let slices = lattice.layer_slices();
    let geom = lattice.geometry();
    let mut site = path.start;
    let mut slice = 0;
    let mut acc = Sign::Plus;
    for (i, step) in path.steps.iter().enumerate() {
        match *step {
            PathStep::Spatial { layer, bond } => {
                let Some(Layer::Spatial { axis, bonds }) = lattice.layers().get(layer) else {
                    return Err(PathError::Disconnected(i));
                };
                if slices[layer] != slice || bond >= n {
                    return Err(PathError::Disconnected(i));
                }
                let (u, w) = geom.bond_sites(*axis, bond);
                site = if u == site {
                    w
                } else if w == site {
                    u
                } else {
                    return Err(PathError::Disconnected(i));
                };
                match bonds[bond] {
                    SpatialBond::Connected(s) => acc = acc * s,
                    _ => return Err(PathError::NotCoherent(i)),
                }
            }
            PathStep::Temporal { layer, site: j } => {
                let Some(Layer::Temporal { bonds }) = lattice.layers().get(layer) else {
                    return Err(PathError::Disconnected(i));
                };
                if j != site {
                    return Err(PathError::Disconnected(i));
                }
                if slices[layer] == slice + 1 {
                    slice += 1;
                } else if slices[layer] == slice && slice > 0 {
                    slice -= 1;
                } else {
                    return Err(PathError::Disconnected(i));
                }
                if bonds[j] != TemporalBond::Connected {
                    return Err(PathError::NotCoherent(i));
                }
            }
        }
    }
    if slice + 1 != lattice.num_slices() || site != path.end {
        return Err(PathError::WrongEnd { site, slice });
    }
    Ok(acc)
}
