//! Exhaustive enumerations for small instances.

use std::collections::VecDeque;

use num_bigint::BigInt;

use crate::decoders::path_sum::{Backbone, CheckLayer};
use crate::pauli::Sign;
use crate::percolation::{Axis, BondLattice, Geometry, Layer, SpatialBond, SpeciesFilter, TemporalBond};

/// Moves allowed inside one line during a check layer: `(from, to, sign)` over
/// line positions. A move follows consecutive measured checks in one direction;
/// on a fully measured line the check between the last and first site is skipped.
fn line_moves(line: &[usize], outcomes: &[Option<Sign>]) -> Vec<(usize, usize, Sign)> {
    let m = line.len();
    let full = line.iter().all(|&s| outcomes[s].is_some());
    let bond = |k: usize| outcomes[line[k % m]];
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            for up in [true, false] {
                let crossed: Vec<usize> =
                    if up { (i..i + (j + m - i) % m).map(|k| k % m).collect() } else { (j..j + (i + m - j) % m).map(|k| k % m).collect() };
                if full && crossed.contains(&(m - 1)) {
                    continue;
                }
                let signs: Option<Vec<Sign>> = crossed.iter().map(|&k| bond(k)).collect();
                if let Some(signs) = signs {
                    out.push((i, j, signs.into_iter().fold(Sign::Plus, |a, b| a * b)));
                }
            }
        }
    }
    out
}

/// Per-site successor lists of one layer: `(next site, sign)`, staying included.
fn layer_successors(geometry: Geometry, layer: &CheckLayer) -> Vec<Vec<(usize, Sign)>> {
    let mut succ: Vec<Vec<(usize, Sign)>> = (0..geometry.num_sites()).map(|s| vec![(s, Sign::Plus)]).collect();
    for line in geometry.lines(layer.axis) {
        for (i, j, s) in line_moves(&line, &layer.outcomes) {
            succ[line[i]].push((line[j], s));
        }
    }
    succ
}

/// `f(v, T)` by listing every directed path explicitly.
pub fn enumerate_paths(backbone: &Backbone) -> Vec<BigInt> {
    let g = backbone.geometry();
    let succ: Vec<_> = backbone.layers().iter().map(|l| layer_successors(g, l)).collect();
    let mut f = vec![BigInt::from(0); g.num_sites()];
    fn walk(succ: &[Vec<Vec<(usize, Sign)>>], k: usize, site: usize, sign: Sign, f: &mut [BigInt]) {
        if k == succ.len() {
            f[site] += sign.to_i8() as i32;
            return;
        }
        for &(w, s) in &succ[k][site] {
            walk(succ, k + 1, w, sign * s, f);
        }
    }
    for start in 0..g.num_sites() {
        walk(&succ, 0, start, Sign::Plus, &mut f);
    }
    f
}

/// Sum over directed membranes by listing every sequence of loops. A loop picks one
/// position per line of `axis`; it must end at position 0 on every line.
pub fn enumerate_membranes(geometry: Geometry, layers: &[CheckLayer]) -> BigInt {
    let axis = layers.first().map_or(Axis::X, |l| l.axis);
    let lines = geometry.lines(axis);
    let m = lines[0].len();
    let num_loops = m.pow(lines.len() as u32);
    let decode = |mut code: usize| -> Vec<usize> {
        (0..lines.len())
            .map(|_| {
                let p = code % m;
                code /= m;
                p
            })
            .collect()
    };
    let loops: Vec<Vec<usize>> = (0..num_loops).map(decode).collect();
    // per layer and line, the sign of moving from position a to b (None if forbidden)
    let moves: Vec<Vec<Vec<Vec<Option<Sign>>>>> = layers
        .iter()
        .map(|l| {
            assert_eq!(l.axis, axis, "membrane layers share one axis");
            lines
                .iter()
                .map(|line| {
                    let mut t = vec![vec![None; m]; m];
                    for (a, row) in t.iter_mut().enumerate() {
                        row[a] = Some(Sign::Plus);
                    }
                    for (i, j, s) in line_moves(line, &l.outcomes) {
                        t[i][j] = Some(s);
                    }
                    t
                })
                .collect()
        })
        .collect();
    let step = |k: usize, a: &[usize], b: &[usize]| -> Option<Sign> {
        let mut s = Sign::Plus;
        for (li, (&pa, &pb)) in a.iter().zip(b).enumerate() {
            s = s * moves[k][li][pa][pb]?;
        }
        Some(s)
    };
    fn walk(
        k: usize,
        cur: usize,
        sign: Sign,
        loops: &[Vec<usize>],
        depth: usize,
        step: &dyn Fn(usize, &[usize], &[usize]) -> Option<Sign>,
        total: &mut BigInt,
    ) {
        if k == depth {
            if loops[cur].iter().all(|&p| p == 0) {
                *total += sign.to_i8() as i32;
            }
            return;
        }
        for next in 0..loops.len() {
            if let Some(s) = step(k, &loops[cur], &loops[next]) {
                walk(k + 1, next, sign * s, loops, depth, step, total);
            }
        }
    }
    let mut total = BigInt::from(0);
    for start in 0..num_loops {
        walk(0, start, Sign::Plus, &loops, layers.len(), &step, &mut total);
    }
    total
}

/// Minimum total weight over all perfect pairings of `n` points.
pub fn min_pairing_weight(n: usize, dist: &dyn Fn(usize, usize) -> u64) -> u64 {
    fn rec(free: &mut Vec<usize>, dist: &dyn Fn(usize, usize) -> u64) -> u64 {
        if free.is_empty() {
            return 0;
        }
        let a = free.remove(0);
        let mut best = u64::MAX;
        for k in 0..free.len() {
            let b = free.remove(k);
            best = best.min(dist(a, b) + rec(free, dist));
            free.insert(k, b);
        }
        free.insert(0, a);
        best
    }
    assert!(n % 2 == 0);
    rec(&mut (0..n).collect(), dist)
}

/// Open edges of the vertex graph as `(u, v, displacement of v from u)`.
fn open_edges(lattice: &BondLattice, filter: SpeciesFilter) -> Vec<(usize, usize, (i32, i32))> {
    let g = lattice.geometry();
    let n = g.num_sites();
    let mut out = Vec::new();
    let mut slice = 0;
    for layer in lattice.layers() {
        match layer {
            Layer::Spatial { axis, bonds } => {
                for (b, &bond) in bonds.iter().enumerate() {
                    if filter.spatial_open(bond) {
                        let (u, v) = g.bond_sites(*axis, b);
                        let d = match axis {
                            Axis::X => (1, 0),
                            Axis::Y => (0, 1),
                        };
                        out.push((slice * n + u, slice * n + v, d));
                    }
                }
            }
            Layer::Temporal { bonds } => {
                for (j, &bond) in bonds.iter().enumerate() {
                    if filter.temporal_open(bond) {
                        out.push((slice * n + j, (slice + 1) * n + j, (0, 0)));
                    }
                }
                slice += 1;
            }
        }
    }
    out
}

/// Breadth-first component of every vertex plus per-component
/// `(size, touches bottom, touches top, wraps x, wraps y)`.
pub fn bfs_clusters(lattice: &BondLattice, filter: SpeciesFilter) -> (Vec<usize>, Vec<(usize, bool, bool, bool, bool)>) {
    let n = lattice.num_sites();
    let slices = lattice.num_slices();
    let total = n * slices;
    let mut adj: Vec<Vec<(usize, (i32, i32))>> = vec![Vec::new(); total];
    for (u, v, d) in open_edges(lattice, filter) {
        adj[u].push((v, d));
        adj[v].push((u, (-d.0, -d.1)));
    }
    let mut label = vec![usize::MAX; total];
    let mut pos = vec![(0i32, 0i32); total];
    let mut info = Vec::new();
    for root in 0..total {
        if label[root] != usize::MAX {
            continue;
        }
        let c = info.len();
        let mut rec = (0, false, false, false, false);
        label[root] = c;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            rec.0 += 1;
            rec.1 |= u < n;
            rec.2 |= u >= (slices - 1) * n;
            for &(v, d) in &adj[u] {
                let p = (pos[u].0 + d.0, pos[u].1 + d.1);
                if label[v] == usize::MAX {
                    label[v] = c;
                    pos[v] = p;
                    queue.push_back(v);
                } else if pos[v] != p {
                    rec.3 |= pos[v].0 != p.0;
                    rec.4 |= pos[v].1 != p.1;
                }
            }
        }
        info.push(rec);
    }
    (label, info)
}

/// End site and sign of every self-avoiding coherent path from the initial to the
/// final slice, up to `limit` paths.
pub fn spanning_path_signs(lattice: &BondLattice, limit: usize) -> Vec<(usize, Sign)> {
    let n = lattice.num_sites();
    let slices = lattice.num_slices();
    let g = lattice.geometry();
    let mut adj: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); n * slices];
    let mut slice = 0;
    for layer in lattice.layers() {
        match layer {
            Layer::Spatial { axis, bonds } => {
                for (b, &bond) in bonds.iter().enumerate() {
                    if let SpatialBond::Connected(s) = bond {
                        let (u, v) = g.bond_sites(*axis, b);
                        adj[slice * n + u].push((slice * n + v, s));
                        adj[slice * n + v].push((slice * n + u, s));
                    }
                }
            }
            Layer::Temporal { bonds } => {
                for (j, &bond) in bonds.iter().enumerate() {
                    if bond == TemporalBond::Connected {
                        adj[slice * n + j].push(((slice + 1) * n + j, Sign::Plus));
                        adj[(slice + 1) * n + j].push((slice * n + j, Sign::Plus));
                    }
                }
                slice += 1;
            }
        }
    }
    let top = (slices - 1) * n;
    let mut out = Vec::new();
    let mut visited = vec![false; n * slices];
    fn dfs(
        u: usize,
        sign: Sign,
        adj: &[Vec<(usize, Sign)>],
        top: usize,
        visited: &mut [bool],
        out: &mut Vec<(usize, Sign)>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if u >= top {
            out.push((u - top, sign));
        }
        for &(v, s) in &adj[u] {
            if !visited[v] {
                visited[v] = true;
                dfs(v, sign * s, adj, top, visited, out, limit);
                visited[v] = false;
            }
        }
    }
    for start in 0..n {
        visited[start] = true;
        dfs(start, Sign::Plus, &adj, top, &mut visited, &mut out, limit);
        visited[start] = false;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_of_four_points() {
        let pts = [0u64, 1, 10, 12];
        assert_eq!(min_pairing_weight(4, &|i, j| pts[i].abs_diff(pts[j])), 3);
    }

    #[test]
    fn moves_on_a_full_line_form_an_open_chain() {
        let o = vec![Some(Sign::Minus), Some(Sign::Plus), Some(Sign::Plus)];
        let mv = line_moves(&[0, 1, 2], &o);
        assert_eq!(mv.len(), 6);
        assert!(mv.contains(&(0, 2, Sign::Minus)));
        assert!(mv.contains(&(2, 0, Sign::Minus)));
    }
}
