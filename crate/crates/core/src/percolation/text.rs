//! Run-length text format for lattices.
//!
//! ```text
//! lattice v1
//! geometry ring 8            # or: geometry torus 4 4
//! S x 3+.2-~+                # spatial layer along x
//! T 2|.5|                    # temporal layer
//! ```
//!
//! Each layer body is a sequence of runs `[count]symbol`. Spatial symbols:
//! `+`/`-` measured with that outcome, `.` unmeasured, `~` dephased. Temporal
//! symbols: `|` untouched, `.` measured, `~` dephased. `#` starts a comment.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::{Axis, BondLattice, Geometry, Layer, SpatialBond, TemporalBond};
use crate::pauli::Sign;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct LatticeParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> LatticeParseError {
    LatticeParseError { line, msg: msg.into() }
}

fn spatial_symbol(b: SpatialBond) -> char {
    match b {
        SpatialBond::Connected(Sign::Plus) => '+',
        SpatialBond::Connected(Sign::Minus) => '-',
        SpatialBond::Broken => '.',
        SpatialBond::Decorated => '~',
    }
}

fn temporal_symbol(b: TemporalBond) -> char {
    match b {
        TemporalBond::Connected => '|',
        TemporalBond::Broken => '.',
        TemporalBond::Decorated => '~',
    }
}

fn encode_runs(symbols: impl Iterator<Item = char>) -> String {
    let mut out = String::new();
    let mut cur: Option<(char, usize)> = None;
    let flush = |c: char, k: usize, out: &mut String| {
        if k > 1 {
            let _ = write!(out, "{k}");
        }
        out.push(c);
    };
    for s in symbols {
        cur = match cur {
            Some((c, k)) if c == s => Some((c, k + 1)),
            Some((c, k)) => {
                flush(c, k, &mut out);
                Some((s, 1))
            }
            None => Some((s, 1)),
        };
    }
    if let Some((c, k)) = cur {
        flush(c, k, &mut out);
    }
    out
}

fn decode_runs(body: &str, line: usize) -> Result<Vec<char>, LatticeParseError> {
    let mut out = Vec::new();
    let mut count = String::new();
    for c in body.chars() {
        if c.is_ascii_digit() {
            count.push(c);
        } else {
            let k = if count.is_empty() {
                1
            } else {
                count.parse::<usize>().map_err(|_| err(line, "bad run length"))?
            };
            if k == 0 {
                return Err(err(line, "zero run length"));
            }
            out.extend(std::iter::repeat_n(c, k));
            count.clear();
        }
    }
    if !count.is_empty() {
        return Err(err(line, "run length without symbol"));
    }
    Ok(out)
}

impl BondLattice {
    pub fn to_text(&self) -> String {
        let mut out = String::from("lattice v1\n");
        match self.geometry {
            Geometry::Ring { l } => {
                let _ = writeln!(out, "geometry ring {l}");
            }
            Geometry::Torus { lx, ly } => {
                let _ = writeln!(out, "geometry torus {lx} {ly}");
            }
        }
        for layer in &self.layers {
            match layer {
                Layer::Spatial { axis, bonds } => {
                    let a = if *axis == Axis::X { 'x' } else { 'y' };
                    let _ = writeln!(out, "S {a} {}", encode_runs(bonds.iter().map(|&b| spatial_symbol(b))));
                }
                Layer::Temporal { bonds } => {
                    let _ = writeln!(out, "T {}", encode_runs(bonds.iter().map(|&b| temporal_symbol(b))));
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, LatticeParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        if header != "lattice v1" {
            return Err(err(ln, format!("expected `lattice v1`, found `{header}`")));
        }
        let (ln, geo) = lines.next().ok_or_else(|| err(ln, "missing geometry line"))?;
        let toks: Vec<&str> = geo.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(ln, format!("bad size `{s}`")));
        let geometry = match toks.as_slice() {
            ["geometry", "ring", l] => Geometry::Ring { l: num(l)? },
            ["geometry", "torus", lx, ly] => Geometry::Torus { lx: num(lx)?, ly: num(ly)? },
            _ => return Err(err(ln, "expected `geometry ring L` or `geometry torus LX LY`")),
        };
        if geometry.num_sites() < 2 {
            return Err(err(ln, "need at least two sites"));
        }
        let mut lat = BondLattice::new(geometry);
        for (ln, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks.as_slice() {
                ["S", axis, body] => {
                    let axis = match *axis {
                        "x" => Axis::X,
                        "y" => Axis::Y,
                        other => return Err(err(ln, format!("bad axis `{other}`"))),
                    };
                    let bonds = decode_runs(body, ln)?
                        .into_iter()
                        .map(|c| match c {
                            '+' => Ok(SpatialBond::Connected(Sign::Plus)),
                            '-' => Ok(SpatialBond::Connected(Sign::Minus)),
                            '.' => Ok(SpatialBond::Broken),
                            '~' => Ok(SpatialBond::Decorated),
                            o => Err(err(ln, format!("bad spatial symbol `{o}`"))),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    lat.push_spatial(axis, bonds).map_err(|e| err(ln, e.to_string()))?;
                }
                ["T", body] => {
                    let bonds = decode_runs(body, ln)?
                        .into_iter()
                        .map(|c| match c {
                            '|' => Ok(TemporalBond::Connected),
                            '.' => Ok(TemporalBond::Broken),
                            '~' => Ok(TemporalBond::Decorated),
                            o => Err(err(ln, format!("bad temporal symbol `{o}`"))),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    lat.push_temporal(bonds).map_err(|e| err(ln, e.to_string()))?;
                }
                _ => return Err(err(ln, format!("unrecognised line `{l}`"))),
            }
        }
        Ok(lat)
    }
}

impl FromStr for BondLattice {
    type Err = LatticeParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BondLattice::from_text(s)
    }
}
