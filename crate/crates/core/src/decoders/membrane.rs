//! Signed sums over directed membranes of the toric code.
//!
//! A membrane for `Z1` is a height function `x(y, t)`: at every slice the loop
//! uses the vertical edge `v(x(y), y)` in each row, joined by horizontal edges.
//! At a plaquette layer the height in row `y` may move along a run of measured
//! plaquettes of that row, collecting their outcomes. Rows move independently, so
//! the sum factorizes into one path sum per row with plaquette `p(x, y)` playing
//! the check between `x` and `x + 1`. `Z2` is the same with rows and columns swapped.

use num_bigint::BigInt;

use super::path_sum::{path_sum_sign, Backbone, CheckLayer, PathSumValue};
use super::{DecodeVerdict, DecoderId};
use crate::circuits::toric::ToricLayout;
use crate::classical::ToricHistory;
use crate::pauli::Sign;
use crate::percolation::{Axis, Geometry};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToricLogical {
    Z1,
    Z2,
}

/// Backbone whose lines are the rows (`Z1`) or columns (`Z2`) of plaquettes.
pub fn membrane_backbone(layout: &ToricLayout, records: &[Vec<Option<Sign>>], logical: ToricLogical) -> Backbone {
    let axis = match logical {
        ToricLogical::Z1 => Axis::X,
        ToricLogical::Z2 => Axis::Y,
    };
    let layers = records.iter().map(|r| CheckLayer { axis, outcomes: r.clone() }).collect();
    Backbone::new(Geometry::Torus { lx: layout.lx, ly: layout.ly }, layers)
}

/// Sum over directed membranes ending on the reference loop of `logical`.
pub fn membrane_sum_sign(layout: &ToricLayout, records: &[Vec<Option<Sign>>], logical: ToricLogical) -> PathSumValue {
    let backbone = membrane_backbone(layout, records, logical);
    let g = backbone.geometry();
    let ends: Vec<usize> = match logical {
        ToricLogical::Z1 => (0..layout.ly).map(|y| g.site(0, y)).collect(),
        ToricLogical::Z2 => (0..layout.lx).map(|x| g.site(x, 0)).collect(),
    };
    let values = path_sum_sign(&backbone, false);
    let mut sign = Some(Sign::Plus);
    let mut log2_magnitude = 0.0;
    let mut log2_paths = 0.0;
    let mut exact = Some(BigInt::from(1));
    for &e in &ends {
        let v = &values[e];
        sign = match (sign, v.sign) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        log2_magnitude += v.log2_magnitude;
        log2_paths += v.log2_paths;
        exact = match (exact, &v.exact) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
    }
    PathSumValue { sign, log2_magnitude, log2_paths, exact }
}

/// Decodes both logical `Z` signs of a bit-flip history.
pub fn decode_membrane(history: &ToricHistory) -> DecodeVerdict {
    let lay = &history.layout;
    let z1 = membrane_sum_sign(lay, &history.records, ToricLogical::Z1);
    let z2 = membrane_sum_sign(lay, &history.records, ToricLogical::Z2);
    let (t1, t2) = history.logical_flips();
    let mut v = DecodeVerdict::new(
        DecoderId::Membrane,
        vec![z1.sign, z2.sign],
        vec![Sign::from_parity(t1), Sign::from_parity(t2)],
    );
    v.log2_paths = z1.log2_paths.max(z2.log2_paths);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{sample_toric_history, ToricParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn no_errors_decodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = ToricParams { lx: 5, ly: 4, steps: 10, p_plaq: 0.6, p_err: 0.0, p_faulty: 0.0 };
        let h = sample_toric_history(&p, &mut rng);
        let v = decode_membrane(&h);
        assert!(v.success);
        assert_eq!(v.predicted, vec![Some(Sign::Plus), Some(Sign::Plus)]);
    }

    #[test]
    fn logical_flip_is_seen() {
        // flipping the whole column v(0, y) flips Z1 without any syndrome
        let lay = ToricLayout::new(3, 3);
        let records = vec![vec![Some(Sign::Plus); 9]];
        let h = ToricHistory {
            layout: lay,
            records,
            flips: vec![(0..3).map(|y| lay.v(0, y)).collect()],
            final_flips: (0..18).map(|e| (0..3).any(|y| lay.v(0, y) == e)).collect(),
        };
        let v = decode_membrane(&h);
        assert_eq!(v.truth, vec![Sign::Minus, Sign::Plus]);
        assert!(!v.success);
    }
}
