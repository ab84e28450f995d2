//! Decoders for the dynamical repetition and toric codes.

pub mod blossom;
pub mod located;
pub mod membrane;
pub mod mwpm;
pub mod path_sum;
pub mod recovery;

use serde::{Deserialize, Serialize};

use crate::pauli::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecoderId {
    Located,
    PathSum,
    Mwpm,
    Membrane,
}

/// Decoder output next to the ground truth.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecodeVerdict {
    pub decoder: DecoderId,
    /// Predicted sign per logical generator; `None` when the decoder abstains.
    pub predicted: Vec<Option<Sign>>,
    pub truth: Vec<Sign>,
    pub success: bool,
    /// `log2` of the number of paths or membranes summed.
    pub log2_paths: f64,
    /// Total weight of the matching.
    pub matching_weight: u64,
}

impl DecodeVerdict {
    pub fn new(decoder: DecoderId, predicted: Vec<Option<Sign>>, truth: Vec<Sign>) -> Self {
        let success = predicted.len() == truth.len() && predicted.iter().zip(&truth).all(|(p, t)| *p == Some(*t));
        DecodeVerdict { decoder, predicted, truth, success, log2_paths: 0.0, matching_weight: 0 }
    }
}
