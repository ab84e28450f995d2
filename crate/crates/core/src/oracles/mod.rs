//! Independent reference implementations used to cross-check the fast paths.
//!
//! They favour transparency over speed and are only suitable for small inputs.

pub mod brute;
pub mod dense;
pub mod suites;
