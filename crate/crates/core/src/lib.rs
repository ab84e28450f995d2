//! Simulation and decoding of monitored Z2-symmetric circuits.

pub mod clifford;
pub mod pauli;
pub mod stabilizer;
pub mod oracles;
pub mod rng;
pub mod percolation;
pub mod circuits;
pub mod classical;
pub mod decoders;
pub mod observables;
pub mod scaling;
