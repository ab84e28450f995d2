//! Experiment orchestration for the `z2lab` command line tool.

pub mod collapse;
pub mod config;
pub mod kernels;
pub mod recipes;
pub mod runner;
pub mod verify;
