//! Deterministic state-vector simulation of cavity-QED runs of the Deutsch
//! and Deutsch-Jozsa algorithms: resonant pulse cavity preparation,
//! dispersive phase oracles, cat-state post-selection, and hardware timing
//! feasibility checks.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod feasibility;
pub mod hilbert;
pub mod optics;
pub mod protocols;
pub mod report;

pub use error::{Error, Result};
