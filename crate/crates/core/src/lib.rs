//! Exact double Poisson and double quasi-Poisson calculus on quiver path
//! algebras, with evaluation on matrix representation spaces.

pub mod algebra_core;
pub mod brackets;
pub mod cli;
pub mod error;
pub mod forms;
pub mod fusion;
pub mod polyvectors;
pub mod report;
pub mod repspace;
pub mod sample;
pub mod structures;

pub use error::{Error, Result};
