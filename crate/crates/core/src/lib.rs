//! One-sided band-limited approximation of superpositions of exponentials,
//! their periodic analogues, and two applications: sharp bounds for
//! Hilbert-type Hermitian forms and an Erdős–Turán type inequality.

pub mod erdos_turan;
pub mod error;
pub mod exp_kernel;
pub mod cli;
pub mod forms;
pub mod measures;
pub mod periodic;
pub mod io;
pub mod quad;
mod series;
pub mod specfun;
pub mod superposed;
pub mod verify;

pub use error::{Error, Result};
