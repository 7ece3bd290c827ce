//! Exact free-field computations for the Nappi-Witten vertex algebra.

pub mod brst;
pub mod error;
pub mod exact;
pub mod frames;
pub mod hvir;
pub mod nw;
pub mod relaxed;
pub mod report;
pub mod screening;
pub mod suites;
pub mod lattice;

pub use error::{Error, Result};
pub use exact::{BigradedSeries, MatrixQ, Q};
