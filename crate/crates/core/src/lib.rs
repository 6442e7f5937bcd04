//! Metric dimension of graphs with one extra edge: exact solving, the
//! single-edge distance calculus, and closed forms for grids.

pub mod distribution;
pub mod error;
pub mod graph;
pub mod grid2d;
pub mod griddim;
pub mod perturb;
pub mod solver;

pub use error::{Error, Result};
