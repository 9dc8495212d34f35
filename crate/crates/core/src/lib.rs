//! Hop-constrained shortest paths on directed graphs with integer weights.

pub mod baselines;
pub mod dist;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod kernels;
pub mod matrix;
pub mod oracles;
pub mod reductions;
pub mod sampling;
pub mod solvers;

pub use dist::{d, Dist};
pub use error::{Error, Result};
pub use graph::{Edge, Graph};
pub use matrix::DistMatrix;
