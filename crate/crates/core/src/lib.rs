//! Exact-arithmetic data envelopment analysis.
//!
//! - [`solver`]: rational simplex and branch-and-bound.
//! - [`models`]: CCR, VRS radial, the two integer radial models and the
//!   additive model.
//! - [`ppslab`]: integer production possibility sets built axiom by axiom,
//!   plus the membership oracles used to cross-check them.

pub mod data;
pub mod error;
pub mod io;
pub mod models;
pub mod ppslab;
pub mod rational;
pub mod solver;

pub use data::{dominates, BoundingBox, Dataset, Dmu, Point};
pub use error::{Error, Result};
pub use rational::{frac, int, rational, Rational};
