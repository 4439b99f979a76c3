//! Interval-valued q-rung orthopair fuzzy (IVq-ROF) group decision making.
//!
//! Expert decision matrices go in; a per-alternative expert weight matrix,
//! Yager-aggregated group matrix, CRITIC attribute weights, WASPAS interval
//! scores, scalar scores and a ranking come out. [`pipeline::solve`] runs the
//! whole chain and [`pipeline::sweep`] repeats it over parameter grids.

pub mod aggregation;
pub mod audit;
pub mod critic;
pub mod dm_weights;
pub mod error;
pub mod io;
pub mod matrix;
pub mod measures;
pub mod number;
pub mod numeric;
pub mod pipeline;
pub mod waspas;
pub mod yager;

pub use error::{Error, Result};
pub use matrix::{DecisionMatrix, Polarity};
pub use number::{Arith, ClampTrace, IvqRofn, RungContext};
