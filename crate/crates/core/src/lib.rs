//! Starter 2-factors for the Honeymoon Oberwolfach Problem.
//!
//! Starters are small sets of coloured 2-factors on `n` vertices whose
//! rotations decompose the four-fold complete graph `4K_n` (one pink edge, one
//! blue edge and two opposite black arcs per pair). Such a decomposition
//! lifts to a seating plan for `n` couples over `2n - 2` meals in which
//! spouses always sit together and every other pair of guests sits together
//! exactly once.
//!
//! - [`model`]: vertices, coloured edges, the rotation and its orbits.
//! - [`format`]: the text format for starters, factorizations and seatings.
//! - [`verify`]: checkers for every object the crate produces.
//! - [`expand`]: starters to factorizations to seating plans.
//! - [`search`]: backtracking search for new starters.
//! - [`catalog`]: cycle types per `n` and the results that cover them.

pub mod catalog;
pub mod chain;
pub mod cli;
pub mod error;
pub mod expand;
pub mod factor;
pub mod fixtures;
pub mod format;
pub mod model;
pub mod search;
pub mod verify;

pub use catalog::CycleType;
pub use error::{HopError, Result};
pub use factor::{Cycle, Factorization, TwoFactor};
pub use format::{StarterKind, StarterRecord};
pub use model::{Colour, ColouredEdge, Difference, GraphKind};
