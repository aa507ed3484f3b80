//! Exact Chern invariants of p-th root cover surfaces branched along simple
//! crossing divisible curve arrangements.
//!
//! The crate is organised bottom-up:
//!
//! - [`numth`]: continued fractions, Dedekind sums and the Farey bad set.
//! - [`arrangements`]: abstract incidence model of curve arrangements, the
//!   built-in generators, log resolution and log Chern numbers.
//! - [`partitions`]: the weighted partition system attached to an
//!   arrangement, exact counting and exact-uniform sampling, multiplicities
//!   on the log resolution and the goodness filter.
//! - [`covers`]: χ, c1², c2 of the cover, error terms, bounds and
//!   convergence scans.
//! - [`tables`]: embedded reference tables and their runner.

pub mod arrangements;
pub mod covers;
mod error;
pub mod numth;
pub mod partitions;
pub mod render;
pub mod tables;

pub use error::{Error, Result};
pub use numth::ExactRational;
