//! Structured min-plus matrix products.
//!
//! The centrepiece is an exact min-plus product `A ⋆ B` for a right factor
//! whose rows are non-decreasing ([`monotone::monotone_minplus`]). Around it
//! sit a bounded-entry kernel, query-with-exclusions structures, batch and
//! dynamic range mode, replacement-path solvers and the reductions from
//! bounded-difference products to replacement paths. Every routine has a
//! brute-force counterpart used as a test oracle.

pub mod bench;
pub mod bounded;
pub mod error;
pub mod gen;
pub mod io;
pub mod matrix;
pub mod monotone;
pub mod mpqw;
pub mod params;
pub mod pset;
pub mod rangemode;
pub mod ssrp;

pub use error::{Error, Result};
pub use matrix::{ExtInt, IntMatrix, MonotoneMatrix, WitnessMatrix};
