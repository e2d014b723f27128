//! Additive cyclic codes over the mixed alphabet `F_q F_{q²}`.
//!
//! The crate builds codes from polynomial generators, computes their duals,
//! Gray images and hulls, and determines minimum distances either exactly or
//! as seeded upper bounds. [`tables`] carries reference parameter tables and a
//! harness that checks every row against the computed values.

pub mod cli;
pub mod codes;
pub mod distance;
pub mod doc;
pub mod error;
pub mod gf;
pub mod gray;
pub mod lcd;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod tables;

pub use error::{Error, Result};
