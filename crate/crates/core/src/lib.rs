//! Exact-arithmetic toolkit for the lonely runner problem.
//!
//! The central quantity is the loneliness gap `δ(S) = sup_t min_{s∈S} ‖s·t‖`
//! of a set of positive integer speeds, computed exactly by [`gap::exact_gap`].
//! The other modules express the same problem as view obstruction by cubes,
//! as billiards in square and equilateral-triangle tables, and as residue
//! avoidance in finite fields, and cross-check those formulations against
//! the gap engine.

pub mod arith;
pub mod billiards;
pub mod error;
pub mod fieldsearch;
pub mod gap;
pub mod render;
pub mod viewobstruct;

pub use arith::{QuadExt, Rational, SpeedSet};
pub use error::Error;
