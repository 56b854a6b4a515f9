//! Construction and measurement of low-discrepancy point sets on [0,1)^d.
//!
//! The crate has three layers:
//!
//! * **Construction** — [`greedy1d`] builds one-dimensional sequences by exact
//!   greedy minimization of an L2-star-discrepancy functional (linear time per
//!   point after sorting); [`optim`] extends the same greedy rule to d = 2, 3
//!   with heuristic minimizers of the d-dimensional functional in
//!   [`functional`]; [`sequences`] provides classical reference sequences
//!   (Kronecker rotations, van der Corput, Sobol).
//! * **Measurement** — [`discrepancy`] computes the L∞ star discrepancy
//!   exactly in d ≤ 3, a sampled lower bound in any of those dimensions, and
//!   the squared L2 star discrepancy by Warnock's formula.
//! * **Export** — [`nlp`] emits the greedy step for d = 2 as a mixed-binary
//!   quadratic program in a deterministic text format, with a feasibility
//!   checker for external solver output.
//!
//! All floating-point text output uses 17 significant digits so values
//! round-trip bit-exactly through [`textio`].

pub mod discrepancy;
pub mod error;
pub mod functional;
pub mod greedy1d;
pub mod nlp;
pub mod optim;
pub mod points;
pub mod sequences;
pub mod textio;

pub use error::Error;
pub use points::{Point, PointSet};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
