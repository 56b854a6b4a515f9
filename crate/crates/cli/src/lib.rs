//! Experiment harness behind the `lowdisc` command-line tool.
//!
//! The library half exists so the experiments are callable (and testable)
//! without shelling out: [`seqspec`] parses compact sequence descriptions,
//! [`harness`] runs the experiments, and [`csvout`] renders their results as
//! byte-deterministic CSV.

pub mod csvout;
pub mod harness;
pub mod seqspec;
