//! Std companion to `moncalc-core`: JSON documents, finite-field exponential
//! sums, seeded generators and the invariant checks behind the CLI.

pub mod checks;
pub mod expsum;
pub mod format;
pub mod random;
