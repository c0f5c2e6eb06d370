//! Linear programming in standard form (minimize `c'x` subject to `Ax = b`,
//! `x >= 0`) over exact rational arithmetic or tolerance-classified floats.
//!
//! Phase 1 finds a basic feasible solution directly on the problem columns
//! with a minimal-index exchange rule; no auxiliary variables are introduced.
//! When a row of the scheme becomes nonnegative while its right-hand side is
//! negative, the run stops with a Farkas-style infeasibility certificate.
//! Phase 2 is a textbook Bland-rule simplex. The [`oracles`] module carries
//! two independent ground-truth generators (the classical auxiliary problem
//! and exhaustive basis enumeration) plus a deterministic instance generator
//! for differential testing.
//!
//! The crate is `no_std` (with `alloc`); all I/O lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;

pub mod numerics;
pub mod oracles;
pub mod phase1;
pub mod phase2;
pub mod problem;
pub mod tableau;

pub use error::Error;
pub use numerics::{rational_of_string, ParseRationalError, Rational, Scalar, Sign, Tolerance};
pub use problem::Problem;
pub use tableau::{Basis, RankReport, Tableau};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
