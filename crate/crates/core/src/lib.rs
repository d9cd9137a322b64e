//! Desk-scale verification machinery for partition congruences in arithmetic
//! progressions: divisor-function sieves, nu_k(n) (partitions of n into
//! exactly k part sizes) computed by independent routes, truncated q-series
//! arithmetic over Z/m with eta-quotient expansion, sigma_1 parity
//! dissections with Sturm-bound coefficient checks, representation counting
//! for n = x^2 + p y^2, and scanners for candidate progressions.
//!
//! The library backs the `congruence-forge` binary; every subcommand there is
//! a thin wrapper over a function in [`congruence`].

// divisibility tests read better as explicit remainders in this codebase
#![allow(clippy::manual_is_multiple_of)]

pub mod arith;
pub mod cli;
pub mod congruence;
mod error;
pub mod partitions;
pub mod qseries;
pub mod report;

pub use error::{Error, Result};
