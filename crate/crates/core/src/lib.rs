//! Exact and sampled isoperimetric analysis of Boolean functions on the
//! hypercube `{0,1}^m`.
//!
//! The crate is organized around a bit-packed truth table
//! ([`BooleanFunction`]) and a handful of bit-parallel kernels built on it:
//!
//! - [`hypercube`] — points, truth tables, restrictions, per-coordinate
//!   monotone directions.
//! - [`metrics`] — pointwise sensitivity and negative sensitivity,
//!   per-coordinate influence and negative influence, and the square-root
//!   functionals used by the classic isoperimetric inequalities
//!   (Poincaré, Talagrand, KKL, Eldan–Gross and their directed analogues).
//! - [`monotonicity`] — exact distance to monotonicity via a closure
//!   min-cut, a brute-force oracle at tiny arity, a bipartite-matching
//!   lower bound, and the bilinear conditional-variance quantity.
//! - [`constructions`] — a tribes-style random construction that is
//!   monotone on one half of its coordinates and anti-monotone on the
//!   other, plus a zoo of classic functions and a seeded Monte Carlo
//!   estimator for instances too large to materialize.
//!
//! All probabilities that are counts over power-of-two denominators are
//! exact [`Rational`]s; floating point appears only in square-root and
//! logarithm functionals. Every random choice flows from an explicit
//! 64-bit seed ([`rng::Xoshiro256`]), so runs reproduce bit-identically.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the
//! command-line front end live in the companion `hyperiso-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod rational;
pub mod rng;

pub mod hypercube;
pub mod metrics;

pub mod flow;
pub mod matching;
pub mod monotonicity;

pub mod constructions;

pub use error::Error;
pub use hypercube::{Assignment, BooleanFunction, MonotoneDirection, PointIndex, MAX_ARITY};
pub use rational::Rational;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
