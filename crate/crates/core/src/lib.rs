//! Exact power sums `S_d(s)` and multizeta values `ζ(s)` over `F_q[t]`.
//!
//! The crate is organised bottom-up:
//!
//! * [`digitlab`]: base-p / base-q digit combinatorics and the `E`-matrix
//!   calculus on `Γ(n)` vectors.
//! * [`compose`]: the composition sets `U_d(k)`, `W_d(N)`, valid matrices,
//!   greedy, modest and optimal elements.
//! * [`fqpoly`]: the fields `F_q`, polynomials over them, and reduced
//!   rational functions.
//! * [`powersum`]: `S_d(s)` by the Lucas-reduced expansion and by literal
//!   summation over monic polynomials.
//! * [`mzv`]: multizeta values, zero classification and valuations.
//! * [`brute`]: slow reference implementations used as oracles.
//! * [`verify`]: named invariant suites comparing the two.

pub mod brute;
pub mod compose;
pub mod digitlab;
pub mod error;
pub mod fqpoly;
pub mod mzv;
pub mod powersum;
pub mod verify;

pub use error::{Error, Result};
