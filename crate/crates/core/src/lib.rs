//! Exact operator calculus for Hermitian, locally conformally Kähler and
//! Vaisman geometry.
//!
//! All arithmetic is over the Gaussian rationals `ℚ(i)`; every identity is
//! checked with zero tolerance. Three layers build on each other:
//!
//! - [`exterior`]: the pointwise exterior algebra with `L`, `Λ`, `∗` and the
//!   Lefschetz decomposition.
//! - [`jet`]: truncated Taylor jets on a coordinate chart, giving `∂`, `∂̄`,
//!   their formal adjoints and the torsion operators `λ`, `τ` at a point.
//! - [`invariant`]: left-invariant forms on Lie-group models, where every
//!   operator (including `□` and the Vaisman transversal calculus) is a finite
//!   matrix.
//!
//! [`verify`] turns these into per-statement verdicts and [`report`] renders
//! tables and drives the `lckcalc` binary.

pub mod error;
pub mod exterior;
pub mod identities;
pub mod invariant;
pub mod jet;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod verify;

pub use error::{DiagCode, Error, Result};
pub use scalar::{GaussianRational, Gq, Rational};
