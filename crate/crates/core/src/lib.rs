//! Free-particle time-of-arrival eigenfunctions and their verification.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: complex log-gamma, gamma and ₁F₁ with regime reporting.
//! * [`quadrature`]: adaptive Gauss–Kronrod integration, algebraic tails,
//!   oscillatory Fourier integrals and central differences.
//! * [`eigenstates`]: eigenfunctions of the symmetric time-of-arrival operator
//!   in momentum and position representation, their free evolution and the
//!   collapse density.
//! * [`analysis`]: normalization, width-at-half-maximum, modified spread,
//!   energy uncertainty, delta-sequence tests and the closed-form integral.

// `!(x > 0.0)` is the idiom for rejecting NaN along with the bad range.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod analysis;
pub mod eigenstates;
pub mod error;
pub mod quadrature;
pub mod specfun;

pub use eigenstates::{Eigenvalue, MomentumBranch, ParityIndex, PhysicalParams, SpacetimePoint};
pub use error::{Error, Result};

pub use specfun::{ComplexValue, Regime, SpecialEvalReport};
pub use quadrature::{IntervalSpec, QuadratureResult, Tolerance};
