//! Verification toolkit for the local data of spectral parameter systems.
//!
//! The crate works with finite multisets of nonzero complex numbers (the
//! "spectral parameters" of a local component), constrained by a unitarity
//! pairing that forces values into reciprocal-conjugate pairs. On top of
//! that it provides:
//!
//! * exact rational constant tables for the trace majorization bound
//!   ([`constants`]),
//! * the majorization inequalities themselves, with explicit constants and
//!   a case analysis that mirror the underlying proof ([`majorize`]),
//! * partitions, Schur function evaluation and the Cauchy-identity
//!   expansion of Rankin-Selberg coefficients ([`symfunc`]),
//! * completely multiplicative Dirichlet series, divisor identities and the
//!   square-root bootstrap for partial sums ([`dirichlet`]),
//! * seeded Monte Carlo verification campaigns with serializable reports
//!   ([`verify`]).
//!
//! Core numeric kernels are generic over the coordinate type via
//! [`scalar::Coord`]: `f64` for floating evaluation and
//! [`num_rational::BigRational`] for exact evaluation. The aliases below fix
//! the two concrete instantiations used throughout the CLI and tests.

pub mod constants;
pub mod dirichlet;
mod error;
pub mod majorize;
pub mod params;
pub mod scalar;
pub mod symfunc;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};

use num_complex::Complex;
use num_rational::BigRational;

/// Floating-point complex value, the default evaluation mode.
pub type C64 = Complex<f64>;
/// Exact complex value with rational coordinates (Gaussian rationals).
pub type CRat = Complex<BigRational>;

/// Spectral parameters in floating mode.
pub type Params64 = params::SpectralParams<f64>;
/// Spectral parameters in exact mode.
pub type ParamsExact = params::SpectralParams<BigRational>;
/// Unitary class in floating mode.
pub type UnitaryClass64 = params::UnitaryClass<f64>;
/// Completely multiplicative series in floating mode.
pub type CmSeries64 = dirichlet::CmSeries<f64>;
