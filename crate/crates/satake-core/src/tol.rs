//! Tolerances used by the floating-point inequality and identity checks.
//!
//! Exact-mode paths (rational coordinates) never consult these.

/// Absolute slack on floating-point inequality assertions.
pub const INEQ_ABS: f64 = 1e-9;

/// Relative tolerance for the trace-split identity (Tr A)^2 = Tr sym^2 A + Tr /\^2 A.
pub const TRACE_SPLIT_REL: f64 = 1e-10;

/// Relative tolerance for the Cauchy-identity comparison in floating mode.
pub const CAUCHY_REL: f64 = 1e-8;

/// Tolerance for closed forms versus truncated series (geometric factors,
/// linear-term extraction).
pub const CLOSED_FORM_REL: f64 = 1e-12;

/// Magnitude budget for quantities that are zero or nonnegative by
/// construction (imaginary parts of self-pairings, negativity slack).
pub const STRUCTURAL_EPS: f64 = 1e-12;

/// Default pairing tolerance used by the sampler.
pub const PAIRING_TOL: f64 = 1e-9;

/// Relative tolerance for the restricted divisor identity S(X)^2.
pub const SQUARE_IDENTITY_REL: f64 = 1e-9;
