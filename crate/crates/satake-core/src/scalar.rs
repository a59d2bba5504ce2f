//! Scalar abstractions: one trait for coordinate types that support exact
//! ring/field arithmetic, one for floating-point types used by the analytic
//! bounds.

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, Num};
use std::fmt::Debug;
use std::ops::Neg;

/// Coordinate type of a complex spectral value.
///
/// Implemented by `f64`/`f32` (floating mode) and by
/// [`num_rational::BigRational`] (exact mode). Everything the symmetric
/// function kernels need: field arithmetic, negation, and a total order on
/// the nonnegative values produced by `norm_sqr`.
pub trait Coord: Clone + Num + Neg<Output = Self> + PartialOrd + Debug {}

impl<T> Coord for T where T: Clone + Num + Neg<Output = Self> + PartialOrd + Debug {}

/// Floating-point coordinate, required by operations that take roots,
/// powers or logarithms (sampling, majorization bounds, bootstrap sums).
pub trait Real: Coord + Float + FromPrimitive {}

impl<T> Real for T where T: Coord + Float + FromPrimitive {}

/// Compares two complex values by modulus, descending, without square roots.
pub fn cmp_modulus_desc<T: Coord>(a: &Complex<T>, b: &Complex<T>) -> std::cmp::Ordering {
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    nb.partial_cmp(&na).unwrap_or(std::cmp::Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn is_coord<T: Coord>() {}
    fn is_real<T: Real>() {}

    #[test]
    fn trait_coverage() {
        is_coord::<f32>();
        is_coord::<f64>();
        is_coord::<BigRational>();
        is_real::<f32>();
        is_real::<f64>();
    }

    #[test]
    fn modulus_order() {
        let a = Complex::new(3.0_f64, 0.0);
        let b = Complex::new(0.0_f64, 1.0);
        assert_eq!(cmp_modulus_desc(&a, &b), std::cmp::Ordering::Less);
    }
}
