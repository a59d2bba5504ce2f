//! Partitions, Schur evaluation, and the Cauchy-identity expansion of
//! Rankin-Selberg coefficients, with the monomial-count and Cauchy-Schwarz
//! coefficient bounds.

pub mod schur;

use crate::error::{Error, Result};
use crate::params::SpectralParams;
use crate::scalar::Coord;
use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing || parts.iter().any(|&p| p == 0) {
            return Err(Error::BadPartition);
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `r` with at most `max_len` parts, in
/// reverse-lexicographic order. `r = 0` yields the empty partition.
pub fn partitions(r: u32, max_len: usize) -> Vec<Partition> {
    fn rec(
        remaining: u32,
        max_part: u32,
        slots: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        if slots == 0 {
            return;
        }
        let top = remaining.min(max_part);
        for p in (1..=top).rev() {
            if (p as u64) * (slots as u64) < remaining as u64 {
                break;
            }
            current.push(p);
            rec(remaining - p, p, slots - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    rec(r, r.max(1), max_len, &mut current, &mut out);
    out
}

/// `s_lambda(values)`, Jacobi-Trudi route. Exact when instantiated at
/// rational coordinates, floating otherwise.
pub fn schur_eval<T: Coord>(shape: &Partition, values: &[Complex<T>]) -> Result<Complex<T>> {
    schur::eval_jacobi_trudi(shape, values)
}

/// Number of degree-`r` monomials in `k` variables: `C(k + r - 1, r)`.
pub fn monomial_count(k: u64, r: u64) -> Result<BigUint> {
    if k < 1 {
        return Err(Error::InvalidArgument(
            "monomial count needs at least one variable".into(),
        ));
    }
    Ok(num_integer::binomial(
        BigUint::from(k + r - 1),
        BigUint::from(r),
    ))
}

/// Rankin-Selberg coefficient at a prime power, slice level:
/// `sum over partitions of r with length <= max(|a|, |b|) of s_lambda(a) s_lambda(b)`.
///
/// Shorter inputs count as zero-padded; shapes longer than a value list
/// evaluate to zero there, so appending zeros to either slice changes
/// nothing.
pub fn rankin_values<T: Coord>(a: &[Complex<T>], b: &[Complex<T>], r: u32) -> Complex<T> {
    let n = a.len().max(b.len());
    let mut total = Complex::<T>::zero();
    for lam in partitions(r, n) {
        let sa = schur::eval_jacobi_trudi_unchecked(&lam, a);
        if sa.is_zero() {
            continue;
        }
        let sb = schur::eval_jacobi_trudi_unchecked(&lam, b);
        total = total + sa * sb;
    }
    total
}

/// [`rankin_values`] on parameter multisets, zero-padding the shorter one.
pub fn rankin_coefficient<T: Coord>(
    p1: &SpectralParams<T>,
    p2: &SpectralParams<T>,
    r: u32,
) -> Complex<T> {
    rankin_values(p1.values(), p2.values(), r)
}

/// Coefficients of `x^0..x^r_max` of the Euler factor
/// `prod_{i,j} (1 - a_i b_j x)^{-1}`: the complete homogeneous polynomials
/// of the pairwise products. Brute-force oracle for [`rankin_values`].
pub fn euler_expand<T: Coord>(
    a: &[Complex<T>],
    b: &[Complex<T>],
    r_max: usize,
) -> Vec<Complex<T>> {
    let mut products = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            products.push(x.clone() * y.clone());
        }
    }
    schur::complete_homogeneous(&products, r_max)
}

/// Diagonal Rankin-Selberg coefficient `sum_lambda |s_lambda(a)|^2`,
/// real and nonnegative by construction.
pub fn self_pair_values<T: Coord>(a: &[Complex<T>], r: u32) -> T {
    let mut total = T::zero();
    for lam in partitions(r, a.len()) {
        let s = schur::eval_jacobi_trudi_unchecked(&lam, a);
        total = total + s.norm_sqr();
    }
    total
}

/// [`self_pair_values`] on a parameter multiset.
pub fn self_pair_coefficient<T: Coord>(p: &SpectralParams<T>, r: u32) -> T {
    self_pair_values(p.values(), r)
}

/// Returns `(self-pair coefficient, N(n^2, r) * max_modulus_sq^r)`.
///
/// The bound counts monomials in the `n^2` pairwise products
/// `alpha_i conj(alpha_j)`, each of modulus at most `max |alpha|^2`; with
/// only `n` variables the bound is false already at `alpha = (1,1), r = 1`.
pub fn coefficient_domination_check(p: &SpectralParams<f64>, r: u32) -> (f64, f64) {
    let n = p.rank() as u64;
    let count = monomial_count(n * n, r as u64)
        .expect("n >= 1")
        .to_f64()
        .unwrap_or(f64::INFINITY);
    let bound = count * p.max_modulus_sq().powi(r as i32);
    (self_pair_coefficient(p, r), bound)
}

/// Returns `(|rankin|, sqrt(self_pair(p1) * self_pair(p2)))`; the first is
/// bounded by the second, with equality when the Schur vectors are
/// proportional under conjugation (for instance `p2 = conj(p1)`).
pub fn cauchy_schwarz_check(
    p1: &SpectralParams<f64>,
    p2: &SpectralParams<f64>,
    r: u32,
) -> (f64, f64) {
    let lhs = rankin_coefficient(p1, p2, r).norm();
    let rhs = (self_pair_coefficient(p1, r) * self_pair_coefficient(p2, r)).sqrt();
    (lhs, rhs)
}
