//! Completely multiplicative nonnegative Dirichlet series over the
//! rationals (ideals are positive integers, norms are the integers
//! themselves), divisor identities for squared partial sums, the square-root
//! bootstrap step, and the local Euler-factor bounds.

use crate::error::{Error, Result};
use crate::params::UnitaryClass;
use crate::scalar::Real;
use crate::C64;
use serde::Serialize;
use std::collections::BTreeMap;

/// Simple Eratosthenes sieve.
pub fn primes_up_to(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let n = x as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Smallest prime factor table for `0..=x`; entries 0 and 1 map to
/// themselves.
pub fn smallest_prime_factor_sieve(x: u64) -> Vec<u32> {
    let n = x as usize;
    let mut spf: Vec<u32> = (0..=n as u64).map(|i| i.min(u32::MAX as u64) as u32).collect();
    for i in 0..=n {
        spf[i] = i as u32;
    }
    let mut p = 2usize;
    while p * p <= n {
        if spf[p] == p as u32 {
            let mut m = p * p;
            while m <= n {
                if spf[m] == m as u32 {
                    spf[m] = p as u32;
                }
                m += p;
            }
        }
        p += 1;
    }
    spf
}

/// Divisor-count table `tau(0..=x)` (index 0 unused).
pub fn divisor_count_sieve(x: u64) -> Vec<u32> {
    let n = x as usize;
    let mut tau = vec![0u32; n + 1];
    for d in 1..=n {
        let mut m = d;
        while m <= n {
            tau[m] += 1;
            m += d;
        }
    }
    tau
}

/// Trial-division primality check.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Number of divisors of `n`, by trial-division factorization.
pub fn divisor_tau(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("tau(0) is undefined".into()));
    }
    let mut n = n;
    let mut count = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u64;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            count *= e + 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        count *= 2;
    }
    Ok(count)
}

/// A completely multiplicative, nonnegative coefficient system defined by
/// its values at primes: `lambda(1) = 1`, `lambda(p^e) = lambda(p)^e`,
/// `lambda(mn) = lambda(m) lambda(n)`.
///
/// Values are stored explicitly for primes up to `p_max`; primes up to
/// `p_max` that are absent from the map take `fill`. Primes beyond `p_max`
/// take the explicit `tail` value when one is set and are an error
/// otherwise, so truncation is never silent.
#[derive(Debug, Clone, PartialEq)]
pub struct CmSeries<F> {
    prime_values: BTreeMap<u64, F>,
    p_max: u64,
    fill: F,
    tail: Option<F>,
}

/// Default explicit-support cutoff.
pub const DEFAULT_P_MAX: u64 = 10_000;

impl<F: Real> CmSeries<F> {
    pub fn new(
        prime_values: BTreeMap<u64, F>,
        p_max: u64,
        fill: F,
        tail: Option<F>,
    ) -> Result<Self> {
        if p_max < 2 {
            return Err(Error::InvalidArgument("p_max must be >= 2".into()));
        }
        let valid = |v: &F| *v >= F::zero() && v.is_finite();
        for (&p, v) in &prime_values {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if p > p_max {
                return Err(Error::InvalidArgument(format!(
                    "prime {p} exceeds p_max = {p_max}"
                )));
            }
            if !valid(v) {
                return Err(Error::BadSeriesValue { p });
            }
        }
        if !valid(&fill) {
            return Err(Error::BadSeriesValue { p: 0 });
        }
        if let Some(t) = &tail {
            if !valid(t) {
                return Err(Error::BadSeriesValue { p: 0 });
            }
        }
        Ok(Self {
            prime_values,
            p_max,
            fill,
            tail,
        })
    }

    /// The series with `lambda(p) = c` at every prime.
    pub fn constant(c: F, p_max: u64) -> Result<Self> {
        Self::new(BTreeMap::new(), p_max, c, Some(c))
    }

    pub fn p_max(&self) -> u64 {
        self.p_max
    }

    /// `lambda(p)` for prime `p`.
    pub fn lambda_p(&self, p: u64) -> Result<F> {
        if p <= self.p_max {
            Ok(self.prime_values.get(&p).cloned().unwrap_or(self.fill))
        } else {
            self.tail.ok_or(Error::PrimeOutOfRange {
                p,
                n: p,
                p_max: self.p_max,
            })
        }
    }

    /// `lambda(n)` by trial-division factorization.
    pub fn coefficient(&self, n: u64) -> Result<F> {
        if n == 0 {
            return Err(Error::InvalidArgument("lambda(0) is undefined".into()));
        }
        let mut rest = n;
        let mut out = F::one();
        let mut p = 2u64;
        while p * p <= rest {
            if rest % p == 0 {
                let mut e = 0i32;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                out = out * self.value_at(p, n)?.powi(e);
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            out = out * self.value_at(rest, n)?;
        }
        Ok(out)
    }

    fn value_at(&self, p: u64, n: u64) -> Result<F> {
        if p <= self.p_max {
            Ok(self.prime_values.get(&p).cloned().unwrap_or(self.fill))
        } else {
            self.tail.ok_or(Error::PrimeOutOfRange {
                p,
                n,
                p_max: self.p_max,
            })
        }
    }

    /// `S(X) = sum_{n <= X} lambda(n)`, optionally over squarefree `n` only.
    pub fn partial_sum(&self, x: u64, squarefree_only: bool) -> Result<F> {
        if x < 1 {
            return Err(Error::InvalidArgument("partial sum needs X >= 1".into()));
        }
        let spf = smallest_prime_factor_sieve(x);
        let mut total = F::zero();
        for n in 1..=x {
            match self.coefficient_sieved(n, &spf, squarefree_only)? {
                Some(v) => total = total + v,
                None => {}
            }
        }
        Ok(total)
    }

    /// Prefix sums `S(0), S(1), ..., S(x_max)` in one sieve pass.
    pub fn prefix_sums(&self, x_max: u64) -> Result<Vec<F>> {
        if x_max < 1 {
            return Err(Error::InvalidArgument("prefix sums need X >= 1".into()));
        }
        let spf = smallest_prime_factor_sieve(x_max);
        let mut out = Vec::with_capacity(x_max as usize + 1);
        out.push(F::zero());
        let mut acc = F::zero();
        for n in 1..=x_max {
            acc = acc
                + self
                    .coefficient_sieved(n, &spf, false)?
                    .expect("not filtered");
            out.push(acc);
        }
        Ok(out)
    }

    /// Coefficient via a smallest-prime-factor table; `None` when the
    /// squarefree filter rejects `n`.
    fn coefficient_sieved(
        &self,
        n: u64,
        spf: &[u32],
        squarefree_only: bool,
    ) -> Result<Option<F>> {
        let mut rest = n as usize;
        let mut out = F::one();
        while rest > 1 {
            let p = spf[rest] as u64;
            let mut e = 0i32;
            while rest as u64 % p == 0 {
                rest /= p as usize;
                e += 1;
            }
            if squarefree_only && e > 1 {
                return Ok(None);
            }
            out = out * self.value_at(p, n)?.powi(e);
        }
        Ok(Some(out))
    }
}

/// The three sums behind `S(X)^2`: returns
/// `(S(X)^2, sum_{r <= X^2} lambda(r) tau_X(r), sum_{r <= X^2} lambda(r) tau(r))`
/// where `tau_X(r)` counts divisor pairs `(d, r/d)` with both entries at
/// most `X`. The first two agree exactly; the third dominates them.
pub fn square_identity_check<F: Real>(series: &CmSeries<F>, x: u64) -> Result<(F, F, F)> {
    if x < 1 {
        return Err(Error::InvalidArgument("X must be >= 1".into()));
    }
    let x_sq = x * x;
    let spf = smallest_prime_factor_sieve(x_sq);
    let mut lambda = Vec::with_capacity(x_sq as usize + 1);
    lambda.push(F::zero());
    for r in 1..=x_sq {
        lambda.push(
            series
                .coefficient_sieved(r, &spf, false)?
                .expect("not filtered"),
        );
    }

    let mut s = F::zero();
    for n in 1..=x {
        s = s + lambda[n as usize];
    }
    let square = s * s;

    // Restricted divisor counts by direct pair enumeration.
    let mut tau_x = vec![0u32; x_sq as usize + 1];
    for d in 1..=x {
        for e in 1..=x {
            tau_x[(d * e) as usize] += 1;
        }
    }
    let mut restricted = F::zero();
    for r in 1..=x_sq as usize {
        if tau_x[r] > 0 {
            restricted = restricted + lambda[r] * F::from_u32(tau_x[r]).expect("small count");
        }
    }

    let tau = divisor_count_sieve(x_sq);
    let mut weighted = F::zero();
    for r in 1..=x_sq as usize {
        weighted = weighted + lambda[r] * F::from_u32(tau[r]).expect("small count");
    }

    Ok((square, restricted, weighted))
}

/// Smallest integer strictly greater than `(ln a - ln eps) / ln 2`, floored
/// at zero: the number of square-root steps needed to push a premise
/// exponent `a` below `eps`.
pub fn bootstrap_iterations(a: f64, eps: f64) -> Result<u32> {
    if !(a > 0.0) || !(eps > 0.0) {
        return Err(Error::InvalidArgument(
            "bootstrap iteration count needs a > 0 and eps > 0".into(),
        ));
    }
    let raw = (a.ln() - eps.ln()) / std::f64::consts::LN_2;
    let m = raw.floor() as i64 + 1;
    Ok(m.max(0) as u32)
}

/// Output of one bootstrap step.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BootstrapStep<F> {
    /// Smallest constant with `S(X) <= b_prime X^{1+eps}` on `X <= x_max`.
    pub b_prime: F,
    /// Certificate linking the step to the premise: `b_prime <= kappa sqrt(b)`.
    pub kappa: F,
}

/// One square-root step: verifies the premise `S(X) <= b X^sigma` for all
/// `X <= x_max` (failing with the witness X otherwise), then measures the
/// optimal constant at exponent `1 + eps` and the certificate
/// `kappa = b_prime / sqrt(b)` collecting the divisor-bound loss.
pub fn bootstrap_step<F: Real>(
    series: &CmSeries<F>,
    x_max: u64,
    b: F,
    sigma: F,
    eps: F,
) -> Result<BootstrapStep<F>> {
    if x_max < 1 {
        return Err(Error::InvalidArgument("x_max must be >= 1".into()));
    }
    let sums = series.prefix_sums(x_max)?;
    bootstrap_step_with_sums(&sums, x_max, b, sigma, eps)
}

pub(crate) fn bootstrap_step_with_sums<F: Real>(
    sums: &[F],
    x_max: u64,
    b: F,
    sigma: F,
    eps: F,
) -> Result<BootstrapStep<F>> {
    let rel = F::from_f64(1e-12).expect("slack converts");
    let mut b_prime = F::zero();
    for x in 1..=x_max {
        let s = sums[x as usize];
        let xf = F::from_u64(x).expect("x converts");
        let bound = b * xf.powf(sigma);
        if s > bound * (F::one() + rel) {
            return Err(Error::PremiseViolated {
                witness_x: x,
                sum: s.to_f64().unwrap_or(f64::NAN),
                bound: bound.to_f64().unwrap_or(f64::NAN),
            });
        }
        let measured = s / xf.powf(F::one() + eps);
        if measured > b_prime {
            b_prime = measured;
        }
    }
    Ok(BootstrapStep {
        b_prime,
        kappa: b_prime / b.sqrt(),
    })
}

/// Truncated dyadic majorant of the Dirichlet tail at `sigma`:
/// `sum_{M = 2^k <= x_max} M^{-sigma} S(2M)`. Dominates
/// `sum_{n <= x_max} lambda(n) n^{-sigma}` term-block by term-block and is
/// monotone in `x_max`.
pub fn dyadic_tail_sum<F: Real>(series: &CmSeries<F>, sigma: F, x_max: u64) -> Result<F> {
    if sigma <= F::one() {
        return Err(Error::InvalidArgument("sigma must exceed 1".into()));
    }
    if x_max < 1 {
        return Err(Error::InvalidArgument("x_max must be >= 1".into()));
    }
    let sums = series.prefix_sums(2 * x_max)?;
    let mut total = F::zero();
    let mut m = 1u64;
    while m <= x_max {
        let mf = F::from_u64(m).expect("m converts");
        total = total + mf.powf(-sigma) * sums[(2 * m) as usize];
        m *= 2;
    }
    Ok(total)
}

/// Closed form `(1 - max|alpha|^2 Np^{-sigma})^{-1}` of the local factor
/// `sum_r max|alpha|^{2r} Np^{-r sigma}`; errors when the ratio reaches 1.
pub fn maxsq_euler_factor<F: Real>(class: &UnitaryClass<F>, sigma: F) -> Result<F> {
    let np = class.params().prime_norm().ok_or(Error::MissingPrimeNorm)?;
    let max_sq = class.params().max_modulus_sq();
    let np_sigma = F::from_u64(np).expect("np converts").powf(sigma);
    if max_sq >= np_sigma {
        return Err(Error::DivergentFactor {
            max_sq: max_sq.to_f64().unwrap_or(f64::NAN),
            threshold: np_sigma.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(F::one() / (F::one() - max_sq / np_sigma))
}

/// Both closed forms of the linear-term extraction
/// `sum_r y^r = (1 + y) sum_r y^{2r}` at `y = lambda_p x`; the two returned
/// values are equal identically.
pub fn linear_extraction_check<F: Real>(lambda_p: F, x: F) -> Result<(F, F)> {
    if lambda_p < F::zero() || x < F::zero() || x >= F::one() {
        return Err(Error::InvalidArgument(
            "need lambda_p >= 0 and x in [0, 1)".into(),
        ));
    }
    let y = lambda_p * x;
    if y >= F::one() {
        return Err(Error::DivergentGeometric(y.to_f64().unwrap_or(f64::NAN)));
    }
    let plain = F::one() / (F::one() - y);
    let extracted = (F::one() + y) / (F::one() - y * y);
    Ok((plain, extracted))
}

/// Comparison of the ramified local factor bound against its linear
/// majorant at `delta = 1/(n^2 + 1)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RamifiedFactorBound {
    /// `(1 - Np^{-2 delta})^{-1}`, the geometric closed form.
    pub closed_form: f64,
    /// `1 + Np^{-delta}`.
    pub linear_bound: f64,
    /// Whether `closed_form <= linear_bound`.
    pub flag: bool,
    /// `c = (1 - 2^{-2 delta})^{-1}`: the flag is guaranteed once
    /// `Np >= c^{1/delta}`.
    pub guarantee_constant: f64,
}

pub fn ramified_factor_bound(np: u64, n: usize) -> Result<RamifiedFactorBound> {
    if np < 2 {
        return Err(Error::InvalidArgument("Np must be >= 2".into()));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let delta = 1.0 / (n * n + 1) as f64;
    let npf = np as f64;
    let closed_form = 1.0 / (1.0 - npf.powf(-2.0 * delta));
    let linear_bound = 1.0 + npf.powf(-delta);
    let guarantee_constant = 1.0 / (1.0 - 2f64.powf(-2.0 * delta));
    Ok(RamifiedFactorBound {
        closed_form,
        linear_bound,
        flag: closed_form <= linear_bound,
        guarantee_constant,
    })
}

/// Smallest prime (up to `scan_limit`) from which the ramified flag holds;
/// the flag is monotone in `Np`, so it holds for every larger prime too.
pub fn ramified_flag_threshold(n: usize, scan_limit: u64) -> Result<Option<u64>> {
    for p in primes_up_to(scan_limit) {
        if ramified_factor_bound(p, n)?.flag {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// `prod_i (1 + |mu_i|)`, the archimedean conductor factor. Empty input
/// gives 1.
pub fn archimedean_factor(mu: &[C64]) -> f64 {
    mu.iter().map(|m| 1.0 + m.norm()).product()
}

/// Analytic conductor data: arithmetic conductor `q`, archimedean
/// parameters, and the products they determine.
#[derive(Debug, Clone, PartialEq)]
pub struct Conductor {
    q: u64,
    mu: Vec<C64>,
    lambda_inf: f64,
    c: f64,
}

impl Conductor {
    pub fn new(q: u64, mu: Vec<C64>) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidArgument("conductor q must be >= 1".into()));
        }
        let lambda_inf = archimedean_factor(&mu);
        let c = q as f64 * lambda_inf;
        Ok(Self {
            q,
            mu,
            lambda_inf,
            c,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn mu(&self) -> &[C64] {
        &self.mu
    }

    /// `lambda_inf = prod (1 + |mu|) >= 1`.
    pub fn lambda_inf(&self) -> f64 {
        self.lambda_inf
    }

    /// The analytic conductor `C = q * lambda_inf`.
    pub fn analytic(&self) -> f64 {
        self.c
    }
}

/// Right-hand side of the pair conductor bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConductorBound {
    /// `C(pi_1)^{n_2} C(pi_2)^{n_1}`.
    pub analytic: f64,
    /// The arithmetic-conductor part `q_1^{n_2} q_2^{n_1}`.
    pub q_product: f64,
}

/// The product shape `C_1^{n_2} C_2^{n_1}` bounding the conductor of a
/// pair (implicit constant taken as 1; this is the reported right-hand
/// side, not a certified inequality on actual conductors).
pub fn rankin_conductor_bound(
    c1: &Conductor,
    n1: u32,
    c2: &Conductor,
    n2: u32,
) -> ConductorBound {
    ConductorBound {
        analytic: c1.analytic().powi(n2 as i32) * c2.analytic().powi(n1 as i32),
        q_product: (c1.q() as f64).powi(n2 as i32) * (c2.q() as f64).powi(n1 as i32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{SpectralParams, UnitaryClass};
    use num_complex::Complex;
    use proptest::prelude::*;

    fn series_from(pairs: &[(u64, f64)], p_max: u64, fill: f64, tail: Option<f64>) -> CmSeries<f64> {
        let map: BTreeMap<u64, f64> = pairs.iter().cloned().collect();
        CmSeries::new(map, p_max, fill, tail).unwrap()
    }

    fn ones(p_max: u64) -> CmSeries<f64> {
        CmSeries::constant(1.0, p_max).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let s = ones(100);
        for n in 1..=50 {
            assert_eq!(s.coefficient(n).unwrap(), 1.0);
        }
        let s = series_from(&[(2, 3.0)], 100, 1.0, None);
        assert_eq!(s.coefficient(8).unwrap(), 27.0);
        let s = series_from(&[(2, 2.0), (3, 5.0)], 100, 1.0, None);
        assert_eq!(s.coefficient(12).unwrap(), 20.0);
    }

    #[test]
    fn coefficient_rejects_beyond_pmax_without_tail() {
        let s = series_from(&[], 10, 1.0, None);
        assert!(matches!(
            s.coefficient(13),
            Err(Error::PrimeOutOfRange { p: 13, .. })
        ));
        assert!(s.coefficient(9).is_ok());
        let with_tail = series_from(&[], 10, 1.0, Some(1.0));
        assert_eq!(with_tail.coefficient(13).unwrap(), 1.0);
    }

    #[test]
    fn constructor_validation() {
        let mut map = BTreeMap::new();
        map.insert(4u64, 1.0f64);
        assert!(matches!(
            CmSeries::new(map, 100, 1.0, None),
            Err(Error::NotPrime(4))
        ));
        let mut map = BTreeMap::new();
        map.insert(3u64, -0.5f64);
        assert!(matches!(
            CmSeries::new(map, 100, 1.0, None),
            Err(Error::BadSeriesValue { p: 3 })
        ));
    }

    #[test]
    fn partial_sum_examples() {
        let s = ones(100);
        assert_eq!(s.partial_sum(3, false).unwrap(), 3.0);
        // Squarefree n <= 8: 1, 2, 3, 5, 6, 7.
        assert_eq!(s.partial_sum(8, true).unwrap(), 6.0);
        let s = series_from(&[(2, 2.0)], 100, 1.0, None);
        assert_eq!(s.partial_sum(4, false).unwrap(), 8.0);
    }

    #[test]
    fn prefix_sums_match_partial_sums() {
        let s = series_from(&[(2, 1.5), (5, 0.0)], 1000, 1.0, None);
        let sums = s.prefix_sums(200).unwrap();
        for x in [1u64, 7, 50, 200] {
            let direct = s.partial_sum(x, false).unwrap();
            assert!((sums[x as usize] - direct).abs() <= 1e-12 * (1.0 + direct));
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(divisor_tau(12).unwrap(), 6);
        assert_eq!(divisor_tau(1).unwrap(), 1);
        assert_eq!(divisor_tau(49).unwrap(), 3);
        assert!(divisor_tau(0).is_err());
        let sieve = divisor_count_sieve(500);
        for n in 1..=500u64 {
            assert_eq!(sieve[n as usize] as u64, divisor_tau(n).unwrap());
        }
    }

    #[test]
    fn square_identity_examples() {
        let (sq, restricted, weighted) = square_identity_check(&ones(100), 3).unwrap();
        assert_eq!(sq, 9.0);
        assert_eq!(restricted, 9.0);
        assert_eq!(weighted, 23.0);

        let (sq, restricted, weighted) = square_identity_check(&ones(100), 1).unwrap();
        assert_eq!((sq, restricted, weighted), (1.0, 1.0, 1.0));

        let s = series_from(&[(2, 2.0)], 100, 1.0, None);
        let (sq, restricted, weighted) = square_identity_check(&s, 2).unwrap();
        assert_eq!(sq, 9.0);
        assert_eq!(restricted, 9.0);
        // lambda tau over r <= 4: 1 + 2*2 + 1*2 + 4*3 = 19.
        assert_eq!(weighted, 19.0);
        assert!(weighted >= restricted);
    }

    #[test]
    fn square_identity_random_series() {
        for seed in 0..10u64 {
            let v2 = 0.25 * (seed % 7) as f64;
            let v3 = 0.5 * (seed % 3) as f64;
            let s = series_from(&[(2, v2), (3, v3)], 5000, 1.0, None);
            for x in [2u64, 17, 60] {
                let (sq, restricted, weighted) = square_identity_check(&s, x).unwrap();
                assert!(
                    (sq - restricted).abs() <= 1e-9 * (1.0 + sq),
                    "identity fails: seed={seed} x={x}"
                );
                assert!(restricted <= weighted * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn bootstrap_iteration_count() {
        assert_eq!(bootstrap_iterations(10.0, 0.1).unwrap(), 7);
        assert_eq!(bootstrap_iterations(1.0, 1.0).unwrap(), 1);
        assert_eq!(bootstrap_iterations(0.5, 1.0).unwrap(), 0);
        assert!(bootstrap_iterations(0.0, 1.0).is_err());
    }

    #[test]
    fn bootstrap_step_linear_series() {
        // lambda = 1 everywhere: S(X) = X, optimal constant at 1 + eps is 1.
        let s = ones(2000);
        let step = bootstrap_step(&s, 1000, 2.0, 1.0, 0.1).unwrap();
        assert!((step.b_prime - 1.0).abs() < 1e-12);
        assert!((step.kappa - 1.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bootstrap_premise_violation_reports_witness() {
        let s = series_from(&[(2, 10.0)], 100, 1.0, None);
        // S(2) = 11 > 0.5 * 2: the witness is the first failing X.
        let err = bootstrap_step(&s, 50, 0.5, 1.0, 0.1).unwrap_err();
        match err {
            Error::PremiseViolated { witness_x, .. } => assert_eq!(witness_x, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn bootstrap_ignores_primes_beyond_range() {
        let base = series_from(&[(2, 10.0)], 10_000, 1.0, None);
        let spiked = series_from(&[(2, 10.0), (9973, 55.0)], 10_000, 1.0, None);
        let a = bootstrap_step(&base, 500, 100.0, 2.0, 0.05).unwrap();
        let b = bootstrap_step(&spiked, 500, 100.0, 2.0, 0.05).unwrap();
        assert_eq!(a.b_prime, b.b_prime);
    }

    #[test]
    fn dyadic_tail_examples() {
        let s = ones(5000);
        // sigma large: the k = 0 term S(2) = 2 dominates.
        let v = dyadic_tail_sum(&s, 30.0, 64).unwrap();
        assert!((v - 2.0).abs() < 1e-6);

        let v = dyadic_tail_sum(&s, 2.0, 1024).unwrap();
        let mut direct = 0.0;
        let mut m = 1u64;
        while m <= 1024 {
            direct += (m as f64).powf(-2.0) * (2 * m) as f64;
            m *= 2;
        }
        assert!((v - direct).abs() <= 1e-12 * (1.0 + direct));

        // Dominates the truncated Dirichlet tail.
        let mut tail = 0.0;
        for n in 1..=1024u64 {
            tail += (n as f64).powf(-2.0);
        }
        assert!(v >= tail);

        assert!(dyadic_tail_sum(&s, 1.0, 10).is_err());
        let v = dyadic_tail_sum(&ones(2), 2.0, 1).unwrap();
        assert!(v.is_finite());
    }

    #[test]
    fn dyadic_monotone_in_x_max() {
        let s = series_from(&[(2, 1.3), (7, 0.2)], 5000, 1.0, None);
        let mut prev = 0.0;
        for x_max in [1u64, 2, 8, 64, 512] {
            let v = dyadic_tail_sum(&s, 1.5, x_max).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    fn unit_class(np: u64) -> UnitaryClass<f64> {
        let p = SpectralParams::with_prime_norm(
            vec![Complex::new(0.0, 1.0), Complex::new(0.0, -1.0)],
            np,
        )
        .unwrap();
        UnitaryClass::new(p, 1e-9).unwrap()
    }

    #[test]
    fn euler_factor_examples() {
        let v = maxsq_euler_factor(&unit_class(2), 2.0).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-14);

        let p = SpectralParams::with_prime_norm(
            vec![Complex::new(2f64.sqrt(), 0.0), Complex::new(1.0 / 2f64.sqrt(), 0.0)],
            4,
        )
        .unwrap();
        let class = UnitaryClass::new(p, 1e-9).unwrap();
        let v = maxsq_euler_factor(&class, 1.0).unwrap();
        assert!((v - 2.0).abs() < 1e-12);

        let p = SpectralParams::with_prime_norm(
            vec![Complex::new(2.0, 0.0), Complex::new(0.5, 0.0)],
            4,
        )
        .unwrap();
        let class = UnitaryClass::new(p, 1e-9).unwrap();
        assert!(matches!(
            maxsq_euler_factor(&class, 1.0),
            Err(Error::DivergentFactor { .. })
        ));
    }

    #[test]
    fn euler_factor_matches_truncated_sum() {
        for (np, sigma) in [(2u64, 2.0f64), (3, 1.5), (5, 1.1), (2, 0.5)] {
            let class = unit_class(np);
            let ratio = 1.0 / (np as f64).powf(sigma);
            if ratio > 0.9 {
                continue;
            }
            let closed = maxsq_euler_factor(&class, sigma).unwrap();
            let mut truncated = 0.0;
            for r in 0..=60 {
                truncated += ratio.powi(r);
            }
            assert!((closed - truncated).abs() <= 1e-12 * closed);
        }
    }

    #[test]
    fn linear_extraction_examples() {
        let (a, b) = linear_extraction_check(3.0f64, 0.1).unwrap();
        assert!((a - 1.0 / 0.7).abs() < 1e-14);
        assert!((a - b).abs() < 1e-14);

        let (a, b) = linear_extraction_check(0.0f64, 0.7).unwrap();
        assert_eq!((a, b), (1.0, 1.0));

        let (a, b) = linear_extraction_check(1.0f64, 0.5).unwrap();
        assert!((a - 2.0).abs() < 1e-14 && (b - 2.0).abs() < 1e-14);

        assert!(matches!(
            linear_extraction_check(4.0f64, 0.5),
            Err(Error::DivergentGeometric(_))
        ));
        assert!(linear_extraction_check(1.0f64, 1.0).is_err());
    }

    #[test]
    fn ramified_bound_examples() {
        let b = ramified_factor_bound(4, 1).unwrap();
        assert!((b.closed_form - 4.0 / 3.0).abs() < 1e-14);
        assert!((b.linear_bound - 1.5).abs() < 1e-14);
        assert!(b.flag);

        let b = ramified_factor_bound(2, 2).unwrap();
        assert_eq!(b.flag, b.closed_form <= b.linear_bound);
        assert!(!b.flag);

        let b = ramified_factor_bound(1_000_003, 4).unwrap();
        assert!(b.flag);
    }

    #[test]
    fn ramified_flag_is_monotone_and_thresholds_match() {
        // flag <=> t + t^2 <= 1 at t = Np^{-delta}, i.e. Np >= phi^{n^2+1}.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for n in 1..=4usize {
            let threshold = ramified_flag_threshold(n, 10_000)
                .unwrap()
                .unwrap_or(u64::MAX);
            let mut seen_true = false;
            for p in primes_up_to(10_000) {
                let flag = ramified_factor_bound(p, n).unwrap().flag;
                if seen_true {
                    assert!(flag, "flag regressed at n={n} p={p}");
                }
                seen_true = seen_true || flag;
                assert_eq!(flag, p >= threshold);
            }
            let analytic = phi.powi((n * n + 1) as i32);
            assert!(
                (threshold as f64) >= analytic * (1.0 - 1e-6),
                "threshold {threshold} below analytic cutoff {analytic} at n={n}"
            );
        }
        assert_eq!(ramified_flag_threshold(1, 10_000).unwrap(), Some(3));
        assert_eq!(ramified_flag_threshold(2, 10_000).unwrap(), Some(13));
        assert_eq!(ramified_flag_threshold(3, 10_000).unwrap(), Some(127));
        assert_eq!(ramified_flag_threshold(4, 10_000).unwrap(), Some(3581));
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(archimedean_factor(&[]), 1.0);
        assert_eq!(
            archimedean_factor(&[Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)]),
            1.0
        );
        let v = archimedean_factor(&[Complex::new(3.0, 0.0), Complex::new(0.0, 4.0)]);
        assert!((v - 20.0).abs() < 1e-12);

        let c1 = Conductor::new(1, vec![]).unwrap();
        let c2 = Conductor::new(1, vec![]).unwrap();
        assert_eq!(rankin_conductor_bound(&c1, 2, &c2, 3).analytic, 1.0);

        let c1 = Conductor::new(10, vec![]).unwrap();
        let c2 = Conductor::new(100, vec![]).unwrap();
        let b = rankin_conductor_bound(&c1, 2, &c2, 3);
        assert!((b.analytic - 1e7).abs() < 1e-3);
        let swapped = rankin_conductor_bound(&c2, 3, &c1, 2);
        assert!((b.analytic - swapped.analytic).abs() < 1e-9 * b.analytic);

        let c = Conductor::new(6, vec![Complex::new(3.0, 0.0)]).unwrap();
        assert!((c.lambda_inf() - 4.0).abs() < 1e-12);
        assert!((c.analytic() - 24.0).abs() < 1e-12);
        assert!(c.lambda_inf() >= 1.0);
        assert!(c.analytic() >= c.q() as f64);
    }

    proptest! {
        #[test]
        fn complete_multiplicativity(m in 1u64..300, n in 1u64..300, v2 in 0.0f64..3.0, v3 in 0.0f64..3.0) {
            let s = series_from(&[(2, v2), (3, v3)], 100_000, 1.0, None);
            let lhs = s.coefficient(m * n).unwrap();
            let rhs = s.coefficient(m).unwrap() * s.coefficient(n).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
        }

        #[test]
        fn polynomial_control_premise(x in 1u64..400, sigma in 1.1f64..3.0) {
            // S(X) <= X^sigma sum_{n <= X} lambda(n) n^{-sigma}, term by term.
            let s = series_from(&[(2, 1.4), (11, 0.3)], 100_000, 1.0, None);
            let sums = s.prefix_sums(x).unwrap();
            let mut dirichlet = 0.0;
            for n in 1..=x {
                dirichlet += s.coefficient(n).unwrap() * (n as f64).powf(-sigma);
            }
            prop_assert!(sums[x as usize] <= (x as f64).powf(sigma) * dirichlet * (1.0 + 1e-12));
        }
    }
}
