//! Local spectral data: parameter multisets, the unitarity pairing, and the
//! elementary/power trace functionals.

use crate::error::{Error, Result};
use crate::scalar::{cmp_modulus_desc, Coord, Real};
use crate::symfunc::schur::{complete_homogeneous, elementary_symmetric};
use crate::tol;
use num_complex::Complex;
use num_traits::{One, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest rank accepted by the public API. The constant tables grow as
/// squared products of binomials and stop being desk-scale well before this.
pub const MAX_RANK: usize = 64;

/// A finite place's local parameter multiset: `n` nonzero complex values,
/// optionally tagged with the prime norm `Np`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParams<T> {
    values: Vec<Complex<T>>,
    prime_norm: Option<u64>,
}

impl<T: Coord> SpectralParams<T> {
    /// Builds a parameter multiset, rejecting empty lists and zero values.
    pub fn new(values: Vec<Complex<T>>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyParams);
        }
        if values.len() > MAX_RANK {
            return Err(Error::RankOutOfRange {
                n: values.len(),
                min: 1,
                max: MAX_RANK,
            });
        }
        for (i, v) in values.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::ZeroValue(i));
            }
            // NaN coordinates fail self-comparison; exact types always pass.
            if v.re != v.re || v.im != v.im {
                return Err(Error::NonFiniteValue(i));
            }
        }
        Ok(Self {
            values,
            prime_norm: None,
        })
    }

    /// Same as [`SpectralParams::new`] with a prime norm attached.
    pub fn with_prime_norm(values: Vec<Complex<T>>, np: u64) -> Result<Self> {
        if np < 2 {
            return Err(Error::InvalidArgument(format!(
                "prime norm must be >= 2, got {np}"
            )));
        }
        let mut p = Self::new(values)?;
        p.prime_norm = Some(np);
        Ok(p)
    }

    /// Attaches or replaces the prime norm.
    pub fn set_prime_norm(&mut self, np: u64) {
        self.prime_norm = Some(np);
    }

    /// The rank `n`.
    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn prime_norm(&self) -> Option<u64> {
        self.prime_norm
    }

    /// Returns the same multiset ordered by weakly decreasing modulus.
    /// Ties keep their original relative order.
    pub fn sort_by_modulus(&self) -> Self {
        let mut values = self.values.clone();
        values.sort_by(cmp_modulus_desc);
        Self {
            values,
            prime_norm: self.prime_norm,
        }
    }

    /// True when moduli are weakly decreasing.
    pub fn is_sorted_by_modulus(&self) -> bool {
        self.values
            .windows(2)
            .all(|w| w[0].norm_sqr() >= w[1].norm_sqr())
    }

    /// Coordinate-wise complex conjugate of the multiset.
    pub fn conjugate(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| v.conj()).collect(),
            prime_norm: self.prime_norm,
        }
    }

    /// The multiset of reciprocal conjugates `1 / conj(alpha_i)`.
    ///
    /// For a unitary class this is the same multiset again; in general it is
    /// the parameter set of the dual.
    pub fn inverse_conjugate(&self) -> Self {
        let one = Complex::<T>::one();
        Self {
            values: self
                .values
                .iter()
                .map(|v| one.clone() / v.conj())
                .collect(),
            prime_norm: self.prime_norm,
        }
    }

    /// `max_i |alpha_i|^2`.
    pub fn max_modulus_sq(&self) -> T {
        let mut best = self.values[0].norm_sqr();
        for v in &self.values[1..] {
            let n = v.norm_sqr();
            if n > best {
                best = n;
            }
        }
        best
    }

    /// Trace of the j-th exterior power: the j-th elementary symmetric
    /// polynomial of the values. `j = 0` gives 1.
    pub fn exterior_trace(&self, j: usize) -> Result<Complex<T>> {
        let n = self.rank();
        if j > n {
            return Err(Error::PowerOutOfRange { j, n });
        }
        Ok(elementary_symmetric(&self.values, j)[j].clone())
    }

    /// Trace of the symmetric square: `sum_{i <= j} alpha_i alpha_j`,
    /// the complete homogeneous polynomial of degree 2.
    pub fn sym2_trace(&self) -> Complex<T> {
        complete_homogeneous(&self.values, 2)[2].clone()
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl SpectralParams<f64> {
    /// Canonical text record: rank, prime norm, then one `v re im` line per
    /// value with 17 significant digits (exact `f64` round trip).
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        let np = match self.prime_norm {
            Some(p) => p.to_string(),
            None => "-".into(),
        };
        out.push_str(&format!("spectral n={} prime_norm={}\n", self.rank(), np));
        for v in &self.values {
            out.push_str(&format!("v {} {}\n", fmt_f64(v.re), fmt_f64(v.im)));
        }
        out
    }

    pub fn from_record(text: &str) -> Result<Self> {
        let (params, pairing, _) = parse_record(text, "spectral")?;
        if pairing.is_some() {
            return Err(Error::BadRecord("unexpected sigma line".into()));
        }
        Ok(params)
    }
}

/// A parameter multiset together with a pairing permutation witnessing the
/// unitarity constraint `|alpha_i * conj(alpha_sigma(i)) - 1| <= tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryClass<F> {
    params: SpectralParams<F>,
    pairing: Vec<usize>,
    tolerance: F,
}

impl<F: Real> UnitaryClass<F> {
    /// Checks the pairing constraint and wraps the parameters with the
    /// discovered witness. Fails when no pairing exists within `tol`.
    pub fn new(params: SpectralParams<F>, tolerance: F) -> Result<Self> {
        if tolerance < F::zero() {
            return Err(Error::InvalidArgument(
                "tolerance must be nonnegative".into(),
            ));
        }
        let pairing = check_unitary_pairing(&params, &tolerance).ok_or(Error::NoPairing)?;
        Ok(Self {
            params,
            pairing,
            tolerance,
        })
    }

    pub fn params(&self) -> &SpectralParams<F> {
        &self.params
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn tolerance(&self) -> F {
        self.tolerance
    }

    pub fn rank(&self) -> usize {
        self.params.rank()
    }

    /// Re-sorts by modulus and re-derives the pairing witness.
    pub fn sorted(&self) -> Result<Self> {
        Self::new(self.params.sort_by_modulus(), self.tolerance)
    }

    /// Number of values with modulus strictly above `1 + tol`. The pairing
    /// forces this below `floor(n/2)`.
    pub fn count_above_unit(&self) -> usize {
        let lim = (F::one() + self.tolerance) * (F::one() + self.tolerance);
        self.params
            .values()
            .iter()
            .filter(|v| v.norm_sqr() > lim)
            .count()
    }

    /// Re-checks every class invariant: the pairing products, the involution
    /// property, and the floor(n/2) count.
    pub fn verify(&self) -> Result<()> {
        let n = self.rank();
        let vals = self.params.values();
        let tol_sq = self.tolerance * self.tolerance;
        for i in 0..n {
            let j = self.pairing[i];
            if j >= n || self.pairing[j] != i {
                return Err(Error::NoPairing);
            }
            let prod = vals[i] * vals[j].conj() - Complex::<F>::one();
            if prod.norm_sqr() > tol_sq {
                return Err(Error::NoPairing);
            }
        }
        if self.count_above_unit() > n / 2 {
            return Err(Error::NoPairing);
        }
        Ok(())
    }
}

impl UnitaryClass<f64> {
    /// Canonical text record for a class: the parameter record plus the
    /// tolerance and the pairing as a 1-based index list.
    pub fn to_record(&self) -> String {
        let np = match self.params.prime_norm() {
            Some(p) => p.to_string(),
            None => "-".into(),
        };
        let mut out = format!(
            "unitary n={} prime_norm={} tol={}\n",
            self.rank(),
            np,
            fmt_f64(self.tolerance)
        );
        for v in self.params.values() {
            out.push_str(&format!("v {} {}\n", fmt_f64(v.re), fmt_f64(v.im)));
        }
        let sigma: Vec<String> = self.pairing.iter().map(|j| (j + 1).to_string()).collect();
        out.push_str(&format!("sigma {}\n", sigma.join(" ")));
        out
    }

    pub fn from_record(text: &str) -> Result<Self> {
        let (params, pairing, tolerance) = parse_record(text, "unitary")?;
        let pairing = pairing.ok_or_else(|| Error::BadRecord("missing sigma line".into()))?;
        let tolerance = tolerance.ok_or_else(|| Error::BadRecord("missing tol field".into()))?;
        let class = Self {
            params,
            pairing,
            tolerance,
        };
        class.verify()?;
        Ok(class)
    }
}

fn parse_record(
    text: &str,
    kind: &str,
) -> Result<(SpectralParams<f64>, Option<Vec<usize>>, Option<f64>)> {
    let bad = |m: &str| Error::BadRecord(m.to_string());
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty record"))?;
    let mut fields = header.split_whitespace();
    let tag = fields.next().ok_or_else(|| bad("missing header tag"))?;
    if tag != kind {
        return Err(bad(&format!("expected '{kind}' record, found '{tag}'")));
    }
    let mut n: Option<usize> = None;
    let mut prime_norm: Option<u64> = None;
    let mut tolerance: Option<f64> = None;
    for field in fields {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(&format!("malformed header field '{field}'")))?;
        match key {
            "n" => n = Some(value.parse().map_err(|_| bad("bad n"))?),
            "prime_norm" => {
                if value != "-" {
                    prime_norm = Some(value.parse().map_err(|_| bad("bad prime_norm"))?);
                }
            }
            "tol" => tolerance = Some(value.parse().map_err(|_| bad("bad tol"))?),
            other => return Err(bad(&format!("unknown header field '{other}'"))),
        }
    }
    let n = n.ok_or_else(|| bad("missing n field"))?;
    let mut values = Vec::with_capacity(n);
    let mut pairing: Option<Vec<usize>> = None;
    for line in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let re: f64 = parts
                    .next()
                    .ok_or_else(|| bad("missing re"))?
                    .parse()
                    .map_err(|_| bad("bad re"))?;
                let im: f64 = parts
                    .next()
                    .ok_or_else(|| bad("missing im"))?
                    .parse()
                    .map_err(|_| bad("bad im"))?;
                values.push(Complex::new(re, im));
            }
            Some("sigma") => {
                let mut sigma = Vec::with_capacity(n);
                for p in parts {
                    let one_based: usize = p.parse().map_err(|_| bad("bad sigma index"))?;
                    if one_based == 0 || one_based > n {
                        return Err(bad("sigma index out of range"));
                    }
                    sigma.push(one_based - 1);
                }
                if sigma.len() != n {
                    return Err(bad("sigma length mismatch"));
                }
                pairing = Some(sigma);
            }
            Some(other) => return Err(bad(&format!("unknown line tag '{other}'"))),
            None => {}
        }
    }
    if values.len() != n {
        return Err(bad(&format!(
            "expected {n} values, found {}",
            values.len()
        )));
    }
    let params = match prime_norm {
        Some(np) => SpectralParams::with_prime_norm(values, np)?,
        None => SpectralParams::new(values)?,
    };
    Ok((params, pairing, tolerance))
}

/// Greedy search for a pairing permutation `sigma` with
/// `|alpha_i * conj(alpha_sigma(i)) - 1| <= tol` for every `i`.
///
/// Each unassigned index is matched to the unassigned value nearest to its
/// reciprocal conjugate `1 / conj(alpha_i)`, lowest index on ties, and the
/// candidate pair is then tested against the tolerance. Returns `None` when
/// the greedy witness fails; any returned permutation is a valid witness.
pub fn check_unitary_pairing<T: Coord>(
    params: &SpectralParams<T>,
    tol: &T,
) -> Option<Vec<usize>> {
    let n = params.rank();
    let vals = params.values();
    let tol_sq = tol.clone() * tol.clone();
    let one = Complex::<T>::one();
    let mut sigma = vec![usize::MAX; n];
    for i in 0..n {
        if sigma[i] != usize::MAX {
            continue;
        }
        let target = one.clone() / vals[i].conj();
        let mut best: Option<(usize, T)> = None;
        for (j, v) in vals.iter().enumerate() {
            if sigma[j] != usize::MAX {
                continue;
            }
            let d = (v.clone() - target.clone()).norm_sqr();
            let better = match &best {
                None => true,
                Some((_, bd)) => d < *bd,
            };
            if better {
                best = Some((j, d));
            }
        }
        let (j, _) = best?;
        let defect = vals[i].clone() * vals[j].conj() - one.clone();
        if defect.norm_sqr() > tol_sq {
            return None;
        }
        sigma[i] = j;
        sigma[j] = i;
    }
    Some(sigma)
}

fn unit_interval<F: Real>(rng: &mut ChaCha8Rng) -> F {
    // 53 uniform bits, the full f64 mantissa; stable across platforms.
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    F::from_f64(u).expect("unit interval value converts")
}

/// Draws a deterministic unitary class: `k` reciprocal-conjugate pairs with
/// log-uniform modulus in `[1, max_modulus]`, `n - 2k` unit-modulus values,
/// `k` uniform in `0..=floor(n/2)`. The result is sorted by modulus and
/// passes [`check_unitary_pairing`] at tolerance 1e-9.
pub fn sample_unitary_class<F: Real>(
    n: usize,
    max_modulus: F,
    seed: u64,
) -> Result<UnitaryClass<F>> {
    if n < 1 || n > MAX_RANK {
        return Err(Error::RankOutOfRange {
            n,
            min: 1,
            max: MAX_RANK,
        });
    }
    if max_modulus < F::one() {
        return Err(Error::InvalidArgument(
            "max_modulus must be >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = n / 2;
    let k = (rng.next_u64() % (m as u64 + 1)) as usize;
    let two_pi = F::from_f64(std::f64::consts::TAU).expect("tau converts");
    let log_max = max_modulus.ln();
    let mut values = Vec::with_capacity(n);
    for _ in 0..k {
        let r = (unit_interval::<F>(&mut rng) * log_max).exp();
        let theta = unit_interval::<F>(&mut rng) * two_pi;
        values.push(Complex::from_polar(r, theta));
        values.push(Complex::from_polar(r.recip(), theta));
    }
    for _ in 0..(n - 2 * k) {
        let theta = unit_interval::<F>(&mut rng) * two_pi;
        values.push(Complex::from_polar(F::one(), theta));
    }
    let params = SpectralParams::new(values)?.sort_by_modulus();
    UnitaryClass::new(
        params,
        F::from_f64(tol::PAIRING_TOL).expect("tolerance converts"),
    )
}
