//! Exact constant apparatus for the trace majorization bound: subset counts
//! `r_j`, the threshold sequence `R_j`, and the leading constant `c_n`.
//!
//! Everything here is exact rational arithmetic on arbitrary-precision
//! integers. The constants grow as squared products of binomial
//! coefficients, so conversion to floating point happens only at the
//! majorization boundary.
//!
//! The threshold recurrence squares the running product at every step, so
//! the exact numerators roughly double in digit count per rank: c_28
//! already has about 4 * 10^4 digits and c_64 would need around 10^10.
//! Materialized tables are therefore capped at [`MAX_TABLE_RANK`];
//! [`subset_counts`] alone stays available up to the parameter cap.

use crate::error::{Error, Result};
use crate::params::MAX_RANK;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Smallest rank for which a threshold sequence exists (`m + 1 >= 2`).
pub const MIN_RANK: usize = 2;

/// Largest rank with a materialized exact table; beyond it the thresholds
/// stop being representable at desk scale.
pub const MAX_TABLE_RANK: usize = 30;

/// Subset counts `r_0..r_m` with `r_j = C(n, j)`, `m = floor(n/2)`.
///
/// Computed by the multiplicative recurrence
/// `r_j = r_{j-1} (n - j + 1) / j`; tests cross-check against an
/// independent Pascal triangle and `num_integer::binomial`.
pub fn subset_counts(n: usize) -> Result<Vec<BigInt>> {
    if n < 1 || n > MAX_RANK {
        return Err(Error::RankOutOfRange {
            n,
            min: 1,
            max: MAX_RANK,
        });
    }
    let m = n / 2;
    let mut r = Vec::with_capacity(m + 1);
    r.push(BigInt::one());
    for j in 1..=m {
        let prev: &BigInt = &r[j - 1];
        let next = prev * BigInt::from(n - j + 1) / BigInt::from(j);
        r.push(next);
    }
    Ok(r)
}

/// Threshold sequence `R_1..R_{m+1}` from the recurrence
/// `R_j = (prod_{i<j} R_i) / r_{j-1}` with `r_0 = 1`, so `R_1 = 1`,
/// `R_2 = 1/r_1`, `R_3 = 1/(r_1 r_2)`, and so on.
pub fn threshold_sequence(n: usize) -> Result<Vec<BigRational>> {
    if n < MIN_RANK || n > MAX_TABLE_RANK {
        return Err(Error::RankOutOfRange {
            n,
            min: MIN_RANK,
            max: MAX_TABLE_RANK,
        });
    }
    let r = subset_counts(n)?;
    let m = n / 2;
    let mut thresholds: Vec<BigRational> = Vec::with_capacity(m + 1);
    let mut product = BigRational::one();
    for j in 1..=(m + 1) {
        let rj = BigRational::new(product.numer().clone(), product.denom().clone())
            / BigRational::from_integer(r[j - 1].clone());
        product *= &rj;
        thresholds.push(rj);
    }
    Ok(thresholds)
}

/// The leading constant `c_n = R_{m+1}^{-2}`, exact.
pub fn leading_constant(n: usize) -> Result<BigRational> {
    let thresholds = threshold_sequence(n)?;
    let last = thresholds.last().expect("m + 1 >= 2");
    Ok(last.recip() * last.recip())
}

/// The full constant table for a fixed rank.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantTable {
    n: usize,
    m: usize,
    r: Vec<BigInt>,
    thresholds: Vec<BigRational>,
    c_n: BigRational,
}

impl ConstantTable {
    pub fn new(n: usize) -> Result<Self> {
        let r = subset_counts(n)?;
        let thresholds = threshold_sequence(n)?;
        let c_n = leading_constant(n)?;
        let table = Self {
            n,
            m: n / 2,
            r,
            thresholds,
            c_n,
        };
        debug_assert!(table.check_invariants());
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `r_0..r_m`.
    pub fn subset_counts(&self) -> &[BigInt] {
        &self.r
    }

    /// `R_1..R_{m+1}`; `threshold(j)` is `R_j` for `1 <= j <= m+1`.
    pub fn thresholds(&self) -> &[BigRational] {
        &self.thresholds
    }

    pub fn threshold(&self, j: usize) -> &BigRational {
        &self.thresholds[j - 1]
    }

    pub fn c_n(&self) -> &BigRational {
        &self.c_n
    }

    /// `R_j` as a float; positive underflow to 0.0 only far beyond the
    /// ranks any floating check uses.
    pub fn threshold_f64(&self, j: usize) -> f64 {
        self.threshold(j).to_f64().unwrap_or(0.0)
    }

    pub fn c_n_f64(&self) -> f64 {
        self.c_n.to_f64().unwrap_or(f64::INFINITY)
    }

    fn check_invariants(&self) -> bool {
        let one = BigRational::one();
        if self.thresholds[0] != one {
            return false;
        }
        for w in self.thresholds.windows(2) {
            if w[0] <= w[1] {
                return false;
            }
        }
        self.thresholds.iter().all(|t| t.is_positive() && *t <= one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Independent Pascal-triangle binomials.
    fn pascal_row(n: usize) -> Vec<BigInt> {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one()];
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigInt::one());
            row = next;
        }
        row
    }

    #[test]
    fn subset_count_examples() {
        let as_u64 = |v: Vec<BigInt>| -> Vec<u64> {
            v.into_iter().map(|x| x.to_u64().unwrap()).collect()
        };
        assert_eq!(as_u64(subset_counts(4).unwrap()), vec![1, 4, 6]);
        assert_eq!(as_u64(subset_counts(2).unwrap()), vec![1, 2]);
        assert_eq!(as_u64(subset_counts(8).unwrap()), vec![1, 8, 28, 56, 70]);
        assert_eq!(as_u64(subset_counts(1).unwrap()), vec![1]);
    }

    #[test]
    fn subset_counts_match_independent_binomials() {
        for n in 1..=MAX_RANK {
            let ours = subset_counts(n).unwrap();
            let row = pascal_row(n);
            for (j, r) in ours.iter().enumerate() {
                assert_eq!(*r, row[j], "pascal mismatch at n={n} j={j}");
                assert_eq!(
                    *r,
                    binomial(BigInt::from(n), BigInt::from(j)),
                    "binomial mismatch at n={n} j={j}"
                );
            }
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(
            threshold_sequence(4).unwrap(),
            vec![rat(1, 1), rat(1, 4), rat(1, 24)]
        );
        assert_eq!(threshold_sequence(2).unwrap(), vec![rat(1, 1), rat(1, 2)]);
        assert_eq!(
            threshold_sequence(5).unwrap(),
            vec![rat(1, 1), rat(1, 5), rat(1, 50)]
        );
        assert!(threshold_sequence(1).is_err());
    }

    #[test]
    fn threshold_recurrence_hand_rolled() {
        // R_j = (prod_{i<j} R_i) / r_{j-1}, accumulated by hand.
        for n in 2..=MAX_TABLE_RANK {
            let r = subset_counts(n).unwrap();
            let got = threshold_sequence(n).unwrap();
            let mut acc = BigRational::one();
            for (idx, expected) in got.iter().enumerate() {
                let hand = acc.clone() / BigRational::from_integer(r[idx].clone());
                assert_eq!(*expected, hand, "recurrence mismatch at n={n} j={}", idx + 1);
                acc *= expected;
            }
        }
    }

    #[test]
    fn leading_constant_examples() {
        assert_eq!(leading_constant(2).unwrap(), rat(4, 1));
        assert_eq!(leading_constant(3).unwrap(), rat(9, 1));
        assert_eq!(leading_constant(4).unwrap(), rat(576, 1));
        assert_eq!(leading_constant(5).unwrap(), rat(2500, 1));
        assert_eq!(leading_constant(6).unwrap(), rat(10800 * 10800, 1));
    }

    #[test]
    fn thresholds_strictly_decreasing_up_to_max_rank() {
        for n in 2..=MAX_TABLE_RANK {
            let t = threshold_sequence(n).unwrap();
            assert_eq!(t[0], BigRational::one());
            for w in t.windows(2) {
                assert!(w[0] > w[1], "thresholds not strictly decreasing at n={n}");
            }
            assert!(t.iter().all(|x| x.is_positive()));
            for x in &t[1..] {
                assert!(*x < BigRational::one());
            }
        }
    }

    #[test]
    fn defining_recurrence_exact() {
        // R_{j+1} * r_j = prod_{i<=j} R_i for every j.
        for n in 2..=MAX_TABLE_RANK {
            let r = subset_counts(n).unwrap();
            let t = threshold_sequence(n).unwrap();
            let mut prefix = BigRational::one();
            for j in 1..t.len() {
                prefix *= &t[j - 1];
                let lhs = t[j].clone() * BigRational::from_integer(r[j].clone());
                assert_eq!(lhs, prefix, "defining recurrence fails at n={n} j={j}");
            }
        }
    }

    #[test]
    fn leading_constant_nondecreasing() {
        let mut prev = leading_constant(2).unwrap();
        for n in 3..=MAX_TABLE_RANK {
            let c = leading_constant(n).unwrap();
            assert!(c >= prev, "c_n decreased at n={n}");
            prev = c;
        }
    }

    #[test]
    fn table_accessors() {
        let t = ConstantTable::new(4).unwrap();
        assert_eq!(t.n(), 4);
        assert_eq!(t.m(), 2);
        assert_eq!(t.threshold(1), &BigRational::one());
        assert_eq!(t.threshold(3), &rat(1, 24));
        assert_eq!(t.c_n(), &rat(576, 1));
        assert!((t.c_n_f64() - 576.0).abs() < 1e-12);
        assert!(ConstantTable::new(MAX_TABLE_RANK + 1).is_err());
        assert!(ConstantTable::new(1).is_err());
    }

    #[test]
    fn rational_display_format() {
        // The CLI serializes rationals with this Display; pin the format.
        assert_eq!(rat(1, 24).to_string(), "1/24");
        assert_eq!(rat(576, 1).to_string(), "576");
    }
}
