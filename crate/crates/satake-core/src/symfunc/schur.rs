//! Schur function evaluation.
//!
//! Two independent algorithms are exposed: the Jacobi-Trudi determinant in
//! complete homogeneous polynomials (the default; stable under repeated and
//! zero values, which the Weyl quotient formula is not), and a direct
//! semistandard-tableau enumeration used as a combinatorial cross-check for
//! small weights.

use super::Partition;
use crate::error::{Error, Result};
use crate::scalar::Coord;
use num_complex::Complex;
use num_traits::{One, Zero};

/// Complete homogeneous symmetric polynomials `h_0..h_max_deg` of `values`.
///
/// One pass per variable multiplies the truncated series by
/// `1 / (1 - x t)`; appended zero values leave every `h_k` unchanged.
pub fn complete_homogeneous<T: Coord>(
    values: &[Complex<T>],
    max_deg: usize,
) -> Vec<Complex<T>> {
    let mut h = vec![Complex::<T>::zero(); max_deg + 1];
    h[0] = Complex::one();
    for x in values {
        for k in 1..=max_deg {
            let add = h[k - 1].clone() * x.clone();
            h[k] = h[k].clone() + add;
        }
    }
    h
}

/// Elementary symmetric polynomials `e_0..e_max_deg` of `values`, by
/// coefficient extraction from the product `prod_i (1 + x_i t)`.
pub fn elementary_symmetric<T: Coord>(
    values: &[Complex<T>],
    max_deg: usize,
) -> Vec<Complex<T>> {
    let mut e = vec![Complex::<T>::zero(); max_deg + 1];
    e[0] = Complex::one();
    for (idx, x) in values.iter().enumerate() {
        let top = (idx + 1).min(max_deg);
        for k in (1..=top).rev() {
            let add = e[k - 1].clone() * x.clone();
            e[k] = e[k].clone() + add;
        }
    }
    e
}

/// Determinant by Gaussian elimination with partial pivoting on `norm_sqr`.
/// Exact over rational coordinates; the pivot choice only affects floating
/// accuracy.
fn determinant<T: Coord>(mut a: Vec<Vec<Complex<T>>>) -> Complex<T> {
    let n = a.len();
    let mut det = Complex::<T>::one();
    let mut negate = false;
    for col in 0..n {
        let mut pivot = col;
        let mut best = a[col][col].norm_sqr();
        for (row, row_vals) in a.iter().enumerate().skip(col + 1) {
            let cand = row_vals[col].norm_sqr();
            if cand > best {
                best = cand;
                pivot = row;
            }
        }
        if a[pivot][col].is_zero() {
            return Complex::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            negate = !negate;
        }
        let lead = a[col][col].clone();
        det = det * lead.clone();
        for row in (col + 1)..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone() / lead.clone();
            for k in col..n {
                let sub = factor.clone() * a[col][k].clone();
                a[row][k] = a[row][k].clone() - sub;
            }
        }
    }
    if negate {
        -det
    } else {
        det
    }
}

/// Jacobi-Trudi evaluation without the length precondition. When the shape
/// is longer than the number of variables the determinant vanishes, which is
/// exactly the padded value.
pub(crate) fn eval_jacobi_trudi_unchecked<T: Coord>(
    shape: &Partition,
    values: &[Complex<T>],
) -> Complex<T> {
    let ell = shape.len();
    if ell == 0 {
        return Complex::one();
    }
    let parts = shape.parts();
    let max_deg = parts[0] as usize + ell - 1;
    let h = complete_homogeneous(values, max_deg);
    let zero = Complex::<T>::zero();
    let matrix: Vec<Vec<Complex<T>>> = (0..ell)
        .map(|i| {
            (0..ell)
                .map(|j| {
                    let deg = parts[i] as i64 - i as i64 + j as i64;
                    if deg < 0 {
                        zero.clone()
                    } else {
                        h[deg as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(matrix)
}

/// `s_shape(values)` via the Jacobi-Trudi determinant
/// `det(h_{lambda_i - i + j})`.
pub fn eval_jacobi_trudi<T: Coord>(
    shape: &Partition,
    values: &[Complex<T>],
) -> Result<Complex<T>> {
    if shape.len() > values.len() {
        return Err(Error::PartitionTooLong {
            len: shape.len(),
            vars: values.len(),
        });
    }
    Ok(eval_jacobi_trudi_unchecked(shape, values))
}

/// `s_shape(values)` by summing monomials over all semistandard tableaux of
/// the shape with entries in `1..=values.len()`: rows weakly increase,
/// columns strictly increase. Independent of the determinant route; meant
/// for small weights.
pub fn eval_tableaux<T: Coord>(shape: &Partition, values: &[Complex<T>]) -> Result<Complex<T>> {
    let ell = shape.len();
    let n = values.len();
    if ell > n {
        return Err(Error::PartitionTooLong { len: ell, vars: n });
    }
    if ell == 0 {
        return Ok(Complex::one());
    }
    let row_len: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    // Cells in reading order with (row, col) coordinates.
    let mut cells = Vec::new();
    for (r, &len) in row_len.iter().enumerate() {
        for c in 0..len {
            cells.push((r, c));
        }
    }
    let mut grid: Vec<Vec<usize>> = row_len.iter().map(|&len| vec![0; len]).collect();
    let mut total = Complex::<T>::zero();

    fn fill<T: Coord>(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut [Vec<usize>],
        values: &[Complex<T>],
        acc: Complex<T>,
        total: &mut Complex<T>,
    ) {
        if idx == cells.len() {
            *total = total.clone() + acc;
            return;
        }
        let (r, c) = cells[idx];
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(grid[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(grid[r - 1][c] + 1);
        }
        for entry in lo..=values.len() {
            grid[r][c] = entry;
            let next = acc.clone() * values[entry - 1].clone();
            fill(idx + 1, cells, grid, values, next, total);
        }
        grid[r][c] = 0;
    }

    fill(0, &cells, &mut grid, values, Complex::one(), &mut total);
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::partitions;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type C = Complex<f64>;
    type CQ = Complex<BigRational>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn cq(re: (i64, i64), im: (i64, i64)) -> CQ {
        Complex::new(q(re.0, re.1), q(im.0, im.1))
    }

    fn shape(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn homogeneous_and_elementary_basics() {
        let vals = [c(2.0, 0.0), c(0.5, 0.0)];
        let h = complete_homogeneous(&vals, 3);
        assert_eq!(h[0], C::one());
        assert!((h[1] - c(2.5, 0.0)).norm() < 1e-14);
        assert!((h[2] - c(5.25, 0.0)).norm() < 1e-14);
        let e = elementary_symmetric(&vals, 2);
        assert!((e[1] - c(2.5, 0.0)).norm() < 1e-14);
        assert!((e[2] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zeros_do_not_change_homogeneous() {
        let vals = [c(1.5, -0.5), c(0.25, 2.0)];
        let padded = [c(1.5, -0.5), c(0.25, 2.0), C::zero(), C::zero()];
        assert_eq!(complete_homogeneous(&vals, 5), complete_homogeneous(&padded, 5));
    }

    #[test]
    fn schur_single_row_and_column() {
        let vals = [c(1.0, 1.0), c(2.0, -0.5)];
        // s_(1) = x + y
        let s1 = eval_jacobi_trudi(&shape(&[1]), &vals).unwrap();
        assert!((s1 - (vals[0] + vals[1])).norm() < 1e-14);
        // s_(1,1) = e_2 = x y
        let s11 = eval_jacobi_trudi(&shape(&[1, 1]), &vals).unwrap();
        assert!((s11 - vals[0] * vals[1]).norm() < 1e-14);
        // s_(1,1)(2, 1/2) = 1
        let s11 = eval_jacobi_trudi(&shape(&[1, 1]), &[c(2.0, 0.0), c(0.5, 0.0)]).unwrap();
        assert!((s11 - C::one()).norm() < 1e-14);
    }

    #[test]
    fn schur_21_is_x2y_plus_xy2() {
        // SSYT of shape (2,1) in two letters: 11/2 and 12/2, so x^2 y + x y^2.
        let vals = [c(0.7, 0.3), c(-1.2, 0.9)];
        let (x, y) = (vals[0], vals[1]);
        let expected = x * x * y + x * y * y;
        let jt = eval_jacobi_trudi(&shape(&[2, 1]), &vals).unwrap();
        let tab = eval_tableaux(&shape(&[2, 1]), &vals).unwrap();
        assert!((jt - expected).norm() < 1e-12);
        assert!((tab - expected).norm() < 1e-12);
    }

    #[test]
    fn length_violation_rejected() {
        let vals = [c(1.0, 0.0)];
        assert!(matches!(
            eval_jacobi_trudi(&shape(&[1, 1]), &vals),
            Err(Error::PartitionTooLong { len: 2, vars: 1 })
        ));
        assert!(eval_tableaux(&shape(&[1, 1]), &vals).is_err());
    }

    #[test]
    fn unchecked_vanishes_beyond_variable_count() {
        let vals = [c(1.3, 0.4)];
        let v = eval_jacobi_trudi_unchecked(&shape(&[1, 1]), &vals);
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn jacobi_trudi_matches_tableaux_exactly() {
        // Exact agreement on rational points for every shape of weight <= 5
        // in up to 4 variables; the acceptance suite extends this to 8.
        let points: Vec<Vec<CQ>> = vec![
            vec![
                cq((3, 2), (0, 1)),
                cq((-2, 3), (1, 4)),
                cq((1, 5), (-1, 2)),
                cq((7, 4), (2, 3)),
            ],
            // repeated and zero coordinates
            vec![
                cq((1, 2), (0, 1)),
                cq((1, 2), (0, 1)),
                cq((0, 1), (0, 1)),
                cq((-1, 1), (0, 1)),
            ],
        ];
        for vals in &points {
            for w in 0..=5u32 {
                for lam in partitions(w, 4) {
                    let jt = eval_jacobi_trudi(&lam, vals).unwrap();
                    let tab = eval_tableaux(&lam, vals).unwrap();
                    assert_eq!(jt, tab, "mismatch at shape {lam} weight {w}");
                }
            }
        }
    }

    #[test]
    fn determinant_handles_zero_pivot() {
        // h_1 = 0 for (1, -1): the naive no-pivot elimination would divide
        // by zero on s_(1,1).
        let vals = [c(1.0, 0.0), c(-1.0, 0.0)];
        let s11 = eval_jacobi_trudi(&shape(&[1, 1]), &vals).unwrap();
        assert!((s11 - c(-1.0, 0.0)).norm() < 1e-14);
    }
}
