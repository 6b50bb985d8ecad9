use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// All eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigensolve(matrix: &DMatrix<f64>) -> Result<Vec<f64>> {
    if !matrix.is_square() {
        return Err(Error::Domain(format!(
            "eigensolve needs a square matrix, got {}x{}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let norm = matrix.amax();
    let asym = (matrix - matrix.transpose()).amax();
    if asym > 1e-12 * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric(asym));
    }
    if matrix.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = SymmetricEigen::new(matrix.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`.
fn sturm_count(diag: &[f64], off_sq: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off_sq[i - 1] / q };
        q = diag[i] - x - coupling;
        if q == 0.0 {
            q = -f64::MIN_POSITIVE * 1e10;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off`, ascending, by Sturm-sequence bisection.
///
/// Brackets of one sign are split at their geometric mean, so eigenvalues of
/// graded matrices are resolved to relative rather than absolute accuracy.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert_eq!(off.len(), n.saturating_sub(1), "off-diagonal length");
    if n == 0 {
        return Vec::new();
    }
    let off_sq: Vec<f64> = off.iter().map(|e| e * e).collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let pad = 1e-300 + 1e-15 * lo.abs().max(hi.abs());
    lo -= pad;
    hi += pad;
    (0..n)
        .map(|j| {
            // smallest x with count(x) > j
            let (mut a, mut b) = (lo, hi);
            for _ in 0..2200 {
                let mid = if a > 0.0 && b > 0.0 {
                    (a * b).sqrt()
                } else if a < 0.0 && b < 0.0 {
                    -(a * b).sqrt()
                } else if a < 0.0 && b > 0.0 {
                    // straddling zero: bisect in magnitude through tiny values
                    let m = 0.5 * (a + b);
                    if m.abs() < 1e-300 {
                        if sturm_count(diag, &off_sq, 0.0) > j {
                            b = 0.0;
                            continue;
                        } else {
                            a = 0.0;
                            continue;
                        }
                    }
                    m
                } else {
                    0.5 * (a + b)
                };
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count(diag, &off_sq, mid) > j {
                    b = mid;
                } else {
                    a = mid;
                }
                if (b - a) <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
                    break;
                }
            }
            if a == 0.0 && b > 0.0 && b < 1e-300 {
                0.0
            } else {
                0.5 * (a + b)
            }
        })
        .collect()
}
