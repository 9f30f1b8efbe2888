//! Small dense linear algebra: cyclic Jacobi eigenvalues for symmetric
//! matrices and an LU determinant. Matrices are row-major `Vec<Vec<f64>>`.

use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted in
/// descending order.
///
/// Only the upper triangle is read. Converges quadratically once the
/// off-diagonal mass is small; `MAX_SWEEPS` is far above what n <= 64 needs.
pub fn symmetric_eigenvalues(m: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| if j >= i { m[i][j] } else { m[j][i] }).collect()).collect();
    if n <= 1 {
        return Ok(a.iter().enumerate().map(|(i, r)| r[i]).collect());
    }

    let scale: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let target = f64::EPSILON * f64::EPSILON * scale.max(f64::MIN_POSITIVE) * scale;

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    if !converged {
        let off: f64 = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        // Stagnation at rounding level is convergence for our purposes.
        if off > 1e-24 * scale * scale {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Determinant by LU decomposition with partial pivoting.
pub fn determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap_or(col);
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for row in (col + 1)..n {
            let f = a[row][col] / p;
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
    }
    det
}
