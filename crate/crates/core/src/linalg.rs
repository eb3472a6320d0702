//! Small dense solvers: complex Gaussian elimination for per-bin
//! beamforming systems and a real Cholesky factorization for the MINT
//! normal equations.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub(crate) fn solve_complex(a: &Array2<Complex64>, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    if a.ncols() != n || b.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "solve_complex: matrix {}x{}, rhs {}",
            a.nrows(),
            a.ncols(),
            b.len()
        )));
    }
    let mut m = a.clone();
    let mut x: Vec<Complex64> = b.to_vec();
    let scale: f64 = m.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);

    for col in 0..n {
        let mut pivot = col;
        let mut best = m[(col, col)].norm();
        for row in col + 1..n {
            let v = m[(row, col)].norm();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best < 1e-14 * scale {
            return Err(Error::Singular(format!("pivot {best:.3e} at column {col}")));
        }
        if pivot != col {
            for k in col..n {
                let tmp = m[(col, k)];
                m[(col, k)] = m[(pivot, k)];
                m[(pivot, k)] = tmp;
            }
            x.swap(col, pivot);
        }
        let inv = Complex64::new(1.0, 0.0) / m[(col, col)];
        for row in col + 1..n {
            let factor = m[(row, col)] * inv;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = m[(col, k)];
                m[(row, k)] -= factor * v;
            }
            let rhs = x[col];
            x[row] -= factor * rhs;
        }
    }
    for col in (0..n).rev() {
        let mut acc = x[col];
        for k in col + 1..n {
            acc -= m[(col, k)] * x[k];
        }
        x[col] = acc / m[(col, col)];
    }
    Ok(x)
}

/// Cholesky solve of the symmetric positive-definite system `a x = b`.
/// The lower triangle of `a` is overwritten with the factor.
pub(crate) fn cholesky_solve(a: &mut Array2<f64>, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.nrows();
    if a.ncols() != n || b.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "cholesky_solve: matrix {}x{}, rhs {}",
            a.nrows(),
            a.ncols(),
            b.len()
        )));
    }
    let flat = a.as_slice_mut().expect("contiguous matrix");

    // Row-oriented Cholesky; inner products run over contiguous slices.
    for i in 0..n {
        for j in 0..=i {
            let dot: f64 = flat[i * n..i * n + j]
                .iter()
                .zip(&flat[j * n..j * n + j])
                .map(|(x, y)| x * y)
                .sum();
            let v = flat[i * n + j] - dot;
            if i == j {
                if v <= 0.0 {
                    return Err(Error::Singular(format!(
                        "non-positive-definite at row {i}: {v:.3e}"
                    )));
                }
                flat[i * n + i] = v.sqrt();
            } else {
                flat[i * n + j] = v / flat[j * n + j];
            }
        }
    }

    // Forward: L y = b, then backward: L^T x = y.
    let mut x = b.to_vec();
    for i in 0..n {
        let dot: f64 = flat[i * n..i * n + i]
            .iter()
            .zip(&x[..i])
            .map(|(l, y)| l * y)
            .sum();
        x[i] = (x[i] - dot) / flat[i * n + i];
    }
    for i in (0..n).rev() {
        let mut acc = x[i];
        for k in i + 1..n {
            acc -= flat[k * n + i] * x[k];
        }
        x[i] = acc / flat[i * n + i];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn complex_solve_roundtrip() {
        let a = array![
            [Complex64::new(4.0, 0.0), Complex64::new(1.0, -2.0)],
            [Complex64::new(1.0, 2.0), Complex64::new(6.0, 0.0)],
        ];
        let x_true = [Complex64::new(0.5, -1.5), Complex64::new(-2.0, 0.25)];
        let b: Vec<Complex64> = (0..2)
            .map(|i| a[(i, 0)] * x_true[0] + a[(i, 1)] * x_true[1])
            .collect();
        let x = solve_complex(&a, &b).unwrap();
        for (got, want) in x.iter().zip(&x_true) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn complex_solve_rejects_singular() {
        let a = array![
            [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            [Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)],
        ];
        let b = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!(solve_complex(&a, &b).is_err());
    }

    #[test]
    fn cholesky_solves_spd_system() {
        let mut a = array![[4.0, 2.0, 0.4], [2.0, 5.0, 1.0], [0.4, 1.0, 3.0]];
        let x_true = [1.0, -2.0, 0.5];
        let b: Vec<f64> = (0..3)
            .map(|i| (0..3).map(|j| a[(i, j)] * x_true[j]).sum())
            .collect();
        let x = cholesky_solve(&mut a, &b).unwrap();
        for (got, want) in x.iter().zip(&x_true) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let mut a = array![[1.0, 2.0], [2.0, 1.0]];
        assert!(cholesky_solve(&mut a, &[1.0, 1.0]).is_err());
    }
}
