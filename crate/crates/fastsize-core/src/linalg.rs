//! Minimal dense symmetric positive-definite solver for the regression
//! module. Databases are tiny, so a plain O(n³) Cholesky is all we need.

use alloc::vec;
use alloc::vec::Vec;

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
#[derive(Debug, Clone)]
pub(crate) struct Cholesky {
    factor: Vec<f64>,
    size: usize,
}

impl Cholesky {
    /// Factor a symmetric matrix given in row-major order. Returns `None`
    /// when the matrix is not positive definite.
    pub(crate) fn factor(matrix: &[f64], size: usize) -> Option<Cholesky> {
        debug_assert_eq!(matrix.len(), size * size);
        let mut factor = vec![0.0; size * size];
        for row in 0..size {
            for col in 0..=row {
                let mut sum = matrix[row * size + col];
                for k in 0..col {
                    sum -= factor[row * size + k] * factor[col * size + k];
                }
                if row == col {
                    if !(sum > 0.0) || !sum.is_finite() {
                        return None;
                    }
                    factor[row * size + col] = libm::sqrt(sum);
                } else {
                    factor[row * size + col] = sum / factor[col * size + col];
                }
            }
        }
        Some(Cholesky { factor, size })
    }

    /// Solve A·x = b via forward then backward substitution.
    pub(crate) fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        debug_assert_eq!(rhs.len(), self.size);
        let mut x = self.forward(rhs);
        // L^T x = y
        for row in (0..self.size).rev() {
            let mut sum = x[row];
            for k in row + 1..self.size {
                sum -= self.factor[k * self.size + row] * x[k];
            }
            x[row] = sum / self.factor[row * self.size + row];
        }
        x
    }

    /// Smallest and largest diagonal entries of L; their ratio collapses for
    /// rank-deficient systems that only factored thanks to rounding noise.
    pub(crate) fn diagonal_range(&self) -> (f64, f64) {
        let mut low = f64::INFINITY;
        let mut high = 0.0f64;
        for row in 0..self.size {
            let pivot = self.factor[row * self.size + row];
            low = low.min(pivot);
            high = high.max(pivot);
        }
        (low, high)
    }

    /// Solve L·y = b only. `‖y‖²` is then `bᵀA⁻¹b`, which the GP posterior
    /// variance needs.
    pub(crate) fn forward(&self, rhs: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.size];
        for row in 0..self.size {
            let mut sum = rhs[row];
            for k in 0..row {
                sum -= self.factor[row * self.size + k] * y[k];
            }
            y[row] = sum / self.factor[row * self.size + row];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_and_solves_a_known_system() {
        // A = [[4, 12, -16], [12, 37, -43], [-16, -43, 98]] has L = [[2],[6,1],[-8,5,3]].
        let a = [4.0, 12.0, -16.0, 12.0, 37.0, -43.0, -16.0, -43.0, 98.0];
        let chol = Cholesky::factor(&a, 3).unwrap();
        assert!((chol.factor[0] - 2.0).abs() < 1e-12);
        assert!((chol.factor[3] - 6.0).abs() < 1e-12);
        assert!((chol.factor[8] - 3.0).abs() < 1e-12);

        // x = [1, 2, 3]; b = A x.
        let b = [4.0 + 24.0 - 48.0, 12.0 + 74.0 - 129.0, -16.0 - 86.0 + 294.0];
        let x = chol.solve(&b);
        for (got, want) in x.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn rejects_indefinite_matrices() {
        let a = [1.0, 2.0, 2.0, 1.0];
        assert!(Cholesky::factor(&a, 2).is_none());
    }
}
