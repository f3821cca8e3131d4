//! Small dense linear algebra for per-arm ridge regression.

use crate::scalar::Scalar;

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![S::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = S::one();
        }
        Matrix { dim, data }
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            data.extend_from_slice(row);
        }
        Matrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.dim.max(1)).map(<[S]>::to_vec).take(self.dim).collect()
    }

    /// `self += x xᵀ`
    pub fn add_outer(&mut self, x: &[S]) {
        let d = self.dim;
        for i in 0..d {
            let xi = x[i];
            let row = &mut self.data[i * d..(i + 1) * d];
            for (r, &xj) in row.iter_mut().zip(x) {
                *r += xi * xj;
            }
        }
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        let d = self.dim;
        (0..d)
            .map(|i| self.data[i * d..(i + 1) * d].iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `xᵀ M x`
    pub fn quad_form(&self, x: &[S]) -> S {
        let d = self.dim;
        let mut acc = S::zero();
        for i in 0..d {
            let row: S = self.data[i * d..(i + 1) * d].iter().zip(x).map(|(&a, &b)| a * b).sum();
            acc += x[i] * row;
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Lower-triangular Cholesky factor, or `None` if the matrix is not
    /// (numerically) positive definite.
    pub fn cholesky(&self) -> Option<Cholesky<S>> {
        let d = self.dim;
        let mut l = vec![S::zero(); d * d];
        for i in 0..d {
            for j in 0..=i {
                let mut sum = self.get(i, j);
                for k in 0..j {
                    sum -= l[i * d + k] * l[j * d + k];
                }
                if i == j {
                    if !(sum > S::zero()) || !sum.is_finite() {
                        return None;
                    }
                    l[i * d + i] = sum.sqrt();
                } else {
                    l[i * d + j] = sum / l[j * d + j];
                }
            }
        }
        Some(Cholesky { dim: d, lower: l })
    }
}

#[derive(Debug, Clone)]
pub struct Cholesky<S> {
    dim: usize,
    lower: Vec<S>,
}

impl<S: Scalar> Cholesky<S> {
    /// Solves `A x = b`.
    pub fn solve(&self, b: &[S]) -> Vec<S> {
        let d = self.dim;
        let l = &self.lower;
        let mut y = b.to_vec();
        for i in 0..d {
            let mut s = y[i];
            for k in 0..i {
                s -= l[i * d + k] * y[k];
            }
            y[i] = s / l[i * d + i];
        }
        for i in (0..d).rev() {
            let mut s = y[i];
            for k in i + 1..d {
                s -= l[k * d + i] * y[k];
            }
            y[i] = s / l[i * d + i];
        }
        y
    }

    pub fn inverse(&self) -> Matrix<S> {
        let d = self.dim;
        let mut data = vec![S::zero(); d * d];
        let mut unit = vec![S::zero(); d];
        for j in 0..d {
            unit.iter_mut().for_each(|u| *u = S::zero());
            unit[j] = S::one();
            let col = self.solve(&unit);
            for i in 0..d {
                data[i * d + j] = col[i];
            }
        }
        // Symmetrize to remove rounding asymmetry.
        for i in 0..d {
            for j in 0..i {
                let m = (data[i * d + j] + data[j * d + i]) / S::of(2.0);
                data[i * d + j] = m;
                data[j * d + i] = m;
            }
        }
        Matrix { dim: d, data }
    }
}
