//! Dense operators on a truncated basis, with their shift bandwidth tracked
//! so relation checks know which indices truncation has corrupted.

use nalgebra::{ComplexField, DMatrix, Scalar};

/// A square matrix of an operator in a truncated basis together with its
/// band: the largest |i − j| over nonzero entries. Entries outside the band
/// vanish by construction (the band is scanned from the matrix, never
/// declared by hand).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator<T: Scalar> {
    dim: usize,
    band: usize,
    matrix: DMatrix<T>,
}

pub type Op = TruncatedOperator<f64>;
pub type ComplexOp = TruncatedOperator<nalgebra::Complex<f64>>;

impl<T: ComplexField<RealField = f64>> TruncatedOperator<T> {
    pub fn from_matrix(matrix: DMatrix<T>) -> Self {
        assert_eq!(matrix.nrows(), matrix.ncols(), "operator matrix must be square");
        let dim = matrix.nrows();
        let mut band = 0;
        for i in 0..dim {
            for j in 0..dim {
                if matrix[(i, j)].clone().modulus() != 0.0 {
                    band = band.max(i.abs_diff(j));
                }
            }
        }
        TruncatedOperator { dim, band, matrix }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> T) -> Self {
        Self::from_matrix(DMatrix::from_fn(dim, dim, f))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_matrix(DMatrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<T> {
        self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> T {
        self.matrix[(i, j)].clone()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        // Products with a diagonal factor are row/column scalings.
        if rhs.band == 0 {
            let mut m = self.matrix.clone();
            for j in 0..self.dim {
                let s = rhs.matrix[(j, j)].clone();
                for i in 0..self.dim {
                    m[(i, j)] *= s.clone();
                }
            }
            return Self::from_matrix(m);
        }
        if self.band == 0 {
            let mut m = rhs.matrix.clone();
            for i in 0..self.dim {
                let s = self.matrix[(i, i)].clone();
                for j in 0..self.dim {
                    m[(i, j)] *= s.clone();
                }
            }
            return Self::from_matrix(m);
        }
        Self::from_matrix(&self.matrix * &rhs.matrix)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Self::from_matrix(&self.matrix + &rhs.matrix)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Self::from_matrix(&self.matrix - &rhs.matrix)
    }

    pub fn scaled(&self, c: T) -> Self {
        Self::from_matrix(self.matrix.map(|v| v * c.clone()))
    }

    /// self + c·1.
    pub fn plus_identity(&self, c: T) -> Self {
        let mut m = self.matrix.clone();
        for i in 0..self.dim {
            m[(i, i)] += c.clone();
        }
        Self::from_matrix(m)
    }

    /// [self, rhs]
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// {self, rhs}
    pub fn anticommutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).add(&rhs.mul(self))
    }

    /// Largest entry modulus over the whole matrix.
    pub fn max_abs(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max(self.matrix[(i, j)].clone().modulus());
            }
        }
        worst
    }

    /// Largest entry modulus with both indices at least `margin` away from
    /// the truncation boundary, together with its location.
    pub fn interior_max_abs(&self, margin: usize) -> (f64, (usize, usize)) {
        let mut worst = 0.0f64;
        let mut at = (0, 0);
        if 2 * margin >= self.dim {
            return (0.0, at);
        }
        for i in margin..self.dim - margin {
            for j in margin..self.dim - margin {
                let v = self.matrix[(i, j)].clone().modulus();
                if v > worst {
                    worst = v;
                    at = (i, j);
                }
            }
        }
        (worst, at)
    }
}

impl Op {
    /// Promote a real operator to a complex one.
    pub fn to_complex(&self) -> ComplexOp {
        ComplexOp::from_matrix(self.matrix.map(|v| nalgebra::Complex::new(v, 0.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_is_scanned() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 2.0, 1.0, 0.0, 0.0, 2.0, 1.0]);
        let op = Op::from_matrix(m);
        assert_eq!(op.band(), 1);
        assert_eq!(Op::identity(4).band(), 0);
        assert_eq!(Op::zeros(4).band(), 0);
    }

    #[test]
    fn commutator_of_diagonals_vanishes() {
        let a = Op::from_fn(5, |i, j| if i == j { i as f64 } else { 0.0 });
        let b = Op::from_fn(5, |i, j| if i == j { (i * i) as f64 } else { 0.0 });
        assert_eq!(a.commutator(&b).max_abs(), 0.0);
    }

    #[test]
    fn interior_window_excludes_boundary() {
        let mut m = DMatrix::zeros(6, 6);
        m[(0, 0)] = 100.0;
        m[(5, 5)] = 100.0;
        m[(3, 3)] = 1.0;
        let op = Op::from_matrix(m);
        let (worst, at) = op.interior_max_abs(1);
        assert_eq!(worst, 1.0);
        assert_eq!(at, (3, 3));
        assert_eq!(op.max_abs(), 100.0);
    }
}
