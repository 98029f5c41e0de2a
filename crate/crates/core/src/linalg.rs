//! Dense complex operators on the product basis of a spin pair.

use std::ops::{Add, Mul, Sub};

use nalgebra::{Complex, DMatrix, SymmetricEigen};

pub type C64 = Complex<f64>;

/// A square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator(DMatrix<C64>);

/// Eigen-decomposition of a Hermitian operator, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Columns are normalized eigenvectors, in the order of `values`.
    pub vectors: DMatrix<C64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_matrix(m: DMatrix<C64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "operator must be square");
        Self(m)
    }

    pub fn from_real(m: &DMatrix<f64>) -> Self {
        Self::from_matrix(m.map(|x| C64::new(x, 0.0)))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = DMatrix::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.0[(row, col)] = value;
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// `tr[self · other]` without forming the product.
    pub fn trace_product(&self, other: &DenseOperator) -> C64 {
        let n = self.dim();
        assert_eq!(n, other.dim());
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.0[(i, k)] * other.0[(k, i)];
            }
        }
        acc
    }

    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0[(i, i)].re).collect()
    }

    pub fn commutator(&self, other: &DenseOperator) -> Self {
        Self(&self.0 * &other.0 - &other.0 * &self.0)
    }

    pub fn kron(&self, other: &DenseOperator) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
    }

    /// Max-abs distance to another operator of the same dimension.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).norm()))
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn powi(&self, n: usize) -> Self {
        let mut out = Self::identity(self.dim());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Diagonalizes the Hermitian part of the operator.
    pub fn hermitian_eigen(&self) -> HermitianEigen {
        let sym = (&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(sym);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(self.dim(), order.len(), |r, c| {
            eig.eigenvectors[(r, order[c])]
        });
        HermitianEigen { values, vectors }
    }

    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.hermitian_eigen().values
    }
}

impl Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(&self.0 + &rhs.0)
    }
}

impl Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(&self.0 - &rhs.0)
    }
}

impl Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(&self.0 * &rhs.0)
    }
}

/// Real eigen-decomposition for symmetric matrices, eigenvalues ascending.
pub(crate) fn symmetric_eigen_real(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_product_matches_product_trace() {
        let a = DenseOperator::from_matrix(DMatrix::from_fn(3, 3, |i, j| {
            C64::new(i as f64 + 0.5, j as f64 - 1.0)
        }));
        let b = DenseOperator::from_matrix(DMatrix::from_fn(3, 3, |i, j| {
            C64::new((i * j) as f64, 1.0 / (1.0 + i as f64))
        }));
        let direct = (&a * &b).trace();
        assert!((direct - a.trace_product(&b)).norm() < 1e-13);
    }

    #[test]
    fn eigenvalues_come_sorted() {
        let op = DenseOperator::from_diagonal(&[3.0, -1.0, 2.0]);
        let eig = op.hermitian_eigen();
        assert_eq!(eig.values, vec![-1.0, 2.0, 3.0]);
        // eigenvector of -1 sits on basis vector 1
        assert!((eig.vectors[(1, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn kron_dimensions() {
        let a = DenseOperator::identity(2);
        let b = DenseOperator::identity(3);
        assert_eq!(a.kron(&b).dim(), 6);
        assert_eq!(a.kron(&b), DenseOperator::identity(6));
    }
}
