//! Dense linear algebra used by the kernels and samplers, backed by nalgebra:
//! symmetric/Hermitian eigensolvers, Cholesky factorization, determinants.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

/// Eigen-decomposition A = Q diag(L) Q^T of a real symmetric matrix.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = a.clone().symmetric_eigen();
    (eig.eigenvalues, eig.eigenvectors)
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = a.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Eigenvalues of a complex Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: &DMatrix<Complex<f64>>) -> Vec<f64> {
    let mut v: Vec<f64> = a.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Lower-triangular Cholesky factor of an SPD matrix.
pub fn cholesky_lower(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    a.clone()
        .cholesky()
        .map(|c| c.l())
        .ok_or(Error::SingularMatrix)
}

/// Inverse of an SPD matrix via Cholesky.
pub fn spd_inverse(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    a.clone()
        .cholesky()
        .map(|c| c.inverse())
        .ok_or(Error::SingularMatrix)
}

/// Determinant of a real square matrix (LU).
pub fn determinant(a: &DMatrix<f64>) -> f64 {
    a.clone().lu().determinant()
}

/// Determinant of a complex square matrix (LU).
pub fn determinant_complex(a: &DMatrix<Complex<f64>>) -> Complex<f64> {
    a.clone().lu().determinant()
}
