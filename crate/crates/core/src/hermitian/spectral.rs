//! Spectral matrix functions: base-2 logarithm and exponential, fractional
//! powers, and the finite-n Lie-Trotter product.

use super::eigen::{herm_eig, HermitianEigen};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Regularized base-2 logarithm of a PSD operator.
#[derive(Clone, Debug)]
pub struct MatrixLog<T> {
    /// Hermitian `log₂ m`, with structural-zero directions mapped to `log₂ eps`.
    pub log: ComplexMatrix<T>,
    /// Projector onto eigenvectors with eigenvalue `≥ eps`.
    pub support: ComplexMatrix<T>,
    pub rank: usize,
    pub eigen: HermitianEigen<T>,
}

/// `f(m) = V f(Λ) V†` for Hermitian `m`.
pub fn spectral_map<T: Real>(
    m: &ComplexMatrix<T>,
    tol: T,
    f: impl Fn(T) -> T,
) -> Result<ComplexMatrix<T>> {
    Ok(herm_eig(m, tol)?.reconstruct_with(f))
}

/// Base-2 logarithm of a Hermitian PSD operator.
///
/// Eigenvalues below `eps` are structural zeros: they map to `log₂ eps` and
/// are excluded from the returned support projector. Eigenvalues below
/// `−HERMITIAN_TOL` are rejected.
pub fn matrix_log2<T: Real>(m: &ComplexMatrix<T>, eps: T) -> Result<MatrixLog<T>> {
    let eigen = herm_eig(m, T::hermitian_tol())?;
    let lowest = eigen.min_eigenvalue();
    if lowest < -T::hermitian_tol() {
        return Err(Error::NegativeEigenvalue(lowest.as_f64()));
    }
    let floor = eps.log2();
    let log = eigen.reconstruct_with(|l| if l >= eps { l.log2() } else { floor });
    let support = eigen.projector(|l| l >= eps);
    let rank = eigen.eigenvalues.iter().filter(|&&l| l >= eps).count();
    Ok(MatrixLog {
        log,
        support,
        rank,
        eigen,
    })
}

/// `2^m` for Hermitian `m`; the result is Hermitian positive-definite.
pub fn matrix_exp2<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    spectral_map(m, T::hermitian_tol(), |l| l.exp2())
}

/// `m^p` for Hermitian PSD `m`. Zero eigenvalues stay zero for `p > 0`;
/// for `p < 0` the power acts as a pseudo-inverse on the support.
pub fn fractional_power<T: Real>(m: &ComplexMatrix<T>, p: T, eps: T) -> Result<ComplexMatrix<T>> {
    let eigen = herm_eig(m, T::hermitian_tol())?;
    let lowest = eigen.min_eigenvalue();
    if lowest < -T::hermitian_tol() {
        return Err(Error::NegativeEigenvalue(lowest.as_f64()));
    }
    Ok(eigen.reconstruct_with(|l| if l >= eps { l.powf(p) } else { T::zero() }))
}

/// `[a^{1/n} b^{−1/n}]^n`.
///
/// `a` must be PSD and `b` positive-definite on the support of `a`; the
/// weight of `a` outside the support of `b` must not exceed the Hermitian
/// tolerance. Converges to `2^{log₂ a − log₂ b}` as `n → ∞`.
pub fn lie_trotter_product<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    n: u64,
) -> Result<ComplexMatrix<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "Trotter step count must be positive".into(),
        ));
    }
    let dim = a.ensure_square()?;
    if b.rows() != dim || !b.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Trotter factors must share a dimension ({}x{} vs {}x{})",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let eps = T::support_eps();
    let b_eigen = herm_eig(b, T::hermitian_tol())?;
    if b_eigen.min_eigenvalue() < -T::hermitian_tol() {
        return Err(Error::NegativeEigenvalue(b_eigen.min_eigenvalue().as_f64()));
    }
    let outside_b = b_eigen.projector(|l| l < eps);
    let leaked = a.trace_product(&outside_b).re.abs();
    if leaked > T::hermitian_tol() {
        return Err(Error::SingularOnSupport(leaked.as_f64()));
    }
    let inv_n = T::one() / T::from_u64(n).expect("step count representable");
    let a_root = fractional_power(a, inv_n, eps)?;
    let b_inv_root =
        b_eigen.reconstruct_with(|l| if l >= eps { l.powf(-inv_n) } else { T::zero() });
    a_root.matmul(&b_inv_root)?.powi(n)
}

/// Closed-form limit `2^{log₂ a − log₂ b}` of [`lie_trotter_product`] for
/// full-rank inputs.
pub fn trotter_limit<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    let eps = T::support_eps();
    let la = matrix_log2(a, eps)?;
    let lb = matrix_log2(b, eps)?;
    matrix_exp2(&(&la.log - &lb.log))
}
