//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `m = V diag(λ) V†` with ascending real eigenvalues.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub eigenvalues: Vec<T>,
    /// Unitary whose columns are the eigenvectors, in eigenvalue order.
    pub eigenvectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// `V diag(f(λ)) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let v = &self.eigenvectors;
        let n = v.rows();
        let mapped: Vec<T> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &w) in mapped.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                if vik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.reconstruct_with(|l| l)
    }

    /// Projector onto the span of eigenvectors whose eigenvalue satisfies `keep`.
    pub fn projector(&self, keep: impl Fn(T) -> bool) -> ComplexMatrix<T> {
        self.reconstruct_with(|l| if keep(l) { T::one() } else { T::zero() })
    }

    pub fn max_eigenvalue(&self) -> T {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigenvalues[0]
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails if `‖m − m†‖_max > tol`. The input is symmetrized before the
/// rotations so the returned spectrum is exactly real. Each eigenvector's
/// first non-negligible component is made real and positive.
pub fn herm_eig<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<HermitianEigen<T>> {
    let n = m.ensure_square()?;
    let defect = m.hermiticity_defect();
    if defect > tol || !defect.is_finite() {
        return Err(Error::NotHermitian {
            defect: defect.as_f64(),
            tol: tol.as_f64(),
        });
    }
    let mut a = m.hermitize();
    let mut v = ComplexMatrix::<T>::identity(n);

    let frob: T = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    let target = T::epsilon() * frob.max(T::min_positive_value());

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        let off: T = off_diagonal_norm(&a);
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[x].partial_cmp(&diag[y]).expect("finite eigenvalues"));

    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    let small = T::lit(1e-8).max(T::epsilon().sqrt());
    for (col, &k) in order.iter().enumerate() {
        let mut vec = v.column_vec(k);
        fix_phase(&mut vec, small);
        for (i, z) in vec.into_iter().enumerate() {
            eigenvectors[(i, col)] = z;
        }
    }
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, ascending.
pub fn herm_eigenvalues<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<Vec<T>> {
    Ok(herm_eig(m, tol)?.eigenvalues)
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn fix_phase<T: Real>(vec: &mut [Complex<T>], small: T) {
    let norm_max = vec
        .iter()
        .map(|z| z.norm())
        .fold(T::zero(), |a, b| a.max(b));
    if let Some(lead) = vec.iter().find(|z| z.norm() > small * norm_max).copied() {
        let phase = lead.conj() / lead.norm();
        for z in vec.iter_mut() {
            *z *= phase;
        }
    }
}

/// Zeroes `a[p][q]` with the unitary `J = diag(1, e^{-iφ}) R(θ)` acting on
/// the `(p, q)` plane, updating `a ← J† a J` and `v ← v J`.
fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= T::min_positive_value() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / r; // e^{iφ}
    let theta = (aqq - app) / (r + r);
    let t = {
        let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
        if theta < T::zero() {
            -t
        } else {
            t
        }
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    // Columns of J in the (p, q) plane.
    let j_pp = Complex::new(c, T::zero());
    let j_pq = Complex::new(s, T::zero());
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}
