//! Seeded sampling of states, unitaries and Hermitian matrices.
//!
//! Every sweep derives one ChaCha stream per trial from `(seed, index)`, so
//! results do not depend on how trials are split across workers.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::entropy::{DensityMatrix, StateVector};
use crate::error::Result;
use crate::hermitian::{ComplexMatrix, HilbertFactorization};
use crate::scalar::Real;

/// Independent RNG stream for trial `index` of a seeded sweep.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard complex Gaussian.
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

/// Uniformly distributed (Haar) pure state.
pub fn random_state<T: Real, R: Rng + ?Sized>(
    factorization: HilbertFactorization,
    rng: &mut R,
) -> Result<StateVector<T>> {
    let amps = (0..factorization.total())
        .map(|_| complex_gaussian(rng))
        .collect();
    StateVector::normalized(amps, factorization)
}

/// Mixed state from the induced measure: a Haar pure state on the system
/// and an equally sized ancilla, with the ancilla traced out.
pub fn random_density<T: Real, R: Rng + ?Sized>(
    factorization: HilbertFactorization,
    rng: &mut R,
) -> Result<DensityMatrix<T>> {
    let n = factorization.total();
    let purified = random_state::<T, _>(HilbertFactorization::new(vec![n, n])?, rng)?;
    let m = purified.reduced_matrix(&[0])?;
    DensityMatrix::new(m, factorization)
}

/// Haar-random unitary via Gram-Schmidt on a complex Ginibre matrix.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix<T> {
    let mut cols: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex<T>> = (0..n).map(|_| complex_gaussian(rng)).collect();
        // two passes keep the basis orthonormal to working precision
        for _ in 0..2 {
            for u in &cols {
                let proj: Complex<T> = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= proj * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm > T::lit(1e-6) {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Hermitian matrix with complex Gaussian entries.
pub fn random_hermitian<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix<T> {
    let g = ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian::<T, _>(rng));
    g.hermitize()
}

/// Flat Dirichlet(1, …, 1) weights.
pub fn dirichlet_weights<T: Real, R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<T> {
    let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| T::lit(x / total)).collect()
}
