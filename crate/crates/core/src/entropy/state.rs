use num_complex::Complex;
use num_traits::Zero;

use crate::error::{DensityViolation, Error, Result};
use crate::hermitian::{
    herm_eig, kron, kron_vec, normalize_subset, partial_trace, ComplexMatrix, HilbertFactorization,
};
use crate::scalar::{shannon_entropy, Real};

/// Hermitian, positive-semidefinite, unit-trace operator over a factored space.
#[derive(Clone, Debug)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
    factorization: HilbertFactorization,
    eigenvalues: Vec<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates with the default tolerance for `T` (1e-10 for `f64`).
    pub fn new(matrix: ComplexMatrix<T>, factorization: HilbertFactorization) -> Result<Self> {
        Self::with_tolerance(matrix, factorization, T::hermitian_tol())
    }

    pub fn with_tolerance(
        matrix: ComplexMatrix<T>,
        factorization: HilbertFactorization,
        tol: T,
    ) -> Result<Self> {
        let n = matrix.ensure_square()?;
        if n != factorization.total() {
            return Err(Error::DimensionMismatch(format!(
                "{n}x{n} matrix does not match factorization {:?}",
                factorization.dims()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol {
            return Err(Error::InvalidDensity(DensityViolation::Hermiticity {
                defect: defect.as_f64(),
            }));
        }
        let trace = matrix.trace();
        if (trace.re - T::one()).abs() > tol || trace.im.abs() > tol {
            return Err(Error::InvalidDensity(DensityViolation::Trace {
                trace: trace.re.as_f64(),
            }));
        }
        let eigenvalues = herm_eig(&matrix, tol)?.eigenvalues;
        if eigenvalues[0] < -tol {
            return Err(Error::InvalidDensity(
                DensityViolation::NegativeEigenvalue {
                    eigenvalue: eigenvalues[0].as_f64(),
                },
            ));
        }
        Ok(Self {
            matrix,
            factorization,
            eigenvalues,
        })
    }

    /// Diagonal (classical) state.
    pub fn diagonal(probabilities: &[T], factorization: HilbertFactorization) -> Result<Self> {
        Self::new(ComplexMatrix::from_diag(probabilities), factorization)
    }

    pub fn maximally_mixed(factorization: HilbertFactorization) -> Self {
        let n = factorization.total();
        let w = T::one() / T::from_usize(n).expect("dimension representable");
        Self {
            matrix: ComplexMatrix::from_diag(&vec![w; n]),
            factorization,
            eigenvalues: vec![w; n],
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn factorization(&self) -> &HilbertFactorization {
        &self.factorization
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.factorization.total()
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> T {
        shannon_entropy(&self.eigenvalues)
    }

    pub fn purity(&self) -> T {
        self.matrix.trace_product(&self.matrix).re
    }

    /// Reduced state on `keep` (ascending factor order).
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        let f = self.factorization.restrict(keep)?;
        let m = partial_trace(&self.matrix, &self.factorization, keep)?;
        Self::new(m, f)
    }

    /// Entropy of the reduced state on `keep`; zero for the empty set.
    pub fn subsystem_entropy(&self, keep: &[usize]) -> Result<T> {
        if normalize_subset(&self.factorization, keep)?.is_empty() {
            return Ok(T::zero());
        }
        Ok(self.reduce(keep)?.entropy())
    }

    /// `self ⊗ other` with concatenated factorization.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let dims = self
            .factorization
            .dims()
            .iter()
            .chain(other.factorization.dims())
            .copied()
            .collect();
        Self::new(
            kron(&self.matrix, &other.matrix),
            HilbertFactorization::new(dims)?,
        )
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        let m = u.matmul(&self.matrix)?.matmul(&u.adjoint())?;
        Self::new(m.hermitize(), self.factorization.clone())
    }

    /// Convex mixture `Σ w_k ρ_k`; all states must share a factorization.
    pub fn mixture(weights: &[T], states: &[Self]) -> Result<Self> {
        let first = states
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        if weights.len() != states.len() {
            return Err(Error::InvalidParameter(
                "weights and states differ in length".into(),
            ));
        }
        let n = first.dim();
        let mut acc = ComplexMatrix::zeros(n, n);
        for (&w, s) in weights.iter().zip(states) {
            if s.factorization != first.factorization {
                return Err(Error::DimensionMismatch(
                    "mixture of different factorizations".into(),
                ));
            }
            acc = &acc + &s.matrix.scale(w);
        }
        Self::new(acc.hermitize(), first.factorization.clone())
    }
}

/// Normalized pure state over a factored space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    amplitudes: Vec<Complex<T>>,
    factorization: HilbertFactorization,
}

impl<T: Real> StateVector<T> {
    /// Fails unless `‖amplitudes‖₂ = 1` within `NORM_TOL`.
    pub fn new(amplitudes: Vec<Complex<T>>, factorization: HilbertFactorization) -> Result<Self> {
        Self::check_len(&amplitudes, &factorization)?;
        let norm = l2_norm(&amplitudes);
        if (norm - T::one()).abs() > T::lit(T::NORM_TOL) {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(Self {
            amplitudes,
            factorization,
        })
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(
        mut amplitudes: Vec<Complex<T>>,
        factorization: HilbertFactorization,
    ) -> Result<Self> {
        Self::check_len(&amplitudes, &factorization)?;
        let norm = l2_norm(&amplitudes);
        if norm <= T::min_positive_value() {
            return Err(Error::NotNormalized(0.0));
        }
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        Ok(Self {
            amplitudes,
            factorization,
        })
    }

    /// Real amplitudes, normalized on construction.
    pub fn from_real(values: &[f64], factorization: HilbertFactorization) -> Result<Self> {
        Self::normalized(
            values
                .iter()
                .map(|&x| Complex::new(T::lit(x), T::zero()))
                .collect(),
            factorization,
        )
    }

    /// Computational basis state `|digits⟩`.
    pub fn basis(factorization: HilbertFactorization, digits: &[usize]) -> Result<Self> {
        if digits.len() != factorization.len()
            || digits
                .iter()
                .zip(factorization.dims())
                .any(|(&d, &n)| d >= n)
        {
            return Err(Error::InvalidParameter(format!(
                "basis digits {digits:?} invalid for {:?}",
                factorization.dims()
            )));
        }
        let mut amps = vec![Complex::zero(); factorization.total()];
        amps[factorization.compose(digits)] = Complex::new(T::one(), T::zero());
        Ok(Self {
            amplitudes: amps,
            factorization,
        })
    }

    /// Tensor product of single- or multi-factor states.
    pub fn product(parts: &[&Self]) -> Result<Self> {
        let dims: Vec<usize> = parts
            .iter()
            .flat_map(|p| p.factorization.dims().iter().copied())
            .collect();
        let slices: Vec<&[Complex<T>]> = parts.iter().map(|p| p.amplitudes.as_slice()).collect();
        Self::normalized(kron_vec(&slices), HilbertFactorization::new(dims)?)
    }

    fn check_len(amplitudes: &[Complex<T>], factorization: &HilbertFactorization) -> Result<()> {
        if amplitudes.len() != factorization.total() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for factorization {:?}",
                amplitudes.len(),
                factorization.dims()
            )));
        }
        Ok(())
    }

    pub(crate) fn from_parts_unchecked(
        amplitudes: Vec<Complex<T>>,
        factorization: HilbertFactorization,
    ) -> Self {
        debug_assert_eq!(amplitudes.len(), factorization.total());
        Self {
            amplitudes,
            factorization,
        }
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn factorization(&self) -> &HilbertFactorization {
        &self.factorization
    }

    pub fn norm(&self) -> T {
        l2_norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    /// Outcome probabilities in the computational basis.
    pub fn probabilities(&self) -> Vec<T> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies a full-space operator.
    pub fn apply(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        if u.cols() != self.amplitudes.len() || u.rows() != u.cols() {
            return Err(Error::DimensionMismatch(
                "operator does not act on this state".into(),
            ));
        }
        Ok(Self {
            amplitudes: u.mul_vec(&self.amplitudes),
            factorization: self.factorization.clone(),
        })
    }

    /// Reduced operator `Tr_{rest} |ψ⟩⟨ψ|` on `keep`, computed from the
    /// amplitudes without forming the full projector.
    pub fn reduced_matrix(&self, keep: &[usize]) -> Result<ComplexMatrix<T>> {
        let keep = normalize_subset(&self.factorization, keep)?;
        let rest = self.factorization.complement(&keep);
        let dims = self.factorization.dims();
        let strides = self.factorization.strides();
        let offsets = |factors: &[usize]| -> Vec<usize> {
            let mut offs = vec![0usize];
            for &k in factors {
                let (dk, sk) = (dims[k], strides[k]);
                offs = offs
                    .iter()
                    .flat_map(|&o| (0..dk).map(move |d| o + d * sk))
                    .collect();
            }
            offs
        };
        let keep_off = offsets(&keep);
        let rest_off = offsets(&rest);
        let dk = keep_off.len();
        let mut out = ComplexMatrix::zeros(dk, dk);
        for (r, &ro) in keep_off.iter().enumerate() {
            for (c, &co) in keep_off.iter().enumerate().skip(r) {
                let v: Complex<T> = rest_off
                    .iter()
                    .map(|&t| self.amplitudes[ro + t] * self.amplitudes[co + t].conj())
                    .sum();
                out[(r, c)] = v;
                out[(c, r)] = v.conj();
            }
        }
        Ok(out)
    }

    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        let f = self.factorization.restrict(keep)?;
        DensityMatrix::new(self.reduced_matrix(keep)?, f)
    }

    /// Entropy of the reduced state on `subset`.
    ///
    /// Uses the Schmidt duality of pure states: the reduced states on a
    /// subset and on its complement share their nonzero spectrum, so the
    /// smaller of the two is diagonalized.
    pub fn subsystem_entropy(&self, subset: &[usize]) -> Result<T> {
        let subset = normalize_subset(&self.factorization, subset)?;
        let complement = self.factorization.complement(&subset);
        let size = |s: &[usize]| {
            s.iter()
                .map(|&k| self.factorization.dims()[k])
                .product::<usize>()
        };
        let side = if size(&subset) <= size(&complement) {
            subset
        } else {
            complement
        };
        let m = self.reduced_matrix(&side)?;
        let ev = herm_eig(&m, T::hermitian_tol())?.eigenvalues;
        Ok(shannon_entropy(&ev))
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> Result<DensityMatrix<T>> {
        DensityMatrix::new(
            ComplexMatrix::outer(&self.amplitudes, &self.amplitudes),
            self.factorization.clone(),
        )
    }
}

fn l2_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
}
