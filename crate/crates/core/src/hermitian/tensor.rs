use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Ordered subsystem dimensions of a composite Hilbert space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct HilbertFactorization {
    dims: Vec<usize>,
    total: usize,
}

impl HilbertFactorization {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::DimensionMismatch(format!(
                "factor dimensions must be non-empty and positive, got {dims:?}"
            )));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::DimensionMismatch("total dimension overflows".into()))?;
        Ok(Self { dims, total })
    }

    /// A single factor of dimension `n`.
    pub fn single(n: usize) -> Self {
        Self::new(vec![n]).expect("positive dimension")
    }

    /// `k` factors of dimension `n` each.
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        Self::new(vec![n; k])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.dims.len() {
            Ok(())
        } else {
            Err(Error::SubsystemIndex {
                index,
                factors: self.dims.len(),
            })
        }
    }

    /// Factorization restricted to `keep` (sorted, deduplicated).
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let keep = normalize_subset(self, keep)?;
        Self::new(keep.iter().map(|&k| self.dims[k]).collect())
    }

    /// Indices not in `subset`.
    pub fn complement(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.dims.len())
            .filter(|i| !subset.contains(i))
            .collect()
    }

    /// Row-major strides of each factor within the composite index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Splits a composite index into per-factor digits.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            out[k] = index % self.dims[k];
            index /= self.dims[k];
        }
        out
    }

    pub fn compose(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&d, &n)| acc * n + d)
    }
}

impl TryFrom<Vec<usize>> for HilbertFactorization {
    type Error = Error;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Self::new(dims)
    }
}

impl From<HilbertFactorization> for Vec<usize> {
    fn from(f: HilbertFactorization) -> Self {
        f.dims
    }
}

pub(crate) fn normalize_subset(f: &HilbertFactorization, subset: &[usize]) -> Result<Vec<usize>> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    for &k in &s {
        f.check_index(k)?;
    }
    Ok(s)
}

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Kronecker product of a list of vectors.
pub fn kron_vec<T: Real>(parts: &[&[Complex<T>]]) -> Vec<Complex<T>> {
    parts
        .iter()
        .fold(vec![Complex::new(T::one(), T::zero())], |acc, part| {
            acc.iter()
                .flat_map(|&x| part.iter().map(move |&y| x * y))
                .collect()
        })
}

fn check_operator<T: Real>(m: &ComplexMatrix<T>, f: &HilbertFactorization) -> Result<()> {
    let n = m.ensure_square()?;
    if n != f.total() {
        return Err(Error::DimensionMismatch(format!(
            "operator dimension {n} does not match factorization {:?} (total {})",
            f.dims(),
            f.total()
        )));
    }
    Ok(())
}

/// Reduced operator on the factors in `keep`, tracing out the rest.
///
/// Kept factors appear in ascending index order regardless of the order
/// given in `keep`.
pub fn partial_trace<T: Real>(
    m: &ComplexMatrix<T>,
    f: &HilbertFactorization,
    keep: &[usize],
) -> Result<ComplexMatrix<T>> {
    check_operator(m, f)?;
    let keep = normalize_subset(f, keep)?;
    let traced = f.complement(&keep);
    let strides = f.strides();
    let offsets = |factors: &[usize]| -> Vec<usize> {
        let sub = HilbertFactorization::new(factors.iter().map(|&k| f.dims()[k]).collect());
        match sub {
            Ok(sub) => (0..sub.total())
                .map(|idx| {
                    sub.digits(idx)
                        .iter()
                        .zip(factors)
                        .map(|(&d, &k)| d * strides[k])
                        .sum()
                })
                .collect(),
            // empty factor set: a single zero offset
            Err(_) => vec![0],
        }
    };
    let keep_off = offsets(&keep);
    let trace_off = offsets(&traced);
    let dk = keep_off.len();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for (r, &ro) in keep_off.iter().enumerate() {
        for (c, &co) in keep_off.iter().enumerate() {
            let mut acc = Complex::zero();
            for &t in &trace_off {
                acc += m[(ro + t, co + t)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// Transposes the indices of one factor of a bipartite operator.
pub fn partial_transpose<T: Real>(
    m: &ComplexMatrix<T>,
    f: &HilbertFactorization,
    subsystem: usize,
) -> Result<ComplexMatrix<T>> {
    check_operator(m, f)?;
    if f.len() != 2 {
        return Err(Error::FactorCount {
            expected: 2,
            actual: f.len(),
        });
    }
    f.check_index(subsystem)?;
    let (da, db) = (f.dims()[0], f.dims()[1]);
    let n = f.total();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        let (a, b) = (i / db, i % db);
        let (a2, b2) = (j / db, j % db);
        let (ri, rj) = if subsystem == 0 {
            (a2 * db + b, a * db + b2)
        } else {
            (a * db + b2, a2 * db + b)
        };
        debug_assert!(ri < n && rj < n && da > 0);
        m[(ri, rj)]
    }))
}
