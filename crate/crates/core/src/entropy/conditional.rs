//! Conditional and mutual density operators and the entropies they define.
//!
//! Both operators are evaluated through their closed form
//! `2^{±(log₂ ρ_AB − log₂ σ)}` restricted to the support of `ρ_AB`, where
//! `σ = 1_A ⊗ ρ_B` (conditional) or `σ = ρ_A ⊗ ρ_B` (mutual). Directions
//! outside the support of `ρ_AB` carry no weight in any entropy and are
//! reported as zero.

use num_complex::Complex;
use serde::Serialize;

use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::hermitian::{
    herm_eig, kron, matrix_exp2, matrix_log2, ComplexMatrix, HilbertFactorization,
};
use crate::scalar::Real;

/// Weight of `ρ_AB` allowed outside the support of the reference operator.
const SUPPORT_LEAK_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Conditional,
    Mutual,
}

/// Hermitian PSD operator that is not a state: `ρ_{A|B}` or `ρ_{A:B}`.
///
/// A conditional operator may have eigenvalues above one.
#[derive(Clone, Debug)]
pub struct ConditionalOperator<T> {
    pub matrix: ComplexMatrix<T>,
    /// Base-2 logarithm of `matrix` on the support (zero elsewhere).
    pub log: ComplexMatrix<T>,
    pub factorization: HilbertFactorization,
    pub kind: OperatorKind,
    /// Projector onto the support of `ρ_AB`.
    pub support_projector: ComplexMatrix<T>,
    /// `Tr[ρ_AB (1 − P_σ)]`, the weight outside the reference support.
    pub leaked_weight: T,
    /// `−Tr[ρ_AB log₂ matrix]`.
    pub trace_entropy: T,
}

impl<T: Real> ConditionalOperator<T> {
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        Ok(herm_eig(&self.matrix, T::lit(1e-9))?.eigenvalues)
    }

    pub fn max_eigenvalue(&self) -> Result<T> {
        Ok(*self.eigenvalues()?.last().expect("non-empty"))
    }
}

fn require_bipartite<T: Real>(rho: &DensityMatrix<T>) -> Result<()> {
    let n = rho.factorization().len();
    if n != 2 {
        return Err(Error::FactorCount {
            expected: 2,
            actual: n,
        });
    }
    Ok(())
}

/// Builds `2^{sign·(log₂ ρ − log₂ σ)}` on the support of `ρ`.
fn support_exponential<T: Real>(
    rho: &DensityMatrix<T>,
    reference: &ComplexMatrix<T>,
    sign: T,
    kind: OperatorKind,
) -> Result<ConditionalOperator<T>> {
    let eps = T::support_eps();
    let eig = herm_eig(rho.matrix(), T::hermitian_tol())?;
    let support: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&k| eig.eigenvalues[k] >= eps)
        .collect();
    let n = rho.dim();
    let r = support.len();

    let ref_log = matrix_log2(reference, eps)?;
    let outside = &ComplexMatrix::identity(n) - &ref_log.support;
    let leaked = rho.matrix().trace_product(&outside).re.max(T::zero());
    if leaked > T::lit(SUPPORT_LEAK_TOL) {
        return Err(Error::SingularOnSupport(leaked.as_f64()));
    }

    // V_s: support eigenvectors as columns.
    let vs = ComplexMatrix::from_fn(n, r, |i, j| eig.eigenvectors[(i, support[j])]);
    let projected = vs.adjoint().matmul(&ref_log.log)?.matmul(&vs)?;
    let mut exponent = projected.scale(-sign);
    for (j, &k) in support.iter().enumerate() {
        exponent[(j, j)] += Complex::new(sign * eig.eigenvalues[k].log2(), T::zero());
    }
    let exponent = exponent.hermitize();
    let restricted = matrix_exp2(&exponent)?;

    let trace_entropy = -support
        .iter()
        .enumerate()
        .map(|(j, &k)| eig.eigenvalues[k] * exponent[(j, j)].re)
        .sum::<T>();

    let lift = |m: &ComplexMatrix<T>| -> Result<ComplexMatrix<T>> {
        Ok(vs.matmul(m)?.matmul(&vs.adjoint())?.hermitize())
    };
    let support_projector = lift(&ComplexMatrix::identity(r))?;
    Ok(ConditionalOperator {
        matrix: lift(&restricted)?,
        log: lift(&exponent)?,
        factorization: rho.factorization().clone(),
        kind,
        support_projector,
        leaked_weight: leaked,
        trace_entropy,
    })
}

fn identity_on<T: Real>(dim: usize) -> ComplexMatrix<T> {
    ComplexMatrix::identity(dim)
}

/// `ρ_{A|B}` (`condition_on = 1`) or `ρ_{B|A}` (`condition_on = 0`).
///
/// In the commuting case this equals `ρ_AB (1_A ⊗ ρ_B)^{-1}` on the support.
/// Fails with [`Error::SingularOnSupport`] if `ρ_AB` has weight outside the
/// support of `1 ⊗ ρ_B`.
pub fn conditional_density<T: Real>(
    rho_ab: &DensityMatrix<T>,
    condition_on: usize,
) -> Result<ConditionalOperator<T>> {
    require_bipartite(rho_ab)?;
    rho_ab.factorization().check_index(condition_on)?;
    let dims = rho_ab.factorization().dims();
    let reduced = rho_ab.reduce(&[condition_on])?;
    let reference = if condition_on == 1 {
        kron(&identity_on(dims[0]), reduced.matrix())
    } else {
        kron(reduced.matrix(), &identity_on(dims[1]))
    };
    support_exponential(rho_ab, &reference, T::one(), OperatorKind::Conditional)
}

/// `ρ_{A:B}`; in the commuting case `(ρ_A ⊗ ρ_B) ρ_AB^{-1}` on the support.
pub fn mutual_density<T: Real>(rho_ab: &DensityMatrix<T>) -> Result<ConditionalOperator<T>> {
    require_bipartite(rho_ab)?;
    let a = rho_ab.reduce(&[0])?;
    let b = rho_ab.reduce(&[1])?;
    let reference = kron(a.matrix(), b.matrix());
    support_exponential(rho_ab, &reference, -T::one(), OperatorKind::Mutual)
}

/// An entropy evaluated by two routes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntropyEvaluation<T> {
    /// Value of record, from von Neumann entropies of the marginals.
    pub value: T,
    /// `−Tr[ρ_AB log₂ ρ_op]` when the operator is well defined.
    pub trace_form: Option<T>,
    /// Set when the operator could not be formed and only `value` is available.
    pub support_warning: bool,
}

impl<T: Real> EntropyEvaluation<T> {
    /// `|trace_form − value|`, or zero when the trace form is unavailable.
    pub fn discrepancy(&self) -> T {
        self.trace_form
            .map_or(T::zero(), |t| (t - self.value).abs())
    }
}

/// `S(X|Y)` where `Y` is the factor `condition_on`; may be negative.
pub fn conditional_entropy<T: Real>(
    rho_ab: &DensityMatrix<T>,
    condition_on: usize,
) -> Result<EntropyEvaluation<T>> {
    require_bipartite(rho_ab)?;
    rho_ab.factorization().check_index(condition_on)?;
    let value = rho_ab.entropy() - rho_ab.subsystem_entropy(&[condition_on])?;
    match conditional_density(rho_ab, condition_on) {
        Ok(op) => Ok(EntropyEvaluation {
            value,
            trace_form: Some(op.trace_entropy),
            support_warning: false,
        }),
        Err(Error::SingularOnSupport(_)) => Ok(EntropyEvaluation {
            value,
            trace_form: None,
            support_warning: true,
        }),
        Err(e) => Err(e),
    }
}

/// `S(A:B)`.
pub fn mutual_entropy<T: Real>(rho_ab: &DensityMatrix<T>) -> Result<EntropyEvaluation<T>> {
    require_bipartite(rho_ab)?;
    let value =
        rho_ab.subsystem_entropy(&[0])? + rho_ab.subsystem_entropy(&[1])? - rho_ab.entropy();
    match mutual_density(rho_ab) {
        Ok(op) => Ok(EntropyEvaluation {
            value,
            trace_form: Some(op.trace_entropy),
            support_warning: false,
        }),
        Err(Error::SingularOnSupport(_)) => Ok(EntropyEvaluation {
            value,
            trace_form: None,
            support_warning: true,
        }),
        Err(e) => Err(e),
    }
}
