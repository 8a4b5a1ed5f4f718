//! Physical states and the entropy calculus built on them: von Neumann
//! entropies, conditional and mutual density operators, and entropy
//! Venn diagrams for two and three parties. All entropies are in bits.

mod conditional;
mod state;
mod venn;

pub use conditional::{
    conditional_density, conditional_entropy, mutual_density, mutual_entropy, ConditionalOperator,
    EntropyEvaluation, OperatorKind,
};
pub use state::{DensityMatrix, StateVector};
pub use venn::{venn2, venn3, VennDiagram2, VennDiagram3};

use crate::error::Result;
use crate::scalar::Real;

/// `|ψ⟩⟨ψ|` for a normalized state.
pub fn density_from_pure<T: Real>(psi: &StateVector<T>) -> Result<DensityMatrix<T>> {
    psi.density()
}

/// `−Σ λ log₂ λ` over the spectrum, with `0 log 0 = 0`.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> T {
    rho.entropy()
}
