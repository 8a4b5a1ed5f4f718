//! Dense complex-matrix substrate: Hermitian eigendecomposition, spectral
//! functions, tensor products and partial operations over factored spaces.

mod eigen;
mod matrix;
mod spectral;
mod tensor;

pub use eigen::{herm_eig, herm_eigenvalues, HermitianEigen};
pub use matrix::ComplexMatrix;
pub use spectral::{
    fractional_power, lie_trotter_product, matrix_exp2, matrix_log2, spectral_map, trotter_limit,
    MatrixLog,
};
pub(crate) use tensor::normalize_subset;
pub use tensor::{kron, kron_vec, partial_trace, partial_transpose, HilbertFactorization};
