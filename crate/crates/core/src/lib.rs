//! Quantum information toolkit for unitary measurement: conditional and
//! mutual density operators, entropy Venn diagrams, separability
//! diagnostics, measurement-chain simulation and scripted experiments.
//!
//! The numerical core is generic over the real scalar ([`Real`], implemented
//! for `f32` and `f64`); the aliases below fix it to `f64`.

pub mod cli;
pub mod entropy;
pub mod error;
pub mod experiments;
pub mod hermitian;
pub mod io;
pub mod measurement;
pub mod presets;
pub mod random;
pub mod scalar;
pub mod separability;

pub use error::{Error, Result};
pub use hermitian::{ComplexMatrix, HilbertFactorization};
pub use scalar::{shannon_entropy, Real};

pub type Complex64 = num_complex::Complex<f64>;
pub type Matrix = hermitian::ComplexMatrix<f64>;
pub type Density = entropy::DensityMatrix<f64>;
pub type State = entropy::StateVector<f64>;
pub type Conditional = entropy::ConditionalOperator<f64>;
pub type Venn2 = entropy::VennDiagram2<f64>;
pub type Venn3 = entropy::VennDiagram3<f64>;
pub type Report = separability::SeparabilityReport<f64>;
pub type BasisMap = measurement::MeasurementBasisMap<f64>;
