//! Scripted scenarios built from the measurement primitives: Stern-Gerlach
//! (single and sequential), the two-slit quantum eraser, and the
//! Schrödinger-cat entropy ledger.

mod cat;
mod eraser;
mod ledger;
mod stern_gerlach;

pub use cat::{schroedinger_cat, schroedinger_cat_from, CAT_LIMIT_QUBITS};
pub use eraser::{
    default_grid, quantum_eraser, EraserGeometry, EraserMode, ScreenProfile, SCREEN_CSV_HEADER,
};
pub use ledger::{EntropyLedger, LedgerStage};
pub use stern_gerlach::{stern_gerlach, stern_gerlach_from};
