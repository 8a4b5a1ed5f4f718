//! Named states: `bell`, `case1`, `case2`, `case3`, `ghz`, `werner:<x>` and
//! `nplet:<m>`.

use crate::entropy::{density_from_pure, DensityMatrix, StateVector};
use crate::error::{Error, Result};
use crate::hermitian::HilbertFactorization;
use crate::separability::werner;

pub const PRESET_NAMES: &[&str] = &[
    "bell",
    "case1",
    "case2",
    "case3",
    "ghz",
    "werner:<x>",
    "nplet:<m>",
];

/// `(|0…0⟩ + |1…1⟩)/√2` on `m` qubits.
pub fn nplet(m: usize) -> Result<StateVector<f64>> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "nplet needs at least one qubit".into(),
        ));
    }
    if m > 20 {
        return Err(Error::MemoryGuard {
            required: m as f64,
            limit: 20.0,
        });
    }
    let f = HilbertFactorization::uniform(2, m)?;
    let mut amps = vec![0.0; f.total()];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = h;
    amps[f.total() - 1] = h;
    StateVector::from_real(&amps, f)
}

pub fn bell() -> StateVector<f64> {
    nplet(2).expect("two qubits")
}

pub fn ghz() -> StateVector<f64> {
    nplet(3).expect("three qubits")
}

/// Independent maximally mixed qubits.
pub fn case1() -> DensityMatrix<f64> {
    DensityMatrix::maximally_mixed(HilbertFactorization::uniform(2, 2).expect("two qubits"))
}

/// Classically correlated qubits `(|00⟩⟨00| + |11⟩⟨11|)/2`.
pub fn case2() -> DensityMatrix<f64> {
    DensityMatrix::diagonal(
        &[0.5, 0.0, 0.0, 0.5],
        HilbertFactorization::uniform(2, 2).expect("two qubits"),
    )
    .expect("valid diagonal state")
}

/// Resolves a preset name to a density matrix.
pub fn preset(name: &str) -> Result<DensityMatrix<f64>> {
    let unknown = || {
        Error::InvalidParameter(format!(
            "unknown preset '{name}'; available: {}",
            PRESET_NAMES.join(", ")
        ))
    };
    match name.split_once(':') {
        None => match name {
            "bell" | "case3" => density_from_pure(&bell()),
            "case1" => Ok(case1()),
            "case2" => Ok(case2()),
            "ghz" => density_from_pure(&ghz()),
            _ => Err(unknown()),
        },
        Some(("werner", x)) => {
            let x: f64 = x.parse().map_err(|_| {
                Error::InvalidParameter(format!("werner parameter '{x}' is not a number"))
            })?;
            werner(x)
        }
        Some(("nplet", m)) => {
            let m: usize = m.parse().map_err(|_| {
                Error::InvalidParameter(format!("nplet size '{m}' is not an integer"))
            })?;
            if m > 8 {
                return Err(Error::InvalidParameter(format!(
                    "nplet:{m} as a density matrix exceeds the 8-qubit preset limit"
                )));
            }
            density_from_pure(&nplet(m)?)
        }
        Some(_) => Err(unknown()),
    }
}
