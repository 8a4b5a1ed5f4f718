use num_complex::Complex64;

use super::ledger::{EntropyLedger, LedgerStage};
use crate::entropy::StateVector;
use crate::error::Result;
use crate::hermitian::{ComplexMatrix, HilbertFactorization};
use crate::measurement::apply_controlled_shift;

/// Stern-Gerlach run on a `σ_x` eigenstate `(|↑⟩ + |↓⟩)/√2`.
pub fn stern_gerlach(sequential: bool) -> Result<EntropyLedger> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    stern_gerlach_from([Complex64::new(h, 0.0), Complex64::new(h, 0.0)], sequential)
}

/// Stern-Gerlach run on an arbitrary spin state `a|↑⟩ + b|↓⟩`.
///
/// Factors are the spin, the location after the field gradient (`L`, `R`),
/// and either the screen (`l`, `r`) reading the location or, when
/// `sequential`, the location after a second, identical gradient. The
/// magnetic field acts as the tagging shift spin → location.
pub fn stern_gerlach_from(spin: [Complex64; 2], sequential: bool) -> Result<EntropyLedger> {
    let (x, y) = if sequential { ("x", "y") } else { ("A", "A'") };
    let factors = vec!["Q".to_string(), x.to_string(), y.to_string()];
    let f = HilbertFactorization::uniform(2, 3)?;
    let q = StateVector::new(spin.to_vec(), HilbertFactorization::single(2))?;
    let zero = StateVector::basis(HilbertFactorization::single(2), &[0])?;
    let psi0 = StateVector::product(&[&q, &zero, &zero])?;
    debug_assert_eq!(psi0.factorization(), &f);

    let prepared =
        LedgerStage::new("prepared", &psi0)?.entropy("S(Q)", psi0.subsystem_entropy(&[0])?);

    let psi1 = apply_controlled_shift(&psi0, 0, 1, false)?;
    let s_q = psi1.subsystem_entropy(&[0])?;
    let s_x = psi1.subsystem_entropy(&[1])?;
    let s_qx = psi1.subsystem_entropy(&[0, 1])?;
    let tagged = LedgerStage::new("tagged", &psi1)?
        .entropy("S(Q)", s_q)
        .entropy(&format!("S({x})"), s_x)
        .entropy(&format!("S(Q{x})"), s_qx)
        .entropy(&format!("S(Q|{x})"), s_qx - s_x);

    // Screen reads the location; a second gradient reads the spin again.
    let control = if sequential { 0 } else { 1 };
    let psi2 = apply_controlled_shift(&psi1, control, 2, false)?;
    let stage_name = if sequential {
        "second_gradient"
    } else {
        "screen"
    };
    let s_y = psi2.subsystem_entropy(&[2])?;
    let s_x2 = psi2.subsystem_entropy(&[1])?;
    let s_xy = psi2.subsystem_entropy(&[1, 2])?;
    let total = crate::measurement::global_entropy(&psi2)?;

    let rho_xy = psi2.reduced_matrix(&[1, 2])?;
    let p_equal = rho_xy[(0, 0)].re + rho_xy[(3, 3)].re;
    let rho_q = psi2.reduced_matrix(&[0])?;
    let spin_defect = rho_q.max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.5]));

    let final_stage = LedgerStage::new(stage_name, &psi2)?
        .entropy("S(Q)", psi2.subsystem_entropy(&[0])?)
        .entropy(&format!("S({x})"), s_x2)
        .entropy(&format!("S({y})"), s_y)
        .entropy(&format!("S({x}{y})"), s_xy)
        .entropy(&format!("S(Q|{x}{y})"), total - s_xy)
        .entropy(&format!("S(Q{x}{y})"), total)
        .entropy(&format!("S({x}:{y})"), s_x2 + s_y - s_xy)
        .observe(&format!("P({x}={y})"), p_equal)
        .observe("spin_vs_maximally_mixed", spin_defect);

    Ok(EntropyLedger {
        scenario: if sequential {
            "stern_gerlach_sequential".into()
        } else {
            "stern_gerlach".into()
        },
        factors,
        stages: vec![prepared, tagged, final_stage],
    })
}
