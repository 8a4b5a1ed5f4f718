use num_complex::Complex64;

use super::ledger::{EntropyLedger, LedgerStage};
use crate::entropy::StateVector;
use crate::error::{Error, Result};
use crate::hermitian::HilbertFactorization;
use crate::measurement::apply_controlled_shift;

/// Qubit budget for the atom, photon, cat pack and observer together.
pub const CAT_LIMIT_QUBITS: usize = 20;

/// Cat scenario with the atom in `(|A*⟩ + |A⟩)/√2` after some time.
pub fn schroedinger_cat(cat_atoms: usize, include_observer: bool) -> Result<EntropyLedger> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    schroedinger_cat_from(
        [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        cat_atoms,
        include_observer,
    )
}

/// Cat scenario from an arbitrary atom state `a|A*⟩ + b|A⟩`.
///
/// Factors: atom (0 = excited, 1 = decayed), photon (0 = vacuum, 1 = one
/// photon), `cat_atoms` dichotomic cat variables (0 = live, 1 = dead) and,
/// optionally, an observer (0 = saw live, 1 = saw dead). Every ancilla starts
/// in its 0 state.
pub fn schroedinger_cat_from(
    atom: [Complex64; 2],
    cat_atoms: usize,
    include_observer: bool,
) -> Result<EntropyLedger> {
    if cat_atoms == 0 {
        return Err(Error::InvalidParameter(
            "the cat needs at least one atom".into(),
        ));
    }
    let n_factors = 2 + cat_atoms + usize::from(include_observer);
    if n_factors > CAT_LIMIT_QUBITS {
        return Err(Error::MemoryGuard {
            required: n_factors as f64,
            limit: CAT_LIMIT_QUBITS as f64,
        });
    }
    let mut factors = vec!["atom".to_string(), "photon".to_string()];
    factors.extend((1..=cat_atoms).map(|k| format!("cat{k}")));
    if include_observer {
        factors.push("observer".into());
    }
    let cat_range: Vec<usize> = (2..2 + cat_atoms).collect();
    let rest: Vec<usize> = (1..n_factors).collect();
    let photon_and_cat: Vec<usize> = (1..2 + cat_atoms).collect();

    let q = StateVector::new(atom.to_vec(), HilbertFactorization::single(2))?;
    let zero = StateVector::basis(HilbertFactorization::single(2), &[0])?;
    let mut parts = vec![&q];
    parts.extend(std::iter::repeat_n(&zero, n_factors - 1));
    let psi = StateVector::product(&parts)?;

    // Decay: the atom emits a photon exactly when it is found decayed.
    let psi0 = apply_controlled_shift(&psi, 0, 1, false)?;
    let s_atom = psi0.subsystem_entropy(&[0])?;
    let s_photon = psi0.subsystem_entropy(&[1])?;
    let s_ap = psi0.subsystem_entropy(&[0, 1])?;
    let decay = LedgerStage::new("decay", &psi0)?
        .entropy("S(atom)", s_atom)
        .entropy("S(photon)", s_photon)
        .entropy("S(atom|photon)", s_ap - s_photon);

    // Every cat atom interacts with the photon.
    let mut psi1 = psi0;
    for &k in &cat_range {
        psi1 = apply_controlled_shift(&psi1, 1, k, false)?;
    }
    let total1 = crate::measurement::global_entropy(&psi1)?;
    let s_gc = psi1.subsystem_entropy(&photon_and_cat)?;
    let s_rest1 = psi1.subsystem_entropy(&rest)?;
    let cat_stage = LedgerStage::new("cat", &psi1)?
        .entropy("S(atom)", psi1.subsystem_entropy(&[0])?)
        .entropy("S(photon,cat)", s_gc)
        .entropy("S(atom|rest)", total1 - s_rest1)
        .entropy("S(total)", total1);

    let mut stages = vec![decay, cat_stage];
    if include_observer {
        let obs = n_factors - 1;
        let psi2 = apply_controlled_shift(&psi1, 2, obs, false)?;
        let total2 = crate::measurement::global_entropy(&psi2)?;
        let s_rest2 = psi2.subsystem_entropy(&rest)?;
        let mut seen = photon_and_cat.clone();
        seen.push(obs);
        let s_obs = psi2.subsystem_entropy(&[obs])?;
        let s_cat = psi2.subsystem_entropy(&cat_range)?;
        let s_cat_obs = psi2.subsystem_entropy(&[&cat_range[..], &[obs]].concat())?;
        stages.push(
            LedgerStage::new("observer", &psi2)?
                .entropy("S(atom)", psi2.subsystem_entropy(&[0])?)
                .entropy("S(photon,cat,observer)", psi2.subsystem_entropy(&seen)?)
                .entropy("S(atom|rest)", total2 - s_rest2)
                .entropy("S(observer)", s_obs)
                .entropy("S(cat:observer)", s_cat + s_obs - s_cat_obs)
                .entropy("S(total)", total2),
        );
    }

    Ok(EntropyLedger {
        scenario: "schroedinger_cat".into(),
        factors,
        stages,
    })
}
