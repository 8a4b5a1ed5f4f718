//! Separability diagnostics: the conditional-spectrum criterion (every
//! eigenvalue of `ρ_{A|B}` and `ρ_{B|A}` at most one), the partial-transpose
//! criterion, the Werner family, and a randomized harness that hunts for
//! separable states violating the spectrum criterion.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::{conditional_density, conditional_entropy, DensityMatrix, StateVector};
use crate::error::{Error, Result};
use crate::hermitian::{
    herm_eigenvalues, kron, partial_transpose, ComplexMatrix, HilbertFactorization,
};
use crate::random::{dirichlet_weights, random_density, random_state, trial_rng};
use crate::scalar::Real;

/// Slack on the eigenvalue-at-most-one test and on PPT non-negativity.
pub const CRITERION_TOL: f64 = 1e-8;
/// Slack on non-negativity of sampled conditional entropies.
pub const ENTROPY_TOL: f64 = 1e-9;

/// Verdicts of both criteria plus the spectra behind them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparabilityReport<T> {
    pub max_cond_eig_ab: T,
    pub max_cond_eig_ba: T,
    pub spectrum_classical: bool,
    pub min_ppt_eig: T,
    pub ppt_pass: bool,
    pub cond_entropy_ab: T,
    pub cond_entropy_ba: T,
    pub nonneg_cond_entropy: bool,
    pub cond_spectrum_ab: Vec<T>,
    pub cond_spectrum_ba: Vec<T>,
    pub ppt_spectrum: Vec<T>,
}

impl<T: Real> SeparabilityReport<T> {
    pub fn criteria_agree(&self) -> bool {
        self.spectrum_classical == self.ppt_pass
    }

    pub fn max_cond_eig(&self) -> T {
        self.max_cond_eig_ab.max(self.max_cond_eig_ba)
    }
}

/// Runs both criteria with the default tolerance [`CRITERION_TOL`].
pub fn analyze<T: Real>(rho_ab: &DensityMatrix<T>) -> Result<SeparabilityReport<T>> {
    analyze_with_tolerance(rho_ab, T::lit(CRITERION_TOL))
}

/// Runs both criteria.
///
/// The entropy flag uses slack `log₂(1 + tol)`, the entropy implied by an
/// eigenvalue sitting exactly at the spectrum threshold, so that a negative
/// verdict on entropy always comes with a non-classical spectrum.
pub fn analyze_with_tolerance<T: Real>(
    rho_ab: &DensityMatrix<T>,
    tol: T,
) -> Result<SeparabilityReport<T>> {
    let f = rho_ab.factorization();
    if f.len() != 2 {
        return Err(Error::FactorCount {
            expected: 2,
            actual: f.len(),
        });
    }
    let cond_spectrum_ab = conditional_density(rho_ab, 1)?.eigenvalues()?;
    let cond_spectrum_ba = conditional_density(rho_ab, 0)?.eigenvalues()?;
    let max_ab = *cond_spectrum_ab.last().expect("non-empty");
    let max_ba = *cond_spectrum_ba.last().expect("non-empty");
    let spectrum_classical = max_ab <= T::one() + tol && max_ba <= T::one() + tol;

    let pt = partial_transpose(rho_ab.matrix(), f, 1)?;
    let ppt_spectrum = herm_eigenvalues(&pt, T::hermitian_tol())?;
    let min_ppt = ppt_spectrum[0];

    let cond_entropy_ab = conditional_entropy(rho_ab, 1)?.value;
    let cond_entropy_ba = conditional_entropy(rho_ab, 0)?.value;
    let entropy_slack = (T::one() + tol).log2();
    Ok(SeparabilityReport {
        max_cond_eig_ab: max_ab,
        max_cond_eig_ba: max_ba,
        spectrum_classical,
        min_ppt_eig: min_ppt,
        ppt_pass: min_ppt >= -tol,
        cond_entropy_ab,
        cond_entropy_ba,
        nonneg_cond_entropy: cond_entropy_ab >= -entropy_slack && cond_entropy_ba >= -entropy_slack,
        cond_spectrum_ab,
        cond_spectrum_ba,
        ppt_spectrum,
    })
}

/// Mixture of a singlet fraction `x` and the maximally mixed state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WernerState<T> {
    pub x: T,
}

impl<T: Real> WernerState<T> {
    pub fn new(x: T) -> Result<Self> {
        if !(x >= T::zero() && x <= T::one()) {
            return Err(Error::InvalidParameter(format!(
                "singlet fraction must lie in [0, 1], got {x}"
            )));
        }
        Ok(Self { x })
    }

    /// The 4×4 matrix in the `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩` basis.
    pub fn matrix(&self) -> ComplexMatrix<T> {
        let x = self.x;
        let quarter = T::lit(0.25);
        let outer = (T::one() - x) * quarter;
        let inner = (T::one() + x) * quarter;
        let off = -x * T::lit(0.5);
        let mut m = ComplexMatrix::from_diag(&[outer, inner, inner, outer]);
        m[(1, 2)].re = off;
        m[(2, 1)].re = off;
        m
    }

    pub fn density(&self) -> Result<DensityMatrix<T>> {
        DensityMatrix::new(self.matrix(), HilbertFactorization::new(vec![2, 2])?)
    }

    /// Closed-form conditional spectrum, ascending: `(1−x)/2` three times, `(1+3x)/2`.
    pub fn conditional_spectrum(&self) -> [T; 4] {
        let half = T::lit(0.5);
        let low = (T::one() - self.x) * half;
        [low, low, low, (T::one() + T::lit(3.0) * self.x) * half]
    }

    /// Closed-form partial-transpose spectrum, ascending: `(1−3x)/4`, `(1+x)/4` three times.
    pub fn ppt_spectrum(&self) -> [T; 4] {
        let quarter = T::lit(0.25);
        let high = (T::one() + self.x) * quarter;
        [
            (T::one() - T::lit(3.0) * self.x) * quarter,
            high,
            high,
            high,
        ]
    }
}

pub fn werner<T: Real>(x: T) -> Result<DensityMatrix<T>> {
    WernerState::new(x)?.density()
}

/// One row of a Werner sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WernerRow<T> {
    pub x: T,
    pub cond_eig_max: T,
    pub ppt_eig_min: T,
    pub spectrum_classical: bool,
    pub ppt_pass: bool,
    pub cond_spectrum: Vec<T>,
    pub ppt_spectrum: Vec<T>,
}

pub const WERNER_CSV_HEADER: &str = "x,cond_eig_max,ppt_eig_min,spectrum_classical,ppt_pass";

/// Analyzes the Werner state at every grid point.
pub fn werner_threshold_sweep<T: Real>(grid: &[T]) -> Result<Vec<WernerRow<T>>> {
    grid.iter()
        .map(|&x| {
            let report = analyze(&werner(x)?)?;
            Ok(WernerRow {
                x,
                cond_eig_max: report.max_cond_eig(),
                ppt_eig_min: report.min_ppt_eig,
                spectrum_classical: report.spectrum_classical,
                ppt_pass: report.ppt_pass,
                cond_spectrum: report.cond_spectrum_ab,
                ppt_spectrum: report.ppt_spectrum,
            })
        })
        .collect()
}

/// How the product components of a separable sample are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    /// Induced-measure mixed states, ancilla as large as the factor.
    Mixed,
    /// Haar-random pure states.
    Pure,
}

/// `Σ_k w_k ρ_A^(k) ⊗ ρ_B^(k)` together with the ingredients that built it.
#[derive(Clone, Debug)]
pub struct SeparableSample<T> {
    pub state: DensityMatrix<T>,
    pub weights: Vec<T>,
    pub factors_a: Vec<DensityMatrix<T>>,
    pub factors_b: Vec<DensityMatrix<T>>,
}

pub fn sample_separable_from<T: Real, R: rand::Rng + ?Sized>(
    dims: (usize, usize),
    k: usize,
    kind: FactorKind,
    rng: &mut R,
) -> Result<SeparableSample<T>> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "a separable sample needs k >= 1".into(),
        ));
    }
    let fa = HilbertFactorization::single(dims.0);
    let fb = HilbertFactorization::single(dims.1);
    let weights = dirichlet_weights::<T, _>(k, rng);
    let draw = |f: &HilbertFactorization, rng: &mut R| -> Result<DensityMatrix<T>> {
        match kind {
            FactorKind::Mixed => random_density(f.clone(), rng),
            FactorKind::Pure => {
                random_state::<T, _>(f.clone(), rng).and_then(|s: StateVector<T>| s.density())
            }
        }
    };
    let mut factors_a = Vec::with_capacity(k);
    let mut factors_b = Vec::with_capacity(k);
    for _ in 0..k {
        factors_a.push(draw(&fa, rng)?);
        factors_b.push(draw(&fb, rng)?);
    }
    let n = dims.0 * dims.1;
    let mut acc = ComplexMatrix::zeros(n, n);
    for ((w, a), b) in weights.iter().zip(&factors_a).zip(&factors_b) {
        acc = &acc + &kron(a.matrix(), b.matrix()).scale(*w);
    }
    let state = DensityMatrix::new(
        acc.hermitize(),
        HilbertFactorization::new(vec![dims.0, dims.1])?,
    )?;
    Ok(SeparableSample {
        state,
        weights,
        factors_a,
        factors_b,
    })
}

/// Deterministic separable sample with mixed factors.
pub fn sample_separable<T: Real>(
    dims: (usize, usize),
    k: usize,
    seed: u64,
) -> Result<SeparableSample<T>> {
    sample_separable_from(dims, k, FactorKind::Mixed, &mut trial_rng(seed, 0))
}

/// A sampled separable state that violated a criterion, with provenance.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub seed: u64,
    pub trial: u64,
    pub k: usize,
    pub weights: Vec<f64>,
    pub max_cond_eig_ab: f64,
    pub max_cond_eig_ba: f64,
    pub cond_entropy_ab: f64,
    pub cond_entropy_ba: f64,
    /// `(re, im)` row-major entries of each product factor.
    pub factors_a: Vec<Vec<(f64, f64)>>,
    pub factors_b: Vec<Vec<(f64, f64)>>,
}

/// A trial where the spectrum and PPT criteria disagree.
#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub trial: u64,
    pub spectrum_classical: bool,
    pub ppt_pass: bool,
    pub max_cond_eig: f64,
    pub min_ppt_eig: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureOutcome {
    pub seed: u64,
    pub trials: u64,
    pub dims: (usize, usize),
    pub k_range: (usize, usize),
    pub max_cond_eig_seen: f64,
    pub min_cond_entropy_seen: f64,
    pub counterexamples: Vec<Counterexample>,
    pub disagreements: Vec<Disagreement>,
}

fn flatten<T: Real>(m: &DensityMatrix<T>) -> Vec<(f64, f64)> {
    m.matrix()
        .as_slice()
        .iter()
        .map(|z| (z.re.as_f64(), z.im.as_f64()))
        .collect()
}

type TrialOutcome = (Option<Counterexample>, Option<Disagreement>, f64, f64);

/// Samples `trials` separable states and records every one whose
/// conditional spectrum exceeds `1 + CRITERION_TOL` or whose conditional
/// entropy falls below `−ENTROPY_TOL`.
///
/// Trial `i` draws from stream `(seed, i)`; the component count is drawn
/// uniformly from `k`. Runs on the current rayon pool.
pub fn conjecture_trial(
    trials: u64,
    dims: (usize, usize),
    k: RangeInclusive<usize>,
    seed: u64,
) -> Result<ConjectureOutcome> {
    if k.is_empty() || *k.start() == 0 {
        return Err(Error::InvalidParameter(format!(
            "invalid component range {k:?}"
        )));
    }
    let (k_lo, k_hi) = (*k.start(), *k.end());
    let results: Vec<Result<TrialOutcome>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let k = rand::Rng::random_range(&mut rng, k_lo..=k_hi);
            let sample: SeparableSample<f64> =
                sample_separable_from(dims, k, FactorKind::Mixed, &mut rng)?;
            let report = analyze(&sample.state)?;
            let spectrum_bad = report.max_cond_eig() > 1.0 + CRITERION_TOL;
            let entropy_bad =
                report.cond_entropy_ab < -ENTROPY_TOL || report.cond_entropy_ba < -ENTROPY_TOL;
            let counterexample = (spectrum_bad || entropy_bad).then(|| Counterexample {
                seed,
                trial,
                k,
                weights: sample.weights.clone(),
                max_cond_eig_ab: report.max_cond_eig_ab,
                max_cond_eig_ba: report.max_cond_eig_ba,
                cond_entropy_ab: report.cond_entropy_ab,
                cond_entropy_ba: report.cond_entropy_ba,
                factors_a: sample.factors_a.iter().map(flatten).collect(),
                factors_b: sample.factors_b.iter().map(flatten).collect(),
            });
            let disagreement = (!report.criteria_agree()).then(|| Disagreement {
                trial,
                spectrum_classical: report.spectrum_classical,
                ppt_pass: report.ppt_pass,
                max_cond_eig: report.max_cond_eig(),
                min_ppt_eig: report.min_ppt_eig,
            });
            let min_s = report.cond_entropy_ab.min(report.cond_entropy_ba);
            Ok((counterexample, disagreement, report.max_cond_eig(), min_s))
        })
        .collect();

    let mut outcome = ConjectureOutcome {
        seed,
        trials,
        dims,
        k_range: (k_lo, k_hi),
        max_cond_eig_seen: f64::NEG_INFINITY,
        min_cond_entropy_seen: f64::INFINITY,
        counterexamples: Vec::new(),
        disagreements: Vec::new(),
    };
    for r in results {
        let (c, d, max_eig, min_s) = r?;
        outcome.max_cond_eig_seen = outcome.max_cond_eig_seen.max(max_eig);
        outcome.min_cond_entropy_seen = outcome.min_cond_entropy_seen.min(min_s);
        outcome.counterexamples.extend(c);
        outcome.disagreements.extend(d);
    }
    Ok(outcome)
}
