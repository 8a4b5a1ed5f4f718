//! Two-slit quantum eraser.
//!
//! Factors are the path (0 = left slit, 1 = right slit), the photon
//! polarization (0 = `H`, 1 = `V`) and, in recorded mode, an ancilla that
//! copies the polarization. The diagonal polarizer is a filter: it projects
//! the polarization onto `|+⟩` and the surviving sub-ensemble is renormalized.
//! This is not a unitary reversal of the tagging.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::entropy::StateVector;
use crate::error::{Error, Result};
use crate::hermitian::{ComplexMatrix, HilbertFactorization};
use crate::measurement::{apply_controlled_shift, apply_local};

pub const SCREEN_CSV_HEADER: &str = "x,intensity";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EraserMode {
    /// Untagged paths.
    Baseline,
    /// Polarization rotator on the left path.
    Tagged,
    /// Tagged, then filtered by the diagonal polarizer.
    Erased,
    /// Tagged, polarization copied to an ancilla, then filtered.
    Recorded,
}

/// Screen geometry: slit separation `d`, envelope width `w` and fringe
/// wavenumber `kappa`, in arbitrary but consistent length units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EraserGeometry {
    pub d: f64,
    pub w: f64,
    pub kappa: f64,
}

impl Default for EraserGeometry {
    fn default() -> Self {
        Self {
            d: 0.0,
            w: 1.0,
            kappa: 10.0,
        }
    }
}

impl EraserGeometry {
    fn validate(&self) -> Result<()> {
        let finite = self.d.is_finite() && self.w.is_finite() && self.kappa.is_finite();
        if !finite || self.d < 0.0 || self.w <= 0.0 || self.kappa <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "invalid eraser geometry d={}, w={}, kappa={}",
                self.d, self.w, self.kappa
            )));
        }
        Ok(())
    }

    fn gaussian(&self, x: f64) -> f64 {
        (2.0 * PI * self.w * self.w).powf(-0.25) * (-x * x / (4.0 * self.w * self.w)).exp()
    }

    /// Path amplitudes `(ψ_L(x), ψ_R(x))`.
    pub fn amplitudes(&self, x: f64) -> (Complex64, Complex64) {
        let half = self.kappa * x / 2.0;
        let left = Complex64::from_polar(self.gaussian(x - self.d / 2.0), half);
        let right = Complex64::from_polar(self.gaussian(x + self.d / 2.0), -half);
        (left, right)
    }
}

/// 2048 points evenly spaced on `[−6, 6]`.
pub fn default_grid() -> Vec<f64> {
    let n = 2048;
    (0..n)
        .map(|k| -6.0 + 12.0 * k as f64 / (n - 1) as f64)
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ScreenProfile {
    pub mode: EraserMode,
    pub geometry: EraserGeometry,
    pub xs: Vec<f64>,
    /// Intensity before renormalization; integrates to the post-selection
    /// probability.
    pub intensity: Vec<f64>,
    /// Intensity of the surviving sub-ensemble; integrates to one.
    pub intensity_normalized: Vec<f64>,
    pub visibility: f64,
    pub post_selection_probability: f64,
    /// Trapezoidal integral of `intensity` over the grid.
    pub integral: f64,
}

fn validate_grid(grid: &[f64], w: f64) -> Result<()> {
    if grid.len() < 3 {
        return Err(Error::InvalidParameter(
            "screen grid needs at least 3 points".into(),
        ));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidParameter(
            "screen grid must be finite and strictly increasing".into(),
        ));
    }
    let span = grid[grid.len() - 1] - grid[0];
    if span < 6.0 * w {
        return Err(Error::InvalidParameter(format!(
            "screen grid spans {span}, needs at least 6w = {}",
            6.0 * w
        )));
    }
    Ok(())
}

fn mode_state(mode: EraserMode) -> Result<StateVector<f64>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let path = StateVector::from_real(&[h, h], HilbertFactorization::single(2))?;
    let pol = StateVector::basis(HilbertFactorization::single(2), &[0])?;
    let ancilla = StateVector::basis(HilbertFactorization::single(2), &[0])?;
    let psi1 = if mode == EraserMode::Recorded {
        StateVector::product(&[&path, &pol, &ancilla])?
    } else {
        StateVector::product(&[&path, &pol])?
    };
    if mode == EraserMode::Baseline {
        return Ok(psi1);
    }

    // Flip the polarization on the left path only.
    let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])?;
    let flipped = apply_local(&psi1, 0, &x)?;
    let shifted = apply_controlled_shift(&flipped, 0, 1, false)?;
    let mut psi = apply_local(&shifted, 0, &x)?;
    if mode == EraserMode::Tagged {
        return Ok(psi);
    }
    if mode == EraserMode::Recorded {
        psi = apply_controlled_shift(&psi, 1, 2, false)?;
    }
    let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])?;
    apply_local(&psi, 1, &plus)
}

fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// Screen pattern for one eraser mode.
///
/// Visibility is `(R_max − R_min)/(R_max + R_min)` of the ratio `R` between
/// the renormalized intensity and the mean single-path intensity
/// `(|ψ_L|² + |ψ_R|²)/2`, over the central fringe `|x| ≤ 2π/κ`.
pub fn quantum_eraser(
    mode: EraserMode,
    geometry: EraserGeometry,
    grid: &[f64],
) -> Result<ScreenProfile> {
    geometry.validate()?;
    validate_grid(grid, geometry.w)?;
    let psi = mode_state(mode)?;
    let rho = psi.reduced_matrix(&[0])?;
    let probability = rho.trace().re;

    let mut intensity = Vec::with_capacity(grid.len());
    let mut ratio = Vec::new();
    let window = 2.0 * PI / geometry.kappa;
    let peak_envelope = geometry.gaussian(0.0).powi(2);
    for &x in grid {
        let amps = geometry.amplitudes(x);
        let amps = [amps.0, amps.1];
        let mut value = 0.0;
        for (i, a) in amps.iter().enumerate() {
            for (j, b) in amps.iter().enumerate() {
                value += (rho[(i, j)] * a * b.conj()).re;
            }
        }
        let value = value.max(0.0);
        intensity.push(value);
        let envelope = 0.5 * (amps[0].norm_sqr() + amps[1].norm_sqr());
        if x.abs() <= window && envelope > 1e-6 * peak_envelope {
            ratio.push(value / probability / envelope);
        }
    }
    if ratio.len() < 2 {
        return Err(Error::InvalidParameter(
            "screen grid does not resolve the central fringe".into(),
        ));
    }
    let r_max = ratio.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let r_min = ratio.iter().copied().fold(f64::INFINITY, f64::min);
    let visibility = if r_max + r_min > 0.0 {
        ((r_max - r_min) / (r_max + r_min)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let intensity_normalized = intensity.iter().map(|v| v / probability).collect();
    Ok(ScreenProfile {
        mode,
        geometry,
        integral: trapezoid(grid, &intensity),
        xs: grid.to_vec(),
        intensity,
        intensity_normalized,
        visibility,
        post_selection_probability: probability,
    })
}
