//! Unitary measurement: discrete von Neumann entangling shifts, ancilla
//! amplification chains, consecutive measurements of two observables, and
//! the entropic uncertainty bounds that follow.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::entropy::{DensityMatrix, StateVector};
use crate::error::{Error, Result};
use crate::hermitian::{ComplexMatrix, HilbertFactorization};
use crate::scalar::{shannon_entropy, Real};

/// Largest state vector a simulation may allocate, in qubit equivalents.
pub const MEMORY_GUARD_QUBITS: f64 = 20.0;
/// Above this dimension the global entropy is obtained by Schmidt duality
/// instead of diagonalizing the full projector.
const FULL_SPECTRUM_LIMIT: usize = 256;

/// Overlap matrix `U_ij = ⟨b_j|a_i⟩` between the eigenbases of the first and
/// second observable.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementBasisMap<T> {
    u: ComplexMatrix<T>,
}

impl<T: Real> MeasurementBasisMap<T> {
    /// Fails unless `U†U = 1` within the Hermitian tolerance.
    pub fn new(u: ComplexMatrix<T>) -> Result<Self> {
        let n = u.ensure_square()?;
        let defect = u
            .adjoint()
            .matmul(&u)?
            .max_abs_diff(&ComplexMatrix::identity(n));
        if defect > T::hermitian_tol() {
            return Err(Error::InvalidParameter(format!(
                "basis map is not unitary (max |U^H U - 1| = {:e})",
                defect.as_f64()
            )));
        }
        Ok(Self { u })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            u: ComplexMatrix::identity(n),
        }
    }

    /// Real qubit rotation with `|U_11|² = |U_22|² = cos²θ`.
    pub fn rotation(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        let z = T::zero();
        let u = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex::new(c, z),
                Complex::new(s, z),
                Complex::new(-s, z),
                Complex::new(c, z),
            ],
        )
        .expect("2x2");
        Self { u }
    }

    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            u: crate::random::random_unitary(n, rng),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    /// `q_{j|i} = |U_ij|²`: row `i` is the outcome distribution of the second
    /// measurement on the `i`-th eigenstate of the first.
    pub fn transition_probabilities(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.u[(i, j)].norm_sqr()).collect())
            .collect()
    }
}

fn memory_guard(dims: &[usize]) -> Result<()> {
    let required: f64 = dims.iter().map(|&d| (d as f64).log2()).sum();
    if required > MEMORY_GUARD_QUBITS + 1e-9 {
        return Err(Error::MemoryGuard {
            required,
            limit: MEMORY_GUARD_QUBITS,
        });
    }
    Ok(())
}

/// Permutation unitary `|i, k⟩ → |i, (k + i) mod n⟩` on system ⊗ ancilla.
pub fn cnot_general<T: Real>(n: usize) -> Result<ComplexMatrix<T>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "shift gate needs n >= 2, got {n}"
        )));
    }
    let mut m = ComplexMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for k in 0..n {
            m[(i * n + (k + i) % n, i * n + k)] = Complex::new(T::one(), T::zero());
        }
    }
    Ok(m)
}

/// Applies the shift `|c, t⟩ → |c, (t + sign·c) mod d_t⟩` between two factors
/// of `psi` without forming the full operator.
pub fn apply_controlled_shift<T: Real>(
    psi: &StateVector<T>,
    control: usize,
    target: usize,
    inverse: bool,
) -> Result<StateVector<T>> {
    let f = psi.factorization();
    f.check_index(control)?;
    f.check_index(target)?;
    if control == target {
        return Err(Error::InvalidParameter(
            "control and target must differ".into(),
        ));
    }
    let dt = f.dims()[target];
    let strides = f.strides();
    let mut out = vec![Complex::zero(); f.total()];
    for (idx, &amp) in psi.amplitudes().iter().enumerate() {
        if amp.is_zero() {
            continue;
        }
        let c = (idx / strides[control]) % f.dims()[control];
        let t = (idx / strides[target]) % dt;
        let shift = c % dt;
        let nt = if inverse {
            (t + dt - shift) % dt
        } else {
            (t + shift) % dt
        };
        let new_idx = idx - t * strides[target] + nt * strides[target];
        out[new_idx] = amp;
    }
    Ok(StateVector::from_parts_unchecked(out, f.clone()))
}

/// Applies a single-factor operator `u` to factor `factor`.
pub fn apply_local<T: Real>(
    psi: &StateVector<T>,
    factor: usize,
    u: &ComplexMatrix<T>,
) -> Result<StateVector<T>> {
    let f = psi.factorization();
    f.check_index(factor)?;
    let d = f.dims()[factor];
    if u.rows() != d || u.cols() != d {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator on factor of dimension {d}",
            u.rows(),
            u.cols()
        )));
    }
    let stride = f.strides()[factor];
    let amps = psi.amplitudes();
    let mut out = vec![Complex::zero(); f.total()];
    for (idx, slot) in out.iter_mut().enumerate() {
        let row = (idx / stride) % d;
        let base = idx - row * stride;
        *slot = (0..d)
            .map(|col| u[(row, col)] * amps[base + col * stride])
            .sum();
    }
    Ok(StateVector::from_parts_unchecked(out, f.clone()))
}

fn input_state<T: Real>(alpha: &[Complex<T>]) -> Result<StateVector<T>> {
    if alpha.len() < 2 {
        return Err(Error::InvalidParameter(
            "system dimension must be at least 2".into(),
        ));
    }
    StateVector::new(alpha.to_vec(), HilbertFactorization::single(alpha.len()))
}

fn ancilla_zero<T: Real>(n: usize) -> StateVector<T> {
    StateVector::basis(HilbertFactorization::single(n), &[0]).expect("n >= 1")
}

/// A system entangled with a pack of `m` ancillas, all of dimension `N`.
/// Factor 0 is the system; factors `1..=m` are the ancillas.
#[derive(Clone, Debug)]
pub struct ChainState<T> {
    pub psi: StateVector<T>,
    pub dim: usize,
    pub ancillas: usize,
    pub alpha: Vec<Complex<T>>,
    /// `p_i = |α_i|²`.
    pub probabilities: Vec<T>,
}

impl<T: Real> ChainState<T> {
    pub fn ancilla_factors(&self) -> Vec<usize> {
        (1..=self.ancillas).collect()
    }

    /// Entropy of the whole chain. Diagonalizes `|ψ⟩⟨ψ|` up to dimension
    /// 256; beyond that uses the Schmidt duality with the empty subsystem.
    pub fn global_entropy(&self) -> Result<T> {
        global_entropy(&self.psi)
    }

    /// `S(anc)`: entropy of the ancilla pack with the system ignored.
    pub fn ancilla_entropy(&self) -> Result<T> {
        self.psi.subsystem_entropy(&self.ancilla_factors())
    }

    /// `S(Q|anc) = S(Q anc) − S(anc)`.
    pub fn system_conditional_entropy(&self) -> Result<T> {
        Ok(self.global_entropy()? - self.ancilla_entropy()?)
    }

    /// `ρ_anc = Tr_Q |ψ⟩⟨ψ|`.
    pub fn ancilla_density(&self) -> Result<DensityMatrix<T>> {
        self.psi.reduced_density(&self.ancilla_factors())
    }

    /// Joint outcome distribution of ancillas `a` and `b` (factor indices).
    pub fn pair_distribution(&self, a: usize, b: usize) -> Result<Vec<Vec<T>>> {
        let rho = self.psi.reduced_matrix(&[a.min(b), a.max(b)])?;
        let n = self.dim;
        Ok((0..n)
            .map(|i| (0..n).map(|j| rho[(i * n + j, i * n + j)].re).collect())
            .collect())
    }
}

pub(crate) fn global_entropy<T: Real>(psi: &StateVector<T>) -> Result<T> {
    if psi.factorization().total() <= FULL_SPECTRUM_LIMIT {
        Ok(psi.density()?.entropy())
    } else {
        psi.subsystem_entropy(&(0..psi.factorization().len()).collect::<Vec<_>>())
    }
}

/// `|α⟩ ⊗ |0⟩^{⊗m}`.
pub fn chain_initial_state<T: Real>(alpha: &[Complex<T>], m: usize) -> Result<StateVector<T>> {
    let q = input_state(alpha)?;
    let n = alpha.len();
    memory_guard(&vec![n; m + 1])?;
    let zero = ancilla_zero::<T>(n);
    let mut parts = vec![&q];
    parts.extend(std::iter::repeat_n(&zero, m));
    StateVector::product(&parts)
}

/// Entangles the system with `m` fresh ancillas in turn, producing
/// `Σ α_i |i, i, …, i⟩`.
pub fn measurement_chain<T: Real>(alpha: &[Complex<T>], m: usize) -> Result<ChainState<T>> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "a chain needs at least one ancilla".into(),
        ));
    }
    let mut psi = chain_initial_state(alpha, m)?;
    for k in 1..=m {
        psi = apply_controlled_shift(&psi, 0, k, false)?;
    }
    Ok(ChainState {
        psi,
        dim: alpha.len(),
        ancillas: m,
        alpha: alpha.to_vec(),
        probabilities: alpha.iter().map(|a| a.norm_sqr()).collect(),
    })
}

/// Applies the inverse shifts in reverse order, undoing the chain.
pub fn undo_chain<T: Real>(chain: &ChainState<T>) -> Result<StateVector<T>> {
    let mut psi = chain.psi.clone();
    for k in (1..=chain.ancillas).rev() {
        psi = apply_controlled_shift(&psi, 0, k, true)?;
    }
    Ok(psi)
}

/// Joint readings of two ancilla packs that measured the same observable.
#[derive(Clone, Debug, Serialize)]
pub struct RepeatOutcome<T> {
    /// `joint[i][j]`: probability that the first pack reads `i` and the second `j`.
    pub joint: Vec<Vec<T>>,
    /// Probability of ancillas within one pack disagreeing.
    pub inconsistent_mass: T,
    #[serde(skip)]
    pub state: Option<StateVector<T>>,
}

impl<T: Real> RepeatOutcome<T> {
    pub fn off_diagonal_mass(&self) -> T {
        let mut s = T::zero();
        for (i, row) in self.joint.iter().enumerate() {
            for (j, &p) in row.iter().enumerate() {
                if i != j {
                    s += p;
                }
            }
        }
        s
    }
}

/// Measures the system again with a second pack of `m2` ancillas in the same
/// basis.
pub fn repeat_measurement<T: Real>(chain: &ChainState<T>, m2: usize) -> Result<RepeatOutcome<T>> {
    if m2 == 0 {
        return Err(Error::InvalidParameter(
            "second pack needs at least one ancilla".into(),
        ));
    }
    let n = chain.dim;
    let m1 = chain.ancillas;
    memory_guard(&vec![n; 1 + m1 + m2])?;
    let zero = ancilla_zero::<T>(n);
    let mut parts = vec![&chain.psi];
    parts.extend(std::iter::repeat_n(&zero, m2));
    let mut psi = StateVector::product(&parts)?;
    for k in m1 + 1..=m1 + m2 {
        psi = apply_controlled_shift(&psi, 0, k, false)?;
    }

    let f = psi.factorization().clone();
    let mut joint = vec![vec![T::zero(); n]; n];
    let mut inconsistent = T::zero();
    for (idx, amp) in psi.amplitudes().iter().enumerate() {
        let p = amp.norm_sqr();
        if p.is_zero() {
            continue;
        }
        let digits = f.digits(idx);
        let pack1 = &digits[1..=m1];
        let pack2 = &digits[m1 + 1..];
        let uniform = |pack: &[usize]| pack.iter().all(|&d| d == pack[0]);
        if uniform(pack1) && uniform(pack2) {
            joint[pack1[0]][pack2[0]] += p;
        } else {
            inconsistent += p;
        }
    }
    Ok(RepeatOutcome {
        joint,
        inconsistent_mass: inconsistent,
        state: Some(psi),
    })
}

/// Entropy bookkeeping of a consecutive measurement, in bits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UncertaintyRecord<T> {
    pub s_a: T,
    pub s_b: T,
    pub s_ab: T,
    pub s_b_given_a: T,
    /// Shannon entropy of the second measurement's outcome distribution.
    pub h_q: T,
    pub bound_ours: T,
    pub bound_dk: T,
}

#[derive(Clone, Debug)]
pub struct ConsecutiveOutcome<T> {
    /// `|QAB⟩` with factors (system, first ancilla, second ancilla).
    pub state: StateVector<T>,
    pub rho_ab: DensityMatrix<T>,
    pub record: UncertaintyRecord<T>,
}

/// Measures the first observable with ancilla A, re-expresses the system in
/// the second observable's eigenbasis, and measures it with ancilla B.
pub fn consecutive_measurement<T: Real>(
    alpha: &[Complex<T>],
    basis: &MeasurementBasisMap<T>,
) -> Result<ConsecutiveOutcome<T>> {
    let n = basis.dim();
    if alpha.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "state has dimension {} but basis map has {n}",
            alpha.len()
        )));
    }
    let psi0 = chain_initial_state(alpha, 2)?;
    let psi = apply_controlled_shift(&psi0, 0, 1, false)?;
    // |a_i⟩ = Σ_j U_ij |b_j⟩, so the change of basis acts as Uᵀ.
    let psi = apply_local(&psi, 0, &basis.matrix().transpose())?;
    let psi = apply_controlled_shift(&psi, 0, 2, false)?;
    let rho_ab = psi.reduced_density(&[1, 2])?;

    let s_a = rho_ab.subsystem_entropy(&[0])?;
    let s_b = rho_ab.subsystem_entropy(&[1])?;
    let s_ab = rho_ab.entropy();
    let q = collapse_probabilities(alpha, basis);
    let record = UncertaintyRecord {
        s_a,
        s_b,
        s_ab,
        s_b_given_a: s_ab - s_a,
        h_q: shannon_entropy(&q),
        bound_ours: entropic_bound(basis),
        bound_dk: deutsch_kraus_bound(basis),
    };
    Ok(ConsecutiveOutcome {
        state: psi,
        rho_ab,
        record,
    })
}

/// `q_j = Σ_i |α_i|² |U_ij|²`, the second-measurement distribution after a
/// first measurement.
pub fn collapse_probabilities<T: Real>(
    alpha: &[Complex<T>],
    basis: &MeasurementBasisMap<T>,
) -> Vec<T> {
    let q = basis.transition_probabilities();
    let n = basis.dim();
    (0..n)
        .map(|j| (0..n).map(|i| alpha[i].norm_sqr() * q[i][j]).sum())
        .collect()
}

/// `|Σ_i α_i U_ij|²`, the distribution without a first measurement.
pub fn coherent_probabilities<T: Real>(
    alpha: &[Complex<T>],
    basis: &MeasurementBasisMap<T>,
) -> Vec<T> {
    let u = basis.matrix();
    let n = basis.dim();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| alpha[i] * u[(i, j)])
                .sum::<Complex<T>>()
                .norm_sqr()
        })
        .collect()
}

/// `min_i H[|U_ij|²]` over rows `i`.
pub fn entropic_bound<T: Real>(basis: &MeasurementBasisMap<T>) -> T {
    basis
        .transition_probabilities()
        .iter()
        .map(|row| shannon_entropy(row))
        .fold(T::infinity(), |a, b| a.min(b))
}

/// `−log₂ max_{ij} |U_ij|²`.
pub fn deutsch_kraus_bound<T: Real>(basis: &MeasurementBasisMap<T>) -> T {
    let c = basis
        .transition_probabilities()
        .iter()
        .flatten()
        .fold(T::zero(), |a, &b| a.max(b));
    -c.log2()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaRow<T> {
    pub theta: T,
    pub bound_ours: T,
    pub bound_dk: T,
}

pub const THETA_CSV_HEADER: &str = "theta,bound_ours,bound_dk";

/// Both bounds for qubit rotations over `grid ⊂ [0, π/2]`.
pub fn theta_sweep<T: Real>(grid: &[T]) -> Result<Vec<ThetaRow<T>>> {
    let upper = T::lit(std::f64::consts::FRAC_PI_2) + T::lit(1e-12);
    grid.iter()
        .map(|&theta| {
            if !(theta >= T::zero() && theta <= upper) {
                return Err(Error::InvalidParameter(format!(
                    "theta {theta} outside [0, pi/2]"
                )));
            }
            let basis = MeasurementBasisMap::rotation(theta);
            Ok(ThetaRow {
                theta,
                bound_ours: entropic_bound(&basis),
                bound_dk: deutsch_kraus_bound(&basis),
            })
        })
        .collect()
}
