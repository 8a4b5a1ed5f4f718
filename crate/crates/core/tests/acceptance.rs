//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Run with `cargo test --test acceptance`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::time::Instant;

use quantum_measurement::entropy::{conditional_density, venn2, venn3};
use quantum_measurement::experiments::{default_grid, quantum_eraser, EraserGeometry, EraserMode};
use quantum_measurement::hermitian::{
    lie_trotter_product, trotter_limit, ComplexMatrix, HilbertFactorization,
};
use quantum_measurement::measurement::{
    chain_initial_state, consecutive_measurement, entropic_bound, measurement_chain,
    repeat_measurement, theta_sweep, undo_chain, MeasurementBasisMap,
};
use quantum_measurement::random::{random_density, random_state, random_unitary, trial_rng};
use quantum_measurement::separability::{analyze, conjecture_trial, werner, WernerState};
use quantum_measurement::{presets, shannon_entropy, Result};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict {
        pass,
        detail: detail.into(),
    })
}

fn qubits(k: usize) -> HilbertFactorization {
    HilbertFactorization::uniform(2, k).unwrap()
}

fn venn_golden() -> Result<Verdict> {
    let cases = [
        ("case1", [1.0, 0.0, 1.0]),
        ("case2", [0.0, 1.0, 0.0]),
        ("case3", [-1.0, 2.0, -1.0]),
    ];
    let mut worst = 0.0f64;
    for (name, want) in cases {
        let v = venn2(&presets::preset(name)?)?;
        let got = [v.s_a_given_b, v.s_a_mutual_b, v.s_b_given_a];
        for (g, w) in got.iter().zip(want) {
            worst = worst.max((g - w).abs());
        }
    }
    verdict(
        worst <= 1e-9,
        format!("max deviation {worst:.2e} (tol 1e-9)"),
    )
}

fn ghz_diagram() -> Result<Verdict> {
    let ghz = presets::preset("ghz")?;
    let v = venn3(&ghz)?;
    let mut worst = 0.0f64;
    for c in [v.s_a_given_bc, v.s_b_given_ac, v.s_c_given_ab] {
        worst = worst.max((c + 1.0).abs());
    }
    for m in [
        v.s_a_mutual_b_given_c,
        v.s_a_mutual_c_given_b,
        v.s_b_mutual_c_given_a,
    ] {
        worst = worst.max((m - 1.0).abs());
    }
    worst = worst.max(v.s_center.abs());
    let case2 = venn2(&presets::case2())?;
    let mut trace_out = 0.0f64;
    for drop in 0..3 {
        let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
        let w = venn2(&ghz.reduce(&keep)?)?;
        for (a, b) in [
            (w.s_a, case2.s_a),
            (w.s_b, case2.s_b),
            (w.s_ab, case2.s_ab),
            (w.s_a_given_b, case2.s_a_given_b),
            (w.s_b_given_a, case2.s_b_given_a),
            (w.s_a_mutual_b, case2.s_a_mutual_b),
        ] {
            trace_out = trace_out.max((a - b).abs());
        }
    }
    verdict(
        worst <= 1e-7 && trace_out <= 1e-7,
        format!("region deviation {worst:.2e}, trace-out deviation {trace_out:.2e} (tol 1e-7)"),
    )
}

fn werner_threshold() -> Result<Verdict> {
    let mut grid: Vec<f64> = (0..=300).map(|k| k as f64 / 300.0).collect();
    grid.push(1.0 / 3.0);
    let mut spectrum_dev = 0.0f64;
    let mut wrong = Vec::new();
    for &x in &grid {
        let rho = werner(x)?;
        let mut got = conditional_density(&rho, 1)?.eigenvalues()?;
        got.sort_by(f64::total_cmp);
        let want = WernerState::new(x)?.conditional_spectrum();
        for (g, w) in got.iter().zip(want) {
            spectrum_dev = spectrum_dev.max((g - w).abs());
        }
        let report = analyze(&rho)?;
        let expect_pass = x <= 1.0 / 3.0;
        if report.spectrum_classical != expect_pass || report.ppt_pass != expect_pass {
            wrong.push(x);
        }
    }
    let boundary = analyze(&werner(1.0 / 3.0)?)?;
    let boundary_ok = boundary.spectrum_classical && boundary.ppt_pass;
    verdict(
        spectrum_dev <= 1e-10 && wrong.is_empty() && boundary_ok,
        format!(
            "spectrum deviation {spectrum_dev:.2e} (tol 1e-10), {} misclassified of {}, x=1/3 passes both: {boundary_ok}",
            wrong.len(),
            grid.len()
        ),
    )
}

fn uncertainty_bounds() -> Result<Verdict> {
    let grid: Vec<f64> = (0..201).map(|k| FRAC_PI_2 * k as f64 / 200.0).collect();
    let rows = theta_sweep(&grid)?;
    let mut closed_dev = 0.0f64;
    let mut order_bad = 0;
    let mut equality_bad = 0;
    for r in &rows {
        let (c2, s2) = (r.theta.cos().powi(2), r.theta.sin().powi(2));
        let ours = shannon_entropy(&[c2, s2]);
        let dk = -c2.max(s2).log2();
        closed_dev = closed_dev
            .max((r.bound_ours - ours).abs())
            .max((r.bound_dk - dk).abs());
        let gap = r.bound_ours - r.bound_dk;
        if gap < -1e-9 {
            order_bad += 1;
        }
        let special = [0.0, FRAC_PI_4, FRAC_PI_2]
            .iter()
            .any(|t| (r.theta - t).abs() < 1e-12);
        if special != (gap.abs() <= 1e-9) {
            equality_bad += 1;
        }
    }
    verdict(
        closed_dev <= 1e-9 && order_bad == 0 && equality_bad == 0,
        format!(
            "closed-form deviation {closed_dev:.2e} (tol 1e-9), order violations {order_bad}, equality mismatches {equality_bad}"
        ),
    )
}

fn consecutive_identity() -> Result<Verdict> {
    let mut identity_dev = 0.0f64;
    let mut bound_violations = 0;
    for trial in 0..500u64 {
        let mut rng = trial_rng(5, trial);
        let n = 2 + (trial % 4) as usize;
        let alpha = random_state::<f64, _>(HilbertFactorization::single(n), &mut rng)?;
        let basis = MeasurementBasisMap::random(n, &mut rng);
        let rec = consecutive_measurement(alpha.amplitudes(), &basis)?.record;
        identity_dev = identity_dev.max((rec.s_a + rec.s_b_given_a - rec.h_q).abs());
        if rec.s_a + rec.s_b < entropic_bound(&basis) - 1e-9 {
            bound_violations += 1;
        }
    }
    verdict(
        identity_dev <= 1e-6 && bound_violations == 0,
        format!("identity deviation {identity_dev:.2e} (tol 1e-6), bound violations {bound_violations} of 500"),
    )
}

fn chain_ledger() -> Result<Verdict> {
    let mut worst = 0.0f64;
    let mut off_diag = 0.0f64;
    let mut cases = 0;
    let configs = (1..=6)
        .map(|m| (2usize, m))
        .chain((1..=3).map(|m| (3usize, m)));
    for (i, (n, m)) in configs.enumerate() {
        for rep in 0..3u64 {
            let mut rng = trial_rng(6, 10 * i as u64 + rep);
            let alpha = random_state::<f64, _>(HilbertFactorization::single(n), &mut rng)?;
            let chain = measurement_chain(alpha.amplitudes(), m)?;
            let h = shannon_entropy(&chain.probabilities);
            let s_anc = chain.ancilla_entropy()?;
            worst = worst
                .max(chain.global_entropy()?.abs())
                .max((s_anc - h).abs())
                .max((chain.system_conditional_entropy()? + s_anc).abs());
            if m <= 4 {
                off_diag = off_diag.max(repeat_measurement(&chain, 2)?.off_diagonal_mass());
            }
            cases += 1;
        }
    }
    verdict(
        worst <= 1e-7 && off_diag < 1e-10,
        format!("{cases} chains: ledger deviation {worst:.2e} (tol 1e-7), repeat off-diagonal mass {off_diag:.2e} (< 1e-10)"),
    )
}

fn property_suite() -> Result<Verdict> {
    const N: u64 = 1000;
    let mut araki_lieb = 0;
    let mut bayes = 0;
    let mut ssa = 0;
    let mut unitary = 0;
    let mut center = 0;
    for trial in 0..N {
        let mut rng = trial_rng(7, trial);
        let rho = random_density::<f64, _>(qubits(2), &mut rng)?;
        let (sa, sb, sab) = (
            rho.subsystem_entropy(&[0])?,
            rho.subsystem_entropy(&[1])?,
            rho.entropy(),
        );
        if sab < (sa - sb).abs() - 1e-9 || sab > sa + sb + 1e-9 {
            araki_lieb += 1;
        }
        let v = venn2(&rho)?;
        if (v.s_a_given_b + v.s_a_mutual_b + v.s_b_given_a - sab).abs() > 1e-6
            || (v.s_a_given_b + v.s_a_mutual_b - sa).abs() > 1e-6
        {
            bayes += 1;
        }
        let u = random_unitary::<f64, _>(4, &mut rng);
        if (rho.conjugate_by(&u)?.entropy() - sab).abs() > 1e-9 {
            unitary += 1;
        }
        let pure4 = random_state::<f64, _>(qubits(4), &mut rng)?;
        let tri = pure4.reduced_density(&[0, 1, 2])?;
        if venn3(&tri)?.s_a_mutual_b_given_c < -1e-9 {
            ssa += 1;
        }
        let pure3 = random_state::<f64, _>(qubits(3), &mut rng)?;
        if venn3(&pure3.density()?)?.s_center.abs() > 1e-9 {
            center += 1;
        }
    }
    let total = araki_lieb + bayes + ssa + unitary + center;
    verdict(
        total == 0,
        format!(
            "{N} states each: Araki-Lieb {araki_lieb}, chain identity {bayes}, strong subadditivity {ssa}, unitary invariance {unitary}, pure center {center} violations"
        ),
    )
}

fn conjecture_harness() -> Result<Verdict> {
    let outcome = conjecture_trial(10_000, (2, 2), 1..=4, 8)?;
    verdict(
        outcome.counterexamples.is_empty(),
        format!(
            "10000 separable states: {} counterexamples, max conditional eigenvalue {:.6}, min conditional entropy {:.6}",
            outcome.counterexamples.len(),
            outcome.max_cond_eig_seen,
            outcome.min_cond_entropy_seen
        ),
    )
}

fn eraser_visibility() -> Result<Verdict> {
    let grid = default_grid();
    let g = EraserGeometry::default();
    let tagged = quantum_eraser(EraserMode::Tagged, g, &grid)?;
    let erased = quantum_eraser(EraserMode::Erased, g, &grid)?;
    let recorded = quantum_eraser(EraserMode::Recorded, g, &grid)?;
    let p = erased.post_selection_probability;
    verdict(
        tagged.visibility <= 0.01
            && erased.visibility >= 0.99
            && recorded.visibility <= 0.01
            && (p - 0.5).abs() <= 1e-10,
        format!(
            "tagged {:.2e}, erased {:.6}, recorded {:.2e}, post-selection probability {p:.12}",
            tagged.visibility, erased.visibility, recorded.visibility
        ),
    )
}

fn reversibility() -> Result<Verdict> {
    let mut worst = 1.0f64;
    for trial in 0..10u64 {
        let mut rng = trial_rng(10, trial);
        let n = 2 + (trial % 2) as usize;
        let alpha = random_state::<f64, _>(HilbertFactorization::single(n), &mut rng)?;
        let chain = measurement_chain(alpha.amplitudes(), 4)?;
        let restored = undo_chain(&chain)?;
        let initial = chain_initial_state(alpha.amplitudes(), 4)?;
        worst = worst.min(restored.fidelity(&initial));
    }
    verdict(
        worst >= 1.0 - 1e-10,
        format!("minimum fidelity 1 - {:.2e} (tol 1e-10)", 1.0 - worst),
    )
}

/// Positive definite matrix `U diag(λ) U†` with `λ` uniform on `[1/2, 2]`.
fn random_positive(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> ComplexMatrix<f64> {
    use rand::Rng;
    let u = random_unitary::<f64, _>(n, rng);
    let lambda: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.0)).collect();
    u.matmul(&ComplexMatrix::from_diag(&lambda))
        .and_then(|m| m.matmul(&u.adjoint()))
        .unwrap()
        .hermitize()
}

fn trotter_convergence() -> Result<Verdict> {
    let mut worst_final = 0.0f64;
    let mut non_monotone = 0;
    let mut weakest_commutator = f64::INFINITY;
    for trial in 0..20u64 {
        let mut rng = trial_rng(11, trial);
        let n = 2 + (trial % 3) as usize;
        let a = random_positive(n, &mut rng);
        let b = random_positive(n, &mut rng);
        let comm = (&a.matmul(&b)? - &b.matmul(&a)?).max_abs();
        weakest_commutator = weakest_commutator.min(comm);
        let limit = trotter_limit(&a, &b)?;
        let errors: Vec<f64> = (6..=12)
            .map(|k| Ok(lie_trotter_product(&a, &b, 1u64 << k)?.max_abs_diff(&limit)))
            .collect::<Result<_>>()?;
        if errors.windows(2).any(|w| w[1] > w[0] + 1e-12) {
            non_monotone += 1;
        }
        worst_final = worst_final.max(*errors.last().unwrap());
    }
    verdict(
        worst_final <= 1e-4 && non_monotone == 0,
        format!(
            "20 pairs (min commutator {weakest_commutator:.2e}): max deviation at n=4096 {worst_final:.2e} (tol 1e-4), non-monotone {non_monotone}"
        ),
    )
}

type Criterion = (&'static str, fn() -> Result<Verdict>);

fn main() {
    let criteria: [Criterion; 11] = [
        ("Venn golden values", venn_golden),
        ("GHZ ternary diagram", ghz_diagram),
        ("Werner threshold", werner_threshold),
        ("entropic uncertainty bounds", uncertainty_bounds),
        ("consecutive-measurement identity", consecutive_identity),
        ("measurement-chain ledger", chain_ledger),
        ("property suite", property_suite),
        ("separability conjecture harness", conjecture_harness),
        ("eraser visibilities", eraser_visibility),
        ("reversibility", reversibility),
        ("Trotter convergence", trotter_convergence),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match check() {
            Ok(v) => (v.pass, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {detail} [{:.2}s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
