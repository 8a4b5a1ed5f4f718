//! Library results against values computed independently in this file:
//! closed forms, explicit index loops and textbook constructions.

use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use quantum_measurement::entropy::{
    conditional_density, conditional_entropy, mutual_density, mutual_entropy, venn2, venn3,
    DensityMatrix, StateVector,
};
use quantum_measurement::experiments::{
    default_grid, quantum_eraser, schroedinger_cat, schroedinger_cat_from, stern_gerlach,
    stern_gerlach_from, EraserGeometry, EraserMode,
};
use quantum_measurement::hermitian::{
    herm_eig, kron, lie_trotter_product, matrix_exp2, matrix_log2, partial_trace,
    partial_transpose, trotter_limit, ComplexMatrix, HilbertFactorization,
};
use quantum_measurement::measurement::{
    coherent_probabilities, collapse_probabilities, consecutive_measurement, deutsch_kraus_bound,
    entropic_bound, measurement_chain, MeasurementBasisMap,
};
use quantum_measurement::random::{random_density, random_state, trial_rng};
use quantum_measurement::separability::{analyze, werner};
use quantum_measurement::{presets, Error};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn qubits(k: usize) -> HilbertFactorization {
    HilbertFactorization::uniform(2, k).unwrap()
}

fn h2(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Eigenvalues of `[[a, b], [b*, d]]` from the quadratic formula.
fn eig2(a: f64, b: Complex64, d: f64) -> (f64, f64) {
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mean - r, mean + r)
}

/// Partial trace over the second factor by explicit index loops.
fn trace_out_second(m: &ComplexMatrix<f64>, da: usize, db: usize) -> ComplexMatrix<f64> {
    ComplexMatrix::from_fn(da, da, |i, j| {
        (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()
    })
}

fn trace_out_first(m: &ComplexMatrix<f64>, da: usize, db: usize) -> ComplexMatrix<f64> {
    ComplexMatrix::from_fn(db, db, |i, j| {
        (0..da).map(|k| m[(k * db + i, k * db + j)]).sum()
    })
}

#[test]
fn two_by_two_spectrum_matches_quadratic_formula() {
    let b = c(0.3, -0.7);
    let m = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => c(1.5, 0.0),
        (1, 1) => c(-0.25, 0.0),
        (0, 1) => b,
        _ => b.conj(),
    });
    let (lo, hi) = eig2(1.5, b, -0.25);
    let eig = herm_eig(&m, 1e-12).unwrap();
    assert_abs_diff_eq!(eig.eigenvalues[0], lo, epsilon = 1e-13);
    assert_abs_diff_eq!(eig.eigenvalues[1], hi, epsilon = 1e-13);
    assert!(eig.reconstruct().max_abs_diff(&m) < 1e-13);
}

#[test]
fn partial_trace_matches_index_loops() {
    let mut rng = trial_rng(101, 0);
    for (da, db) in [(2, 2), (2, 3), (3, 2), (3, 4)] {
        let f = HilbertFactorization::new(vec![da, db]).unwrap();
        let rho = random_density::<f64, _>(f.clone(), &mut rng).unwrap();
        let a = partial_trace(rho.matrix(), &f, &[0]).unwrap();
        let b = partial_trace(rho.matrix(), &f, &[1]).unwrap();
        assert!(a.max_abs_diff(&trace_out_second(rho.matrix(), da, db)) < 1e-14);
        assert!(b.max_abs_diff(&trace_out_first(rho.matrix(), da, db)) < 1e-14);
    }
}

#[test]
fn partial_transpose_matches_index_swap() {
    let mut rng = trial_rng(102, 0);
    let (da, db) = (2, 3);
    let f = HilbertFactorization::new(vec![da, db]).unwrap();
    let rho = random_density::<f64, _>(f.clone(), &mut rng).unwrap();
    let pt = partial_transpose(rho.matrix(), &f, 1).unwrap();
    for a in 0..da {
        for b in 0..db {
            for a2 in 0..da {
                for b2 in 0..db {
                    let want = rho.matrix()[(a * db + b2, a2 * db + b)];
                    assert_eq!(pt[(a * db + b, a2 * db + b2)], want);
                }
            }
        }
    }
}

#[test]
fn log_and_exp_of_diagonal_matrices() {
    let m = ComplexMatrix::from_diag(&[0.5, 0.25, 2.0]);
    let log = matrix_log2(&m, 1e-12).unwrap();
    assert!(
        log.log
            .max_abs_diff(&ComplexMatrix::from_diag(&[-1.0, -2.0, 1.0]))
            < 1e-14
    );
    let back = matrix_exp2(&log.log).unwrap();
    assert!(back.max_abs_diff(&m) < 1e-14);

    let singular = ComplexMatrix::from_diag(&[1.0, 0.0]);
    let log = matrix_log2(&singular, 1e-12).unwrap();
    assert_eq!(log.rank, 1);
    assert_abs_diff_eq!(log.log[(1, 1)].re, 1e-12f64.log2(), epsilon = 1e-9);
    assert!(
        log.support
            .max_abs_diff(&ComplexMatrix::from_diag(&[1.0, 0.0]))
            < 1e-14
    );
}

#[test]
fn trotter_product_is_exact_for_commuting_pairs() {
    let a = ComplexMatrix::from_diag(&[0.8, 0.2]);
    let b = ComplexMatrix::from_diag(&[0.5, 0.25]);
    let want = ComplexMatrix::from_diag(&[1.6, 0.8]);
    for n in [1, 2, 7, 64] {
        assert!(lie_trotter_product(&a, &b, n).unwrap().max_abs_diff(&want) < 1e-13);
    }
    assert!(trotter_limit(&a, &b).unwrap().max_abs_diff(&want) < 1e-13);
}

#[test]
fn trotter_product_rejects_leaking_kernel() {
    let a = ComplexMatrix::from_diag(&[0.5, 0.5]);
    let b = ComplexMatrix::from_diag(&[1.0, 0.0]);
    assert!(matches!(
        lie_trotter_product(&a, &b, 8),
        Err(Error::SingularOnSupport(_))
    ));
    assert!(matches!(
        lie_trotter_product(&a, &a, 0),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn kron_matches_block_formula() {
    let a = ComplexMatrix::from_fn(2, 2, |i, j| c((i + 2 * j) as f64, 1.0));
    let b = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64 - j as f64, (i * j) as f64));
    let k = kron(&a, &b);
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(k[(i, j)], a[(i / 3, j / 3)] * b[(i % 3, j % 3)]);
        }
    }
}

#[test]
fn figure_one_cases() {
    let golden = [
        ("case1", [1.0, 1.0, 2.0, 1.0, 1.0, 0.0]),
        ("case2", [1.0, 1.0, 1.0, 0.0, 0.0, 1.0]),
        ("case3", [1.0, 1.0, 0.0, -1.0, -1.0, 2.0]),
        ("bell", [1.0, 1.0, 0.0, -1.0, -1.0, 2.0]),
    ];
    for (name, want) in golden {
        let v = venn2(&presets::preset(name).unwrap()).unwrap();
        let got = [
            v.s_a,
            v.s_b,
            v.s_ab,
            v.s_a_given_b,
            v.s_b_given_a,
            v.s_a_mutual_b,
        ];
        for (g, w) in got.iter().zip(want) {
            assert_abs_diff_eq!(*g, w, epsilon = 1e-12);
        }
    }
}

#[test]
fn ghz_ternary_diagram() {
    let v = venn3(&presets::preset("ghz").unwrap()).unwrap();
    for x in [v.s_a, v.s_b, v.s_c, v.s_ab, v.s_ac, v.s_bc] {
        assert_abs_diff_eq!(x, 1.0, epsilon = 1e-12);
    }
    assert_abs_diff_eq!(v.s_abc, 0.0, epsilon = 1e-12);
    for x in [v.s_a_given_bc, v.s_b_given_ac, v.s_c_given_ab] {
        assert_abs_diff_eq!(x, -1.0, epsilon = 1e-12);
    }
    for x in [
        v.s_a_mutual_b_given_c,
        v.s_a_mutual_c_given_b,
        v.s_b_mutual_c_given_a,
    ] {
        assert_abs_diff_eq!(x, 1.0, epsilon = 1e-12);
    }
    assert_abs_diff_eq!(v.s_center, 0.0, epsilon = 1e-12);
    assert!(v.region_defect() < 1e-12);
}

#[test]
fn classical_conditional_is_bayes_ratio() {
    let p = [0.1f64, 0.2, 0.3, 0.4];
    let rho = DensityMatrix::diagonal(&p, qubits(2)).unwrap();
    let pb = [p[0] + p[2], p[1] + p[3]];
    let pa = [p[0] + p[1], p[2] + p[3]];
    let cond = conditional_density(&rho, 1).unwrap();
    let mutual = mutual_density(&rho).unwrap();
    for (a, &qa) in pa.iter().enumerate() {
        for (b, &qb) in pb.iter().enumerate() {
            let k = 2 * a + b;
            assert_abs_diff_eq!(cond.matrix[(k, k)].re, p[k] / qb, epsilon = 1e-12);
            assert_abs_diff_eq!(mutual.matrix[(k, k)].re, qa * qb / p[k], epsilon = 1e-12);
        }
    }
    let s_ab: f64 = p.iter().map(|&x| -x * x.log2()).sum();
    let s_b: f64 = pb.iter().map(|&x| -x * x.log2()).sum();
    let s_a: f64 = pa.iter().map(|&x| -x * x.log2()).sum();
    let ce = conditional_entropy(&rho, 1).unwrap();
    assert_abs_diff_eq!(ce.value, s_ab - s_b, epsilon = 1e-12);
    assert!(ce.discrepancy() < 1e-10);
    let me = mutual_entropy(&rho).unwrap();
    assert_abs_diff_eq!(me.value, s_a + s_b - s_ab, epsilon = 1e-12);
    assert!(me.discrepancy() < 1e-10);
}

#[test]
fn bell_conditional_operator_has_eigenvalue_two() {
    let rho = presets::preset("bell").unwrap();
    let op = conditional_density(&rho, 1).unwrap();
    let eig = op.eigenvalues().unwrap();
    assert_abs_diff_eq!(eig[3], 2.0, epsilon = 1e-10);
    for e in &eig[..3] {
        assert_abs_diff_eq!(*e, 0.0, epsilon = 1e-10);
    }
    // trace form of S(A|B)
    assert_abs_diff_eq!(op.trace_entropy, -1.0, epsilon = 1e-10);
}

#[test]
fn werner_closed_forms() {
    for k in 0..=20 {
        let x = k as f64 / 20.0;
        let rho = werner(x).unwrap();
        let report = analyze(&rho).unwrap();
        let mut cond = report.cond_spectrum_ab.clone();
        cond.sort_by(f64::total_cmp);
        let want_cond = [
            (1.0 - x) / 2.0,
            (1.0 - x) / 2.0,
            (1.0 - x) / 2.0,
            (1.0 + 3.0 * x) / 2.0,
        ];
        for (g, w) in cond.iter().zip(want_cond) {
            assert_abs_diff_eq!(*g, w, epsilon = 1e-10);
        }
        let want_ppt = [
            (1.0 - 3.0 * x) / 4.0,
            (1.0 + x) / 4.0,
            (1.0 + x) / 4.0,
            (1.0 + x) / 4.0,
        ];
        let mut ppt = report.ppt_spectrum.clone();
        ppt.sort_by(f64::total_cmp);
        let mut want_sorted = want_ppt;
        want_sorted.sort_by(f64::total_cmp);
        for (g, w) in ppt.iter().zip(want_sorted) {
            assert_abs_diff_eq!(*g, w, epsilon = 1e-10);
        }
        assert_eq!(report.spectrum_classical, report.ppt_pass, "x = {x}");
    }
}

#[test]
fn stern_gerlach_ledger() {
    let ledger = stern_gerlach(false).unwrap();
    let screen = ledger.stage("screen").unwrap();
    assert_abs_diff_eq!(screen.get("S(AA')").unwrap(), 1.0, epsilon = 1e-10);
    assert_abs_diff_eq!(screen.get("S(Q|AA')").unwrap(), -1.0, epsilon = 1e-10);
    assert_abs_diff_eq!(screen.get("S(QAA')").unwrap(), 0.0, epsilon = 1e-10);
    assert!(ledger.max_total_entropy() < 1e-7);

    let seq = stern_gerlach(true).unwrap();
    let last = seq.last();
    assert_abs_diff_eq!(last.observations["P(x=y)"], 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(last.get("S(x:y)").unwrap(), 1.0, epsilon = 1e-10);
    assert!(last.observations["spin_vs_maximally_mixed"] < 1e-10);

    let up = stern_gerlach_from([c(1.0, 0.0), c(0.0, 0.0)], false).unwrap();
    for stage in &up.stages {
        for v in stage.entropies.values() {
            assert_abs_diff_eq!(*v, 0.0, epsilon = 1e-12);
        }
    }
}

#[test]
fn stern_gerlach_screen_state_is_classically_correlated() {
    // Rebuild (|↑,L,l⟩ + |↓,R,r⟩)/√2 directly and compare ρ_{AA'}.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![0.0; 8];
    amps[0] = h;
    amps[7] = h;
    let psi = StateVector::from_real(&amps, qubits(3)).unwrap();
    let want = psi.reduced_matrix(&[1, 2]).unwrap();
    assert!(want.max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5])) < 1e-15);
    let ledger = stern_gerlach(false).unwrap();
    assert_abs_diff_eq!(ledger.last().observations["P(A=A')"], 1.0, epsilon = 1e-12);
}

#[test]
fn cat_ledger() {
    let ledger = schroedinger_cat(1, false).unwrap();
    let cat = ledger.stage("cat").unwrap();
    assert_abs_diff_eq!(cat.get("S(photon,cat)").unwrap(), 1.0, epsilon = 1e-10);
    assert_abs_diff_eq!(cat.get("S(atom|rest)").unwrap(), -1.0, epsilon = 1e-10);
    assert_abs_diff_eq!(cat.get("S(total)").unwrap(), 0.0, epsilon = 1e-10);

    let observed = schroedinger_cat(2, true).unwrap();
    let obs = observed.stage("observer").unwrap();
    assert_abs_diff_eq!(obs.get("S(atom|rest)").unwrap(), -1.0, epsilon = 1e-10);
    assert_abs_diff_eq!(
        obs.get("S(photon,cat,observer)").unwrap(),
        1.0,
        epsilon = 1e-10
    );
    assert!(observed.max_total_entropy() < 1e-7);

    let calm = schroedinger_cat_from([c(1.0, 0.0), c(0.0, 0.0)], 2, true).unwrap();
    for stage in &calm.stages {
        for v in stage.entropies.values() {
            assert_abs_diff_eq!(*v, 0.0, epsilon = 1e-12);
        }
    }
    assert!(matches!(
        schroedinger_cat(0, false),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        schroedinger_cat(19, true),
        Err(Error::MemoryGuard { .. })
    ));
}

#[test]
fn cat_pack_bipartitions_are_classical() {
    // γ plus five cat atoms form an EPR-nplet once the atom is traced out:
    // every bipartition has a diagonal joint state and mutual entropy 1.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![0.0; 1 << 7];
    amps[0] = h;
    amps[(1 << 7) - 1] = h;
    let oracle = StateVector::from_real(&amps, qubits(7)).unwrap();
    let oracle_pack = oracle.reduced_density(&[1, 2, 3, 4, 5, 6]).unwrap();

    let ledger = schroedinger_cat(5, false).unwrap();
    assert_abs_diff_eq!(
        ledger.stage("cat").unwrap().get("S(photon,cat)").unwrap(),
        1.0,
        epsilon = 1e-10
    );

    let pack = oracle_pack.factorization().clone();
    for mask in 1u32..(1 << 5) {
        let left: Vec<usize> = (0..6).filter(|k| mask & (1 << k) != 0).collect();
        let right = pack.complement(&left);
        let s_l = oracle_pack.subsystem_entropy(&left).unwrap();
        let s_r = oracle_pack.subsystem_entropy(&right).unwrap();
        assert_abs_diff_eq!(s_l + s_r - oracle_pack.entropy(), 1.0, epsilon = 1e-9);
        let joint = oracle_pack.reduce(&[left[0], right[0]]).unwrap();
        assert!(
            joint
                .matrix()
                .max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5]))
                < 1e-12
        );
    }
}

#[test]
fn eraser_intensity_matches_fringe_formula() {
    let g = EraserGeometry::default();
    let grid = default_grid();
    let gauss = |x: f64| (2.0 * std::f64::consts::PI).powf(-0.25) * (-x * x / 4.0).exp();
    let baseline = quantum_eraser(EraserMode::Baseline, g, &grid).unwrap();
    let tagged = quantum_eraser(EraserMode::Tagged, g, &grid).unwrap();
    let erased = quantum_eraser(EraserMode::Erased, g, &grid).unwrap();
    for (k, &x) in grid.iter().enumerate() {
        let envelope = gauss(x).powi(2);
        let fringes = envelope * (1.0 + (10.0 * x).cos());
        assert_abs_diff_eq!(baseline.intensity[k], fringes, epsilon = 1e-12);
        assert_abs_diff_eq!(tagged.intensity[k], envelope, epsilon = 1e-12);
        assert_abs_diff_eq!(erased.intensity[k], 0.5 * fringes, epsilon = 1e-12);
        assert_abs_diff_eq!(erased.intensity_normalized[k], fringes, epsilon = 1e-12);
    }
    assert_abs_diff_eq!(erased.integral, 0.5, epsilon = 1e-6);
    assert_abs_diff_eq!(baseline.integral, 1.0, epsilon = 1e-6);
}

#[test]
fn eraser_rejects_bad_geometry() {
    let grid = default_grid();
    for g in [
        EraserGeometry {
            d: -1.0,
            w: 1.0,
            kappa: 10.0,
        },
        EraserGeometry {
            d: 0.0,
            w: 0.0,
            kappa: 10.0,
        },
        EraserGeometry {
            d: 0.0,
            w: 1.0,
            kappa: -1.0,
        },
        EraserGeometry {
            d: 0.0,
            w: 3.0,
            kappa: 10.0,
        },
    ] {
        assert!(matches!(
            quantum_eraser(EraserMode::Erased, g, &grid),
            Err(Error::InvalidParameter(_))
        ));
    }
}

#[test]
fn consecutive_marginals_and_collapse() {
    let mut rng = trial_rng(103, 0);
    for n in 2..=4 {
        let alpha = random_state::<f64, _>(HilbertFactorization::single(n), &mut rng).unwrap();
        let basis = MeasurementBasisMap::random(n, &mut rng);
        let out = consecutive_measurement(alpha.amplitudes(), &basis).unwrap();
        let rho_a = out.rho_ab.reduce(&[0]).unwrap();
        let p: Vec<f64> = alpha.amplitudes().iter().map(|a| a.norm_sqr()).collect();
        assert!(rho_a.matrix().max_abs_diff(&ComplexMatrix::from_diag(&p)) < 1e-10);

        let rho_b = out.rho_ab.reduce(&[1]).unwrap();
        let u = basis.matrix();
        for j in 0..n {
            let q: f64 = (0..n).map(|i| p[i] * u[(i, j)].norm_sqr()).sum();
            assert_abs_diff_eq!(rho_b.matrix()[(j, j)].re, q, epsilon = 1e-10);
            assert_abs_diff_eq!(
                collapse_probabilities(alpha.amplitudes(), &basis)[j],
                q,
                epsilon = 1e-12
            );
        }
        let coherent = coherent_probabilities(alpha.amplitudes(), &basis);
        let collapsed = collapse_probabilities(alpha.amplitudes(), &basis);
        let gap: f64 = coherent
            .iter()
            .zip(&collapsed)
            .map(|(a, b)| (a - b).abs())
            .sum();
        assert!(gap > 1e-6, "random bases should not commute");
    }
}

#[test]
fn eigenstate_input_saturates() {
    let theta = 0.4f64;
    let basis = MeasurementBasisMap::rotation(theta);
    let out = consecutive_measurement(&[c(1.0, 0.0), c(0.0, 0.0)], &basis).unwrap();
    assert_abs_diff_eq!(out.record.s_a, 0.0, epsilon = 1e-12);
    let want = h2(theta.cos().powi(2));
    assert_abs_diff_eq!(out.record.s_a + out.record.s_b, want, epsilon = 1e-10);
    assert_abs_diff_eq!(entropic_bound(&basis), want, epsilon = 1e-12);
    assert_abs_diff_eq!(
        deutsch_kraus_bound(&basis),
        -theta.cos().powi(2).max(theta.sin().powi(2)).log2(),
        epsilon = 1e-12
    );
}

#[test]
fn chain_is_epr_nplet() {
    let alpha = [c(0.6, 0.0), c(0.0, 0.8)];
    let chain = measurement_chain(&alpha, 3).unwrap();
    let amps = chain.psi.amplitudes();
    assert_abs_diff_eq!(amps[0].re, 0.6, epsilon = 1e-15);
    assert_abs_diff_eq!(amps[15].im, 0.8, epsilon = 1e-15);
    let rest: f64 = amps[1..15].iter().map(|a| a.norm_sqr()).sum();
    assert_eq!(rest, 0.0);
    assert_abs_diff_eq!(chain.ancilla_entropy().unwrap(), h2(0.36), epsilon = 1e-12);
}

#[test]
fn single_precision_core() {
    let h = std::f32::consts::FRAC_1_SQRT_2;
    let bell = StateVector::<f32>::new(
        vec![
            num_complex::Complex::new(h, 0.0),
            num_complex::Complex::new(0.0, 0.0),
            num_complex::Complex::new(0.0, 0.0),
            num_complex::Complex::new(h, 0.0),
        ],
        qubits(2),
    )
    .unwrap();
    let v = venn2(&bell.density().unwrap()).unwrap();
    assert!((v.s_a_given_b + 1.0).abs() < 1e-4);
    assert!((v.s_a_mutual_b - 2.0).abs() < 1e-4);
}
