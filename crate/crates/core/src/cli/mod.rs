//! Command-line front end (`qmeasure`).
//!
//! Every run prints its effective configuration ahead of the result: as the
//! `config` key in JSON output, or as a `# config:` comment line in CSV.
//! Exit status is 0 on success, 2 for invalid input and 3 when a numerical
//! guard trips.

mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

pub use format::{csv_row, sig12};

use crate::entropy::{venn2, venn3, DensityMatrix};
use crate::error::{Error, Result};
use crate::experiments::{
    default_grid, quantum_eraser, schroedinger_cat, stern_gerlach, stern_gerlach_from,
    EntropyLedger, EraserGeometry, EraserMode, SCREEN_CSV_HEADER,
};
use crate::hermitian::HilbertFactorization;
use crate::measurement::{
    chain_initial_state, coherent_probabilities, collapse_probabilities, consecutive_measurement,
    measurement_chain, repeat_measurement, theta_sweep, undo_chain, MeasurementBasisMap,
    THETA_CSV_HEADER,
};
use crate::random::{random_state, trial_rng};
use crate::scalar::shannon_entropy;
use crate::separability::{
    analyze_with_tolerance, conjecture_trial, werner_threshold_sweep, CRITERION_TOL,
    WERNER_CSV_HEADER,
};
use crate::{io, presets};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "qmeasure",
    version,
    about = "Quantum measurement and conditional-entropy toolkit"
)]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Slack on the separability criteria.
    #[arg(long, global = true)]
    pub criterion_tol: Option<f64>,
    /// Tolerance on trace, Hermiticity and positivity of input densities.
    #[arg(long, global = true)]
    pub density_tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct StateSource {
    /// Named state: bell, case1, case2, case3, ghz, werner:<x>, nplet:<m>.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub preset: Option<String>,
    /// Matrix file in the {"dims", "re", "im"} format.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Two-set entropy diagram of a bipartite state.
    Venn2(StateSource),
    /// Three-set entropy diagram of a tripartite state.
    Venn3(StateSource),
    /// Conditional-spectrum and partial-transpose verdicts.
    Separability(StateSource),
    /// Both criteria across the Werner family.
    WernerSweep {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
    /// Random separable states against the conditional-spectrum criterion.
    Conjecture {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// Factor dimensions as `AxB`.
        #[arg(long, default_value = "2x2")]
        dims: String,
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Both uncertainty bounds for qubit rotations on `[0, π/2]`.
    UncertaintySweep {
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Entangles a system with a chain of ancillas.
    Chain {
        /// Outcome probabilities `|α_i|²`, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "dim")]
        probs: Option<Vec<f64>>,
        /// Draw a random system state of this dimension instead.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 1)]
        ancillas: usize,
        /// Measure again with a second pack of this many ancillas.
        #[arg(long)]
        repeat: Option<usize>,
        /// Include the ancilla density in the matrix file format.
        #[arg(long)]
        export_density: bool,
    },
    /// Two consecutive measurements related by a basis map.
    Consecutive {
        /// Qubit rotation angle.
        #[arg(long, conflicts_with_all = ["unitary_file", "dim"])]
        theta: Option<f64>,
        /// Basis map in the matrix file format.
        #[arg(long, conflicts_with = "dim")]
        unitary_file: Option<PathBuf>,
        /// Haar-random basis map of this dimension.
        #[arg(long)]
        dim: Option<usize>,
        /// Probabilities `|α_i|²`; random when omitted.
        #[arg(long, value_delimiter = ',')]
        probs: Option<Vec<f64>>,
    },
    /// Scripted scenarios.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    SternGerlach {
        /// Second field gradient instead of a screen.
        #[arg(long)]
        sequential: bool,
        /// Prepare a σ_z eigenstate instead of a σ_x one.
        #[arg(long)]
        spin_up: bool,
    },
    Eraser {
        #[arg(long, value_enum, default_value_t = EraserMode::Erased)]
        mode: EraserMode,
        #[arg(long, default_value_t = 0.0)]
        d: f64,
        #[arg(long, default_value_t = 1.0)]
        w: f64,
        #[arg(long, default_value_t = 10.0)]
        kappa: f64,
    },
    Cat {
        #[arg(long, default_value_t = 1)]
        atoms: usize,
        #[arg(long)]
        observer: bool,
    },
}

impl Cli {
    fn criterion_tol(&self) -> f64 {
        self.criterion_tol.unwrap_or(CRITERION_TOL)
    }

    fn density_tol(&self) -> f64 {
        self.density_tol
            .unwrap_or(<f64 as crate::Real>::HERMITIAN_TOL)
    }

    /// The effective configuration echoed in every output.
    pub fn config(&self) -> Value {
        json!({
            "seed": self.seed,
            "format": self.format,
            "criterion_tol": self.criterion_tol(),
            "density_tol": self.density_tol(),
            "command": self.command,
        })
    }
}

/// Rendered output: the main document and, for screen profiles in CSV, a
/// JSON sidecar.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub main: String,
    pub sidecar: Option<String>,
}

fn load_state(cli: &Cli, source: &StateSource) -> Result<DensityMatrix<f64>> {
    match (&source.preset, &source.input) {
        (Some(name), _) => presets::preset(name),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidParameter(format!("cannot read {}: {e}", path.display()))
            })?;
            let (m, f) = io::parse_matrix(&text)?;
            DensityMatrix::with_tolerance(m, f, cli.density_tol())
        }
        (None, None) => Err(Error::InvalidParameter("give --preset or --input".into())),
    }
}

fn amplitudes_from_probs(probs: &[f64]) -> Result<Vec<Complex64>> {
    if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::InvalidParameter(
            "probabilities must be finite and non-negative".into(),
        ));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "probabilities sum to {total}, expected 1"
        )));
    }
    Ok(probs
        .iter()
        .map(|p| Complex64::new(p.sqrt(), 0.0))
        .collect())
}

fn random_amplitudes(n: usize, seed: u64, stream: u64) -> Result<Vec<Complex64>> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "system dimension must be at least 2".into(),
        ));
    }
    let psi = random_state::<f64, _>(
        HilbertFactorization::single(n),
        &mut trial_rng(seed, stream),
    )?;
    Ok(psi.amplitudes().to_vec())
}

fn parse_dims(s: &str) -> Result<(usize, usize)> {
    let parsed = s.split_once(['x', 'X']).and_then(|(a, b)| {
        let a: usize = a.trim().parse().ok()?;
        let b: usize = b.trim().parse().ok()?;
        Some((a, b))
    });
    match parsed {
        Some((a, b)) if a >= 2 && b >= 2 => Ok((a, b)),
        _ => Err(Error::InvalidParameter(format!(
            "--dims must look like 2x2, got '{s}'"
        ))),
    }
}

fn linear_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || step <= 0.0 || to < from {
        return Err(Error::InvalidParameter(format!(
            "invalid grid from={from} to={to} step={step}"
        )));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| (from + k as f64 * step).min(to)).collect())
}

fn json_doc(cli: &Cli, result: Value) -> String {
    let mut s = serde_json::to_string_pretty(&json!({ "config": cli.config(), "result": result }))
        .expect("output serializes");
    s.push('\n');
    s
}

fn csv_doc(cli: &Cli, header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("# config: {}\n{header}\n", cli.config());
    for row in rows {
        s.push_str(&row);
        s.push('\n');
    }
    s
}

fn to_value<S: Serialize>(v: &S) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

/// `key,value` rows for a JSON object; nested objects use dotted keys and
/// numeric arrays are space separated.
fn key_value_rows(v: &Value) -> Vec<String> {
    fn cell(x: &Value) -> Option<String> {
        match x {
            Value::Number(n) => Some(sig12(n.as_f64().unwrap_or(f64::NAN))),
            Value::Bool(b) => Some(b.to_string()),
            Value::String(s) => Some(s.clone()),
            Value::Array(items) => items
                .iter()
                .map(cell)
                .collect::<Option<Vec<_>>>()
                .map(|cells| cells.join(" ")),
            _ => None,
        }
    }
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<String>) {
        if let Value::Object(map) = v {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                match x {
                    Value::Object(_) => walk(&key, x, rows),
                    _ => rows.extend(cell(x).map(|c| format!("{key},{c}"))),
                }
            }
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    rows
}

fn ledger_rows(ledger: &EntropyLedger) -> Vec<String> {
    let mut rows = Vec::new();
    for stage in &ledger.stages {
        rows.push(format!(
            "{},S(total),{}",
            stage.name,
            sig12(stage.total_entropy)
        ));
        for (k, v) in stage.entropies.iter().chain(&stage.observations) {
            rows.push(format!("{},{k},{}", stage.name, sig12(*v)));
        }
    }
    rows
}

fn render_simple(cli: &Cli, result: Value) -> Rendered {
    let main = match cli.format {
        OutputFormat::Json => json_doc(cli, result),
        OutputFormat::Csv => csv_doc(cli, "key,value", key_value_rows(&result)),
    };
    Rendered {
        main,
        sidecar: None,
    }
}

/// Executes the command and renders its output without touching the
/// filesystem beyond reading inputs.
pub fn render(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::Venn2(src) => {
            let rho = load_state(cli, src)?;
            Ok(render_simple(cli, to_value(&venn2(&rho)?)))
        }
        Command::Venn3(src) => {
            let rho = load_state(cli, src)?;
            Ok(render_simple(cli, to_value(&venn3(&rho)?)))
        }
        Command::Separability(src) => {
            let rho = load_state(cli, src)?;
            let report = analyze_with_tolerance(&rho, cli.criterion_tol())?;
            let main = match cli.format {
                OutputFormat::Json => json_doc(cli, to_value(&report)),
                OutputFormat::Csv => {
                    let mut rows = vec![
                        format!("max_cond_eig_ab,{}", sig12(report.max_cond_eig_ab)),
                        format!("max_cond_eig_ba,{}", sig12(report.max_cond_eig_ba)),
                        format!("spectrum_classical,{}", report.spectrum_classical),
                        format!("min_ppt_eig,{}", sig12(report.min_ppt_eig)),
                        format!("ppt_pass,{}", report.ppt_pass),
                        format!("cond_entropy_ab,{}", sig12(report.cond_entropy_ab)),
                        format!("cond_entropy_ba,{}", sig12(report.cond_entropy_ba)),
                        format!("nonneg_cond_entropy,{}", report.nonneg_cond_entropy),
                    ];
                    rows.push(format!(
                        "cond_spectrum_ab,{}",
                        csv_row(&report.cond_spectrum_ab).replace(',', " ")
                    ));
                    rows.push(format!(
                        "cond_spectrum_ba,{}",
                        csv_row(&report.cond_spectrum_ba).replace(',', " ")
                    ));
                    rows.push(format!(
                        "ppt_spectrum,{}",
                        csv_row(&report.ppt_spectrum).replace(',', " ")
                    ));
                    csv_doc(cli, "key,value", rows)
                }
            };
            Ok(Rendered {
                main,
                sidecar: None,
            })
        }
        Command::WernerSweep { from, to, step } => {
            let grid = linear_grid(*from, *to, *step)?;
            let rows = werner_threshold_sweep(&grid)?;
            let main = match cli.format {
                OutputFormat::Json => json_doc(cli, to_value(&rows)),
                OutputFormat::Csv => csv_doc(
                    cli,
                    WERNER_CSV_HEADER,
                    rows.iter().map(|r| {
                        format!(
                            "{},{},{},{},{}",
                            sig12(r.x),
                            sig12(r.cond_eig_max),
                            sig12(r.ppt_eig_min),
                            r.spectrum_classical,
                            r.ppt_pass
                        )
                    }),
                ),
            };
            Ok(Rendered {
                main,
                sidecar: None,
            })
        }
        Command::Conjecture {
            trials,
            dims,
            k_min,
            k_max,
            jobs,
        } => {
            let dims = parse_dims(dims)?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(*jobs)
                .build()
                .map_err(|e| {
                    Error::InvalidParameter(format!("cannot start {jobs} workers: {e}"))
                })?;
            let outcome =
                pool.install(|| conjecture_trial(*trials, dims, *k_min..=*k_max, cli.seed))?;
            let main = match cli.format {
                OutputFormat::Json => json_doc(cli, to_value(&outcome)),
                OutputFormat::Csv => {
                    let mut s = csv_doc(
                        cli,
                        "trial,k,max_cond_eig_ab,max_cond_eig_ba,cond_entropy_ab,cond_entropy_ba",
                        outcome.counterexamples.iter().map(|c| {
                            format!(
                                "{},{},{}",
                                c.trial,
                                c.k,
                                csv_row(&[
                                    c.max_cond_eig_ab,
                                    c.max_cond_eig_ba,
                                    c.cond_entropy_ab,
                                    c.cond_entropy_ba
                                ])
                            )
                        }),
                    );
                    s.insert_str(
                        s.find('\n').expect("config line") + 1,
                        &format!(
                            "# summary: trials={} counterexamples={} disagreements={} max_cond_eig_seen={} min_cond_entropy_seen={}\n",
                            outcome.trials,
                            outcome.counterexamples.len(),
                            outcome.disagreements.len(),
                            sig12(outcome.max_cond_eig_seen),
                            sig12(outcome.min_cond_entropy_seen)
                        ),
                    );
                    s
                }
            };
            Ok(Rendered {
                main,
                sidecar: None,
            })
        }
        Command::UncertaintySweep { points } => {
            if *points < 2 {
                return Err(Error::InvalidParameter(
                    "--points must be at least 2".into(),
                ));
            }
            let half_pi = std::f64::consts::FRAC_PI_2;
            let grid: Vec<f64> = (0..*points)
                .map(|k| half_pi * k as f64 / (*points - 1) as f64)
                .collect();
            let rows = theta_sweep(&grid)?;
            let main = match cli.format {
                OutputFormat::Json => json_doc(cli, to_value(&rows)),
                OutputFormat::Csv => csv_doc(
                    cli,
                    THETA_CSV_HEADER,
                    rows.iter()
                        .map(|r| csv_row(&[r.theta, r.bound_ours, r.bound_dk])),
                ),
            };
            Ok(Rendered {
                main,
                sidecar: None,
            })
        }
        Command::Chain {
            probs,
            dim,
            ancillas,
            repeat,
            export_density,
        } => {
            let alpha = match (probs, dim) {
                (Some(p), _) => amplitudes_from_probs(p)?,
                (None, Some(n)) => random_amplitudes(*n, cli.seed, 0)?,
                (None, None) => {
                    return Err(Error::InvalidParameter("give --probs or --dim".into()))
                }
            };
            let chain = measurement_chain(&alpha, *ancillas)?;
            let initial = chain_initial_state(&alpha, *ancillas)?;
            let restored = undo_chain(&chain)?;
            let mut result = json!({
                "dim": chain.dim,
                "ancillas": chain.ancillas,
                "probabilities": chain.probabilities,
                "shannon_entropy": shannon_entropy(&chain.probabilities),
                "global_entropy": chain.global_entropy()?,
                "ancilla_entropy": chain.ancilla_entropy()?,
                "system_conditional_entropy": chain.system_conditional_entropy()?,
                "reversal_fidelity": restored.fidelity(&initial),
            });
            if let Some(m2) = repeat {
                let outcome = repeat_measurement(&chain, *m2)?;
                result["repeat"] = json!({
                    "ancillas": m2,
                    "joint": outcome.joint,
                    "off_diagonal_mass": outcome.off_diagonal_mass(),
                    "inconsistent_mass": outcome.inconsistent_mass,
                });
            }
            if *export_density {
                let rho = chain.ancilla_density()?;
                let text = io::matrix_to_json(rho.matrix(), rho.factorization())?;
                result["ancilla_density"] = serde_json::from_str(&text).expect("valid JSON");
            }
            Ok(render_simple(cli, result))
        }
        Command::Consecutive {
            theta,
            unitary_file,
            dim,
            probs,
        } => {
            let basis = match (theta, unitary_file, dim) {
                (Some(t), _, _) => MeasurementBasisMap::rotation(*t),
                (None, Some(path), _) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::InvalidParameter(format!("cannot read {}: {e}", path.display()))
                    })?;
                    MeasurementBasisMap::new(io::parse_matrix(&text)?.0)?
                }
                (None, None, Some(n)) => {
                    if *n < 2 {
                        return Err(Error::InvalidParameter("--dim must be at least 2".into()));
                    }
                    MeasurementBasisMap::random(*n, &mut trial_rng(cli.seed, 1))
                }
                (None, None, None) => {
                    return Err(Error::InvalidParameter(
                        "give --theta, --unitary-file or --dim".into(),
                    ))
                }
            };
            let alpha = match probs {
                Some(p) => amplitudes_from_probs(p)?,
                None => random_amplitudes(basis.dim(), cli.seed, 0)?,
            };
            let outcome = consecutive_measurement(&alpha, &basis)?;
            let mut result = to_value(&outcome.record);
            result["collapse_probabilities"] = to_value(&collapse_probabilities(&alpha, &basis));
            result["coherent_probabilities"] = to_value(&coherent_probabilities(&alpha, &basis));
            Ok(render_simple(cli, result))
        }
        Command::Experiment(exp) => render_experiment(cli, exp),
    }
}

fn render_experiment(cli: &Cli, exp: &Experiment) -> Result<Rendered> {
    let ledger = match exp {
        Experiment::SternGerlach {
            sequential,
            spin_up,
        } => {
            if *spin_up {
                stern_gerlach_from(
                    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                    *sequential,
                )?
            } else {
                stern_gerlach(*sequential)?
            }
        }
        Experiment::Cat { atoms, observer } => schroedinger_cat(*atoms, *observer)?,
        Experiment::Eraser { mode, d, w, kappa } => {
            let geometry = EraserGeometry {
                d: *d,
                w: *w,
                kappa: *kappa,
            };
            let profile = quantum_eraser(*mode, geometry, &default_grid())?;
            let sidecar = json!({
                "mode": profile.mode,
                "visibility": profile.visibility,
                "geometry": profile.geometry,
                "post_selection_probability": profile.post_selection_probability,
                "integral": profile.integral,
            });
            return Ok(match cli.format {
                OutputFormat::Json => {
                    let mut result = sidecar;
                    result["xs"] = to_value(&profile.xs);
                    result["intensity"] = to_value(&profile.intensity);
                    result["intensity_normalized"] = to_value(&profile.intensity_normalized);
                    Rendered {
                        main: json_doc(cli, result),
                        sidecar: None,
                    }
                }
                OutputFormat::Csv => Rendered {
                    main: csv_doc(
                        cli,
                        SCREEN_CSV_HEADER,
                        profile
                            .xs
                            .iter()
                            .zip(&profile.intensity)
                            .map(|(&x, &i)| csv_row(&[x, i])),
                    ),
                    sidecar: Some(json_doc(cli, sidecar)),
                },
            });
        }
    };
    let main = match cli.format {
        OutputFormat::Json => json_doc(cli, to_value(&ledger)),
        OutputFormat::Csv => csv_doc(cli, "stage,quantity,value", ledger_rows(&ledger)),
    };
    Ok(Rendered {
        main,
        sidecar: None,
    })
}

/// Path of the JSON sidecar written next to a CSV screen profile.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

fn exit_code(err: &Error) -> i32 {
    if err.is_numerical() {
        3
    } else {
        2
    }
}

/// Runs the command and writes its output; returns the process exit status.
pub fn run(cli: &Cli) -> i32 {
    let rendered = match render(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let write = |path: &Path, text: &str| {
        std::fs::write(path, text)
            .map_err(|e| eprintln!("error: cannot write {}: {e}", path.display()))
    };
    match &cli.out {
        Some(path) => {
            if write(path, &rendered.main).is_err() {
                return 2;
            }
            if let Some(side) = &rendered.sidecar {
                if write(&sidecar_path(path), side).is_err() {
                    return 2;
                }
            }
        }
        None => {
            let mut text = rendered.main;
            if let Some(side) = &rendered.sidecar {
                for line in side.lines() {
                    text.push_str("# sidecar: ");
                    text.push_str(line);
                    text.push('\n');
                }
            }
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
    }
    0
}

/// Parses arguments and runs; clap usage errors exit with status 2.
pub fn main_with_args<I, A>(args: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
