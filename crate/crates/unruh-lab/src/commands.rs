//! Subcommand implementations: resolve the configuration, run the core
//! library, write artifacts, and map every failure onto the exit-code
//! contract (2 validation, 3 I/O, 4 no result).
//!
//! Resolution means filling defaults in place — the demonstration search
//! box, the derived regularization, the tuned gap — so the configuration
//! embedded in each artifact names exactly what was computed.

use rayon::prelude::*;
use serde::Serialize;
use unruh_core::math::complex_norm;
use unruh_core::oscillatory::{
    eval_pair, spectrum_scan, OscillatoryError, Regularization, SpectrumRow,
};
use unruh_core::states::{
    catalysis_fraction, coherent_excitation_probability, fock_probabilities,
    general_state_probability, ProbabilityContext, StateError,
};
use unruh_core::trajectory::{
    check_phase_rate, check_timelike, reconstruct_trajectory, PhaseFunction, TrajectoryError,
};
use unruh_core::transparency::{pre_scan_gap, transparency_report, TransparencyError};
use unruh_core::unruh::{thermal_spectrum_check, UnruhError, UnruhSpec};
use unruh_core::Complex64;

use crate::config::{
    ReconstructConfig, RegularizationConfig, RunConfig, SearchConfig, StateConfig, UnruhConfig,
};
use crate::output::{self, SpectrumRowOut, SPECTRUM_COLUMNS};
use crate::{AppError, Cli, Command, Format};

/// Load, resolve, dispatch.
pub fn run(cli: &Cli) -> Result<(), AppError> {
    let mut config = RunConfig::load(cli.config.as_deref())?;
    if matches!(cli.command, Command::UnruhCheck) && config.unruh.is_none() {
        config.unruh = Some(UnruhConfig::demo());
    }
    if let Some(epsilon) = cli.epsilon {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(AppError::Validation(format!(
                "--epsilon must be positive and finite (got {epsilon})"
            )));
        }
        config.regularization = Some(RegularizationConfig::AdiabaticTails { epsilon });
        if let Some(unruh) = config.unruh.as_mut() {
            unruh.epsilon = Some(epsilon);
        }
    }
    std::fs::create_dir_all(&cli.out)
        .map_err(|e| AppError::Io(format!("creating {}: {e}", cli.out.display())))?;
    match cli.command {
        Command::Scan => cmd_scan(cli, config),
        Command::FindTransparency => cmd_find_transparency(cli, config),
        Command::Reconstruct => cmd_reconstruct(cli, config),
        Command::Probability => cmd_probability(cli, config),
        Command::UnruhCheck => cmd_unruh_check(cli, config),
    }
}

/// Flag, then the `UNRUH_LAB_THREADS` environment variable, then all
/// cores.  The environment is consulted only when the flag is absent, so a
/// stale or malformed variable can never override an explicit request.
fn thread_count(cli: &Cli) -> Result<usize, AppError> {
    let n = match cli.threads {
        Some(n) => n,
        None => match std::env::var("UNRUH_LAB_THREADS") {
            Ok(raw) => raw.trim().parse::<usize>().map_err(|_| {
                AppError::Validation(format!(
                    "UNRUH_LAB_THREADS must be a positive integer (got {raw:?})"
                ))
            })?,
            Err(_) => std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
        },
    };
    if n == 0 {
        return Err(AppError::Validation(
            "--threads must be at least 1".to_string(),
        ));
    }
    Ok(n)
}

fn oscillatory_error(e: OscillatoryError) -> AppError {
    match e {
        OscillatoryError::NoConvergence { .. } => AppError::NoResult(e.to_string()),
        _ => AppError::Validation(e.to_string()),
    }
}

fn trajectory_error(e: TrajectoryError) -> AppError {
    AppError::Validation(e.to_string())
}

fn state_error(e: StateError) -> AppError {
    match e {
        StateError::DegenerateAmplitudes => AppError::NoResult(e.to_string()),
        _ => AppError::Validation(e.to_string()),
    }
}

fn transparency_error(e: TransparencyError) -> AppError {
    match e {
        TransparencyError::BadSpec { .. } | TransparencyError::EmptyFeasibleRegion => {
            AppError::Validation(e.to_string())
        }
        TransparencyError::Oscillatory(inner) => oscillatory_error(inner),
        _ => AppError::NoResult(e.to_string()),
    }
}

fn unruh_error(e: UnruhError) -> AppError {
    match e {
        UnruhError::WindowTooShort { .. } => AppError::NoResult(e.to_string()),
        UnruhError::Quadrature(inner) => oscillatory_error(inner),
        _ => AppError::Validation(e.to_string()),
    }
}

/// Evaluate the spectrum rows, on one thread or a bounded pool.  Rows are
/// collected by index, so the assembly is identical for every thread count.
fn spectrum_rows(
    pf: &PhaseFunction,
    omegas: &[f64],
    reg: &Regularization,
    threads: usize,
) -> Result<Vec<SpectrumRow>, AppError> {
    if threads <= 1 {
        return spectrum_scan(pf, omegas, reg).map_err(oscillatory_error);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| AppError::Io(format!("thread pool: {e}")))?;
    let rows: Result<Vec<SpectrumRow>, OscillatoryError> = pool.install(|| {
        omegas
            .par_iter()
            .map(|&omega| {
                eval_pair(pf, omega, reg).map(|p| SpectrumRow {
                    omega,
                    i_plus: p.i_plus,
                    i_minus: p.i_minus,
                })
            })
            .collect()
    });
    rows.map_err(oscillatory_error)
}

#[derive(Serialize)]
struct ScanMeta<'a> {
    config: &'a RunConfig,
    columns: [&'static str; 7],
    rows: usize,
    doppler_frequencies: (f64, f64),
}

#[derive(Serialize)]
struct ScanDoc<'a> {
    config: &'a RunConfig,
    doppler_frequencies: (f64, f64),
    rows: Vec<SpectrumRowOut>,
}

fn cmd_scan(cli: &Cli, mut config: RunConfig) -> Result<(), AppError> {
    let phase = config
        .phase
        .ok_or_else(|| AppError::Validation("scan needs a phase block".to_string()))?;
    let pf = phase.build()?;
    let reg = config
        .regularization
        .get_or_insert(RegularizationConfig::default_for(phase.k0))
        .to_core()?;
    let scan_cfg = config.scan.ok_or_else(|| {
        AppError::Validation("scan needs a scan block (omega_min, omega_max, n_omega)".to_string())
    })?;
    let omegas = scan_cfg.grid()?;
    let threads = thread_count(cli)?;
    let rows = spectrum_rows(&pf, &omegas, &reg, threads)?;
    let doppler_frequencies = pf.doppler_frequencies();
    let written = match cli.format {
        Format::Csv => {
            let line = output::config_line(&config)?;
            let path = cli.out.join("spectrum.csv");
            output::write_artifact(&path, &output::spectrum_csv(&line, &rows))?;
            let meta = ScanMeta {
                config: &config,
                columns: SPECTRUM_COLUMNS,
                rows: rows.len(),
                doppler_frequencies,
            };
            output::write_artifact(
                &cli.out.join("spectrum.meta.json"),
                &output::json_document(&meta)?,
            )?;
            path
        }
        Format::Json => {
            let doc = ScanDoc {
                config: &config,
                doppler_frequencies,
                rows: rows.iter().map(SpectrumRowOut::from).collect(),
            };
            let path = cli.out.join("spectrum.json");
            output::write_artifact(&path, &output::json_document(&doc)?)?;
            path
        }
    };
    println!(
        "scanned {} gaps in [{}, {}]; wrote {}",
        rows.len(),
        output::num(scan_cfg.omega_min),
        output::num(scan_cfg.omega_max),
        written.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct PointOut {
    s1: f64,
    #[serde(rename = "T2")]
    t2: f64,
    residual: f64,
    ratio: f64,
    iterations: usize,
}

#[derive(Serialize)]
struct TransparencyDoc<'a> {
    config: &'a RunConfig,
    omega: f64,
    doppler_peaks: (f64, f64),
    points: Vec<PointOut>,
    best: PointOut,
    spectrum: Vec<SpectrumRowOut>,
}

fn cmd_find_transparency(cli: &Cli, mut config: RunConfig) -> Result<(), AppError> {
    let mut search = config.search.unwrap_or_else(SearchConfig::demo);
    let reg = config
        .regularization
        .get_or_insert(RegularizationConfig::default_for(search.k0))
        .to_core()?;
    let omega = match search.omega {
        Some(omega) => omega,
        None => {
            // Tune the gap by pre-scanning the box between the Doppler
            // peaks; the placeholder only has to pass spec validation.
            let placeholder = 0.5 * search.k0 * (search.s0 + search.s2);
            pre_scan_gap(&search.to_spec(placeholder, reg)).map_err(transparency_error)?
        }
    };
    search.omega = Some(omega);
    config.search = Some(search);
    let spec = search.to_spec(omega, reg);
    let report = transparency_report(&spec).map_err(transparency_error)?;
    let points: Vec<PointOut> = report
        .points
        .iter()
        .map(|p| PointOut {
            s1: p.s1,
            t2: p.t2,
            residual: p.residual,
            ratio: p.ratio,
            iterations: p.iterations,
        })
        .collect();
    let best = PointOut {
        s1: report.best.s1,
        t2: report.best.t2,
        residual: report.best.residual,
        ratio: report.best.ratio,
        iterations: report.best.iterations,
    };
    match cli.format {
        Format::Csv => {
            let line = output::config_line(&config)?;
            let mut table = format!("# {line}\ns1,T2,residual,ratio,iterations\n");
            for p in &points {
                table.push_str(&format!(
                    "{},{},{},{},{}\n",
                    output::num(p.s1),
                    output::num(p.t2),
                    output::num(p.residual),
                    output::num(p.ratio),
                    p.iterations
                ));
            }
            output::write_artifact(&cli.out.join("points.csv"), &table)?;
            output::write_artifact(
                &cli.out.join("best_spectrum.csv"),
                &output::spectrum_csv(&line, &report.spectrum),
            )?;
        }
        Format::Json => {
            let doc = TransparencyDoc {
                config: &config,
                omega,
                doppler_peaks: report.doppler_peaks,
                points,
                best,
                spectrum: report.spectrum.iter().map(SpectrumRowOut::from).collect(),
            };
            output::write_artifact(
                &cli.out.join("report.json"),
                &output::json_document(&doc)?,
            )?;
        }
    }
    println!(
        "{} transparency points at omega = {}; best |I-/I+| = {:.3e} at (s1 = {}, T2 = {})",
        report.points.len(),
        output::num(omega),
        report.best.ratio,
        output::num(report.best.s1),
        output::num(report.best.t2),
    );
    Ok(())
}

#[derive(Serialize)]
struct SampleOut {
    tau: f64,
    t: f64,
    x: f64,
    u0: f64,
    u1: f64,
}

#[derive(Serialize)]
struct WaveVectorOut {
    t: f64,
    x: f64,
    y: f64,
    z: f64,
}

#[derive(Serialize)]
struct TrajectoryMeta<'a> {
    config: &'a RunConfig,
    samples: usize,
    wave_vector: WaveVectorOut,
    max_timelike_violation: f64,
    max_phase_rate_violation: f64,
}

#[derive(Serialize)]
struct TrajectoryDoc<'a> {
    config: &'a RunConfig,
    wave_vector: WaveVectorOut,
    max_timelike_violation: f64,
    max_phase_rate_violation: f64,
    samples: Vec<SampleOut>,
}

fn cmd_reconstruct(cli: &Cli, mut config: RunConfig) -> Result<(), AppError> {
    let phase = config
        .phase
        .ok_or_else(|| AppError::Validation("reconstruct needs a phase block".to_string()))?;
    let pf = phase.build()?;
    let rec = *config
        .reconstruct
        .get_or_insert_with(|| ReconstructConfig::default_for(&phase));
    rec.validate()?;
    let traj = reconstruct_trajectory(&pf, rec.tau_min, rec.tau_max, rec.n_samples)
        .map_err(trajectory_error)?;
    let max_timelike_violation = check_timelike(&traj);
    let max_phase_rate_violation = check_phase_rate(&traj);
    let wave_vector = WaveVectorOut {
        t: traj.wave_vector.t,
        x: traj.wave_vector.x,
        y: traj.wave_vector.y,
        z: traj.wave_vector.z,
    };
    let samples: Vec<SampleOut> = traj
        .samples
        .iter()
        .map(|s| SampleOut {
            tau: s.tau,
            t: s.position.t,
            x: s.position.x,
            u0: s.velocity.t,
            u1: s.velocity.x,
        })
        .collect();
    match cli.format {
        Format::Csv => {
            let line = output::config_line(&config)?;
            let mut table = format!("# {line}\ntau,t,x,u0,u1\n");
            for s in &samples {
                table.push_str(&format!(
                    "{},{},{},{},{}\n",
                    output::num(s.tau),
                    output::num(s.t),
                    output::num(s.x),
                    output::num(s.u0),
                    output::num(s.u1)
                ));
            }
            output::write_artifact(&cli.out.join("trajectory.csv"), &table)?;
            let meta = TrajectoryMeta {
                config: &config,
                samples: samples.len(),
                wave_vector,
                max_timelike_violation,
                max_phase_rate_violation,
            };
            output::write_artifact(
                &cli.out.join("trajectory.meta.json"),
                &output::json_document(&meta)?,
            )?;
        }
        Format::Json => {
            let doc = TrajectoryDoc {
                config: &config,
                wave_vector,
                max_timelike_violation,
                max_phase_rate_violation,
                samples,
            };
            output::write_artifact(
                &cli.out.join("trajectory.json"),
                &output::json_document(&doc)?,
            )?;
        }
    }
    println!(
        "reconstructed {} samples on [{}, {}]; max |u.u - 1| = {:.3e}, max |k.u - rate| = {:.3e}",
        rec.n_samples,
        output::num(rec.tau_min),
        output::num(rec.tau_max),
        max_timelike_violation,
        max_phase_rate_violation,
    );
    Ok(())
}

#[derive(Serialize)]
struct AmplitudesOut {
    re_i_plus: f64,
    im_i_plus: f64,
    re_i_minus: f64,
    im_i_minus: f64,
    abs_i_plus: f64,
    abs_i_minus: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum ProbabilityOut {
    Fock {
        n: u64,
        stimulated_unruh: f64,
        absorption: f64,
        total: f64,
    },
    Coherent {
        re: f64,
        im: f64,
        probability: f64,
        catalysis_fraction: f64,
    },
    MeanPhoton {
        nbar: f64,
        probability: f64,
    },
}

#[derive(Serialize)]
struct ProbabilityDoc<'a> {
    config: &'a RunConfig,
    omega: f64,
    amplitudes: AmplitudesOut,
    result: ProbabilityOut,
}

fn cmd_probability(cli: &Cli, mut config: RunConfig) -> Result<(), AppError> {
    let phase = config
        .phase
        .ok_or_else(|| AppError::Validation("probability needs a phase block".to_string()))?;
    let pf = phase.build()?;
    let prob = config.probability.ok_or_else(|| {
        AppError::Validation("probability needs a probability block (omega, state)".to_string())
    })?;
    prob.validate()?;
    let reg = config
        .regularization
        .get_or_insert(RegularizationConfig::default_for(phase.k0))
        .to_core()?;
    let pair = eval_pair(&pf, prob.omega, &reg).map_err(oscillatory_error)?;
    let ctx = ProbabilityContext::new(prob.coupling, prob.omega_k, prob.convention.to_core())
        .map_err(state_error)?;
    let result = match prob.state {
        StateConfig::Fock { n } => {
            let channels = fock_probabilities(&pair, n, &ctx);
            ProbabilityOut::Fock {
                n,
                stimulated_unruh: channels.stimulated_unruh,
                absorption: channels.absorption,
                total: channels.total(),
            }
        }
        StateConfig::Coherent { re, im } => {
            let alpha = Complex64::new(re, im);
            ProbabilityOut::Coherent {
                re,
                im,
                probability: coherent_excitation_probability(&pair, alpha, &ctx),
                catalysis_fraction: catalysis_fraction(&pair, alpha).map_err(state_error)?,
            }
        }
        StateConfig::MeanPhoton { nbar } => ProbabilityOut::MeanPhoton {
            nbar,
            probability: general_state_probability(&pair, nbar, &ctx).map_err(state_error)?,
        },
    };
    let amplitudes = AmplitudesOut {
        re_i_plus: pair.i_plus.re,
        im_i_plus: pair.i_plus.im,
        re_i_minus: pair.i_minus.re,
        im_i_minus: pair.i_minus.im,
        abs_i_plus: complex_norm(pair.i_plus),
        abs_i_minus: complex_norm(pair.i_minus),
    };
    let headline = match &result {
        ProbabilityOut::Fock { total, .. } => *total,
        ProbabilityOut::Coherent { probability, .. } => *probability,
        ProbabilityOut::MeanPhoton { probability, .. } => *probability,
    };
    match cli.format {
        Format::Csv => {
            let line = output::config_line(&config)?;
            let mut table = format!("# {line}\nname,value\n");
            table.push_str(&format!("omega,{}\n", output::num(prob.omega)));
            table.push_str(&format!("abs_I_plus,{}\n", output::num(amplitudes.abs_i_plus)));
            table.push_str(&format!(
                "abs_I_minus,{}\n",
                output::num(amplitudes.abs_i_minus)
            ));
            match &result {
                ProbabilityOut::Fock {
                    n,
                    stimulated_unruh,
                    absorption,
                    total,
                } => {
                    table.push_str(&format!("n,{n}\n"));
                    table.push_str(&format!(
                        "stimulated_unruh,{}\n",
                        output::num(*stimulated_unruh)
                    ));
                    table.push_str(&format!("absorption,{}\n", output::num(*absorption)));
                    table.push_str(&format!("total,{}\n", output::num(*total)));
                }
                ProbabilityOut::Coherent {
                    re,
                    im,
                    probability,
                    catalysis_fraction,
                } => {
                    table.push_str(&format!("alpha_re,{}\n", output::num(*re)));
                    table.push_str(&format!("alpha_im,{}\n", output::num(*im)));
                    table.push_str(&format!("probability,{}\n", output::num(*probability)));
                    table.push_str(&format!(
                        "catalysis_fraction,{}\n",
                        output::num(*catalysis_fraction)
                    ));
                }
                ProbabilityOut::MeanPhoton { nbar, probability } => {
                    table.push_str(&format!("nbar,{}\n", output::num(*nbar)));
                    table.push_str(&format!("probability,{}\n", output::num(*probability)));
                }
            }
            output::write_artifact(&cli.out.join("probability.csv"), &table)?;
        }
        Format::Json => {
            let doc = ProbabilityDoc {
                config: &config,
                omega: prob.omega,
                amplitudes,
                result,
            };
            output::write_artifact(
                &cli.out.join("probability.json"),
                &output::json_document(&doc)?,
            )?;
        }
    }
    println!(
        "excitation probability {} at omega = {}",
        output::num(headline),
        output::num(prob.omega)
    );
    Ok(())
}

#[derive(Serialize)]
struct UnruhSpecOut {
    acceleration: f64,
    k0: f64,
    omegas: Vec<f64>,
    window: (f64, f64),
    epsilon: f64,
}

impl From<&UnruhSpec> for UnruhSpecOut {
    fn from(s: &UnruhSpec) -> Self {
        UnruhSpecOut {
            acceleration: s.acceleration,
            k0: s.k0,
            omegas: s.omegas.clone(),
            window: s.window,
            epsilon: s.epsilon,
        }
    }
}

#[derive(Serialize)]
struct UnruhPointOut {
    omega: f64,
    measured: f64,
    expected: f64,
    rel_dev: f64,
}

#[derive(Serialize)]
struct UnruhSummary<'a> {
    config: &'a RunConfig,
    spec: UnruhSpecOut,
    fitted_slope: f64,
    expected_slope: f64,
    slope_deviation: f64,
    max_deviation: f64,
    temperature: f64,
}

#[derive(Serialize)]
struct UnruhDoc<'a> {
    #[serde(flatten)]
    summary: UnruhSummary<'a>,
    points: Vec<UnruhPointOut>,
}

fn cmd_unruh_check(cli: &Cli, config: RunConfig) -> Result<(), AppError> {
    let unruh_cfg = config
        .unruh
        .clone()
        .expect("unruh block is backfilled before dispatch");
    let spec = unruh_cfg.to_spec()?;
    let report = thermal_spectrum_check(&spec).map_err(unruh_error)?;
    let points: Vec<UnruhPointOut> = report
        .points
        .iter()
        .map(|p| UnruhPointOut {
            omega: p.omega,
            measured: p.measured,
            expected: p.expected,
            rel_dev: p.deviation,
        })
        .collect();
    let summary = UnruhSummary {
        config: &config,
        spec: UnruhSpecOut::from(&spec),
        fitted_slope: report.fitted_slope,
        expected_slope: report.expected_slope,
        slope_deviation: report.slope_deviation,
        max_deviation: report.max_deviation,
        temperature: report.temperature,
    };
    match cli.format {
        Format::Csv => {
            let line = output::config_line(&config)?;
            let mut table = format!("# {line}\nomega,measured,expected,rel_dev\n");
            for p in &points {
                table.push_str(&format!(
                    "{},{},{},{}\n",
                    output::num(p.omega),
                    output::num(p.measured),
                    output::num(p.expected),
                    output::num(p.rel_dev)
                ));
            }
            output::write_artifact(&cli.out.join("unruh.csv"), &table)?;
            output::write_artifact(
                &cli.out.join("unruh.meta.json"),
                &output::json_document(&summary)?,
            )?;
        }
        Format::Json => {
            let doc = UnruhDoc { summary, points };
            output::write_artifact(&cli.out.join("unruh.json"), &output::json_document(&doc)?)?;
        }
    }
    println!(
        "max relative deviation {:.3e} over {} gaps; fitted slope {} (thermal {})",
        report.max_deviation,
        report.points.len(),
        output::num(report.fitted_slope),
        output::num(report.expected_slope),
    );
    Ok(())
}
