//! Acceptance gate: eight end-to-end criteria, one per test, each printing
//! a single `ACCEPTANCE <n> PASS/FAIL` line with its measured figures and
//! pinned tolerance.  The lines are written straight to the process stderr
//! so they appear even when the harness captures test output.

use std::io::Write as _;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;
use unruh_core::oscillatory::{eval_i, eval_pair, AmplitudePair, Regularization, Sign};
use unruh_core::quadrature::{oracle_quadrature, OracleOptions};
use unruh_core::states::{
    catalysis_fraction, coherent_excitation_probability, fock_probabilities,
    time_reversed_pair, PrefactorConvention, ProbabilityContext,
};
use unruh_core::trajectory::{
    check_phase_rate, check_timelike, make_piecewise_alpha, reconstruct_trajectory,
    PhaseFunction,
};
use unruh_core::transparency::{demo_search_spec, transparency_report};
use unruh_core::Complex64;

/// Emit one criterion line, bypassing the harness capture.
fn report(line: &str) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// Draw one three-slope family member within the sampled parameter box.
fn random_profile(rng: &mut ChaCha8Rng) -> PhaseFunction {
    let s0 = rng.gen_range(0.2..=4.0);
    let s1 = rng.gen_range(0.2..=4.0);
    let s2 = rng.gen_range(0.2..=4.0);
    let t1 = rng.gen_range(0.5..=5.0);
    // T2 uniform on (T1, 20]: map [0, 1) onto the half-open interval from
    // the top so the lower endpoint is excluded.
    let t2 = t1 + (20.0 - t1) * (1.0 - rng.gen::<f64>());
    make_piecewise_alpha(s0, s1, s2, t1, t2, 1.0).expect("sampled family member is valid")
}

#[test]
fn criterion_1_closed_form_matches_the_quadrature_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // Wide damping: at narrow ε the off-resonant amplitudes fall to ~1e-6
    // where the closed form's own term cancellation (absolute ~1e-13) and
    // the oracle's summation floor both breach 1e-8 *relative*; ε = 0.05
    // lifts the amplitude scale while both routes stay exact.
    let reg = Regularization::AdiabaticTails { epsilon: 5e-2 };
    let opts = OracleOptions::default();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let pf = random_profile(&mut rng);
        for _ in 0..20 {
            let omega = rng.gen_range(0.1..=10.0);
            for sign in [Sign::Plus, Sign::Minus] {
                let closed = eval_i(&pf, omega, sign, &reg).expect("closed form");
                let oracle = oracle_quadrature(&pf, omega, sign, &reg, &opts).expect("oracle");
                worst = worst.max(rel_diff(closed, oracle));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = worst <= 1e-8 && elapsed.as_secs_f64() < 60.0;
    report(&format!(
        "ACCEPTANCE 1 {}: oracle equivalence — worst relative difference {worst:.3e} \
         over 100 profiles x 20 gaps x 2 signs (tol 1e-8) in {:.1}s (budget 60s)",
        verdict(ok),
        elapsed.as_secs_f64()
    ));
    assert!(ok, "worst {worst:.3e}, elapsed {elapsed:?}");
}

#[test]
fn criterion_2_demo_search_finds_certified_transparency() {
    let start = Instant::now();
    let spec = demo_search_spec().expect("demo spec");
    let rep = transparency_report(&spec).expect("demo report");
    let has_point = !rep.points.is_empty() && rep.best.ratio <= 1e-6;
    let norms: Vec<f64> = rep.spectrum.iter().map(|r| r.i_minus.norm()).collect();
    let mut maxima: Vec<(f64, f64)> = Vec::new();
    for i in 1..norms.len().saturating_sub(1) {
        if norms[i] >= norms[i - 1] && norms[i] >= norms[i + 1] {
            maxima.push((norms[i], rep.spectrum[i].omega));
        }
    }
    maxima.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut top: Vec<f64> = maxima.iter().take(2).map(|m| m.1).collect();
    top.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (lo_peak, hi_peak) = (
        rep.doppler_peaks.0.min(rep.doppler_peaks.1),
        rep.doppler_peaks.0.max(rep.doppler_peaks.1),
    );
    let step = rep.spectrum[1].omega - rep.spectrum[0].omega;
    let peaks_ok = top.len() == 2
        && (top[0] - lo_peak).abs() <= step + 1e-12
        && (top[1] - hi_peak).abs() <= step + 1e-12;
    let dip_row = rep
        .spectrum
        .iter()
        .min_by(|a, b| {
            (a.omega - spec.omega)
                .abs()
                .partial_cmp(&(b.omega - spec.omega).abs())
                .unwrap()
        })
        .unwrap();
    let dip_ok = dip_row.i_minus.norm() < dip_row.i_plus.norm();
    let elapsed = start.elapsed();
    let ok = has_point && peaks_ok && dip_ok && elapsed.as_secs_f64() < 300.0;
    report(&format!(
        "ACCEPTANCE 2 {}: transparency — {} points, best |I-/I+| = {:.3e} (tol 1e-6), \
         |I-| peaks at {:?} vs Doppler ({}, {}) within one step {:.3}, dip |I-| < |I+| at \
         omega = {} : {}, in {:.1}s (budget 300s)",
        verdict(ok),
        rep.points.len(),
        rep.best.ratio,
        top,
        lo_peak,
        hi_peak,
        step,
        dip_row.omega,
        dip_ok,
        elapsed.as_secs_f64()
    ));
    assert!(ok);
}

#[test]
fn criterion_3_detailed_balance_across_the_gap_grid() {
    let start = Instant::now();
    let dir = TempDir::new().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_unruh-lab"))
        .env_remove("UNRUH_LAB_THREADS")
        .arg("unruh-check")
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.path().join("unruh.csv")).unwrap();
    let mut max_dev = 0.0f64;
    let mut rows = 0usize;
    for line in csv.lines().skip(2) {
        let fields: Vec<&str> = line.split(',').collect();
        max_dev = max_dev.max(fields[3].parse::<f64>().unwrap().abs());
        rows += 1;
    }
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("unruh.meta.json")).unwrap())
            .unwrap();
    let slope_dev = meta["slope_deviation"].as_f64().unwrap().abs();
    let elapsed = start.elapsed();
    let ok = rows == 6 && max_dev < 0.02 && slope_dev < 0.02 && elapsed.as_secs_f64() < 120.0;
    report(&format!(
        "ACCEPTANCE 3 {}: detailed balance — max ratio deviation {max_dev:.3e} over {rows} \
         gaps, log-slope deviation {slope_dev:.3e} (tol 2e-2 each) in {:.1}s (budget 120s)",
        verdict(ok),
        elapsed.as_secs_f64()
    ));
    assert!(ok);
}

#[test]
fn criterion_4_einstein_weights_are_exact() {
    let pf = make_piecewise_alpha(1.0, 2.5, 2.0, 5.0, 18.0, 1.0).unwrap();
    let reg = Regularization::AdiabaticTails { epsilon: 1e-3 };
    let pair = eval_pair(&pf, 1.3, &reg).unwrap();
    let ctx = ProbabilityContext::new(1.0, 1.0, PrefactorConvention::TwoPiCubed).unwrap();
    let spontaneous = fock_probabilities(&pair, 0, &ctx).stimulated_unruh;
    let reversed = time_reversed_pair(&pair);
    let reversed_spontaneous = fock_probabilities(&reversed, 0, &ctx).stimulated_unruh;
    let mut worst = 0.0f64;
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
    for n in [0u64, 1, 5, 100] {
        let forward = fock_probabilities(&pair, n, &ctx);
        worst = worst.max(rel(forward.stimulated_unruh, (n as f64 + 1.0) * spontaneous));
        let emission = fock_probabilities(&reversed, n, &ctx);
        worst = worst.max(rel(
            emission.stimulated_unruh,
            (n as f64 + 1.0) * reversed_spontaneous,
        ));
        if n == 0 {
            assert_eq!(emission.absorption, 0.0);
        } else {
            worst = worst.max(rel(emission.absorption, n as f64 * spontaneous));
        }
    }
    let ok = worst <= 1e-12;
    report(&format!(
        "ACCEPTANCE 4 {}: Einstein weights — worst relative error {worst:.3e} over \
         n in {{0, 1, 5, 100}}, forward and time-reversed (tol 1e-12)",
        verdict(ok),
    ));
    assert!(ok);
}

#[test]
fn criterion_5_coherent_formulas_hit_their_limits() {
    let pf = make_piecewise_alpha(1.0, 2.5, 2.0, 5.0, 18.0, 1.0).unwrap();
    let reg = Regularization::AdiabaticTails { epsilon: 1e-3 };
    let pair = eval_pair(&pf, 1.3, &reg).unwrap();
    let ctx = ProbabilityContext::new(1.0, 1.0, PrefactorConvention::TwoPiCubed).unwrap();
    // α = 0 reproduces the spontaneous term bit for bit.
    let vacuum = coherent_excitation_probability(&pair, Complex64::new(0.0, 0.0), &ctx);
    let spontaneous = fock_probabilities(&pair, 0, &ctx).total();
    let vacuum_exact = vacuum == spontaneous;
    // With the rotating-wave amplitude removed, the catalysis fraction is
    // the universal curve; 0.9 at |α| = 3 for any phase.
    let mut worst_synthetic = 0.0f64;
    for phase in [0.0f64, 0.7, -2.1] {
        let alpha = Complex64::from_polar(3.0, phase);
        let silenced = AmplitudePair {
            i_plus: pair.i_plus,
            i_minus: Complex64::new(0.0, 0.0),
            omega: pair.omega,
            regularization: pair.regularization,
        };
        let f = catalysis_fraction(&silenced, alpha).unwrap();
        worst_synthetic = worst_synthetic.max((f - 0.9).abs());
    }
    // At a genuinely refined transparency point the deviation from the
    // curve is bounded by the residual amplitude ratio itself.
    let spec = demo_search_spec().unwrap();
    let rep = transparency_report(&spec).unwrap();
    let best_pf = make_piecewise_alpha(
        spec.s0,
        rep.best.s1,
        spec.s2,
        spec.t1,
        rep.best.t2,
        spec.k0,
    )
    .unwrap();
    let best_pair = eval_pair(&best_pf, spec.omega, &spec.regularization).unwrap();
    let measured_ratio = best_pair.i_minus.norm() / best_pair.i_plus.norm();
    let at_point = catalysis_fraction(&best_pair, Complex64::new(3.0, 0.0)).unwrap();
    let point_dev = (at_point - 0.9).abs();
    let ok = vacuum_exact && worst_synthetic <= 1e-12 && point_dev <= measured_ratio;
    report(&format!(
        "ACCEPTANCE 5 {}: coherent formulas — vacuum equals spontaneous exactly: {}, \
         |f - 0.9| = {worst_synthetic:.3e} at |alpha| = 3 with I- = 0 (tol 1e-12), \
         {point_dev:.3e} at the refined point (bound |I-/I+| = {measured_ratio:.3e})",
        verdict(ok),
        vacuum_exact,
    ));
    assert!(ok);
}

#[test]
fn criterion_6_reconstructed_worldlines_are_physical() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst_timelike = 0.0f64;
    let mut worst_rate = 0.0f64;
    for _ in 0..40 {
        let pf = random_profile(&mut rng);
        let t2 = pf.segments().last().unwrap().tau_end;
        let traj = reconstruct_trajectory(&pf, -5.0, t2 + 5.0, 301).unwrap();
        worst_timelike = worst_timelike.max(check_timelike(&traj));
        worst_rate = worst_rate.max(check_phase_rate(&traj));
    }
    let constant = make_piecewise_alpha(1.7, 1.7, 1.7, 5.0, 18.0, 1.0).unwrap();
    let traj = reconstruct_trajectory(&constant, -3.0, 25.0, 101).unwrap();
    worst_timelike = worst_timelike.max(check_timelike(&traj));
    worst_rate = worst_rate.max(check_phase_rate(&traj));
    let u0 = traj.samples[0].velocity;
    let steady = traj
        .samples
        .iter()
        .all(|s| s.velocity.t == u0.t && s.velocity.x == u0.x);
    let ok = worst_timelike < 1e-10 && worst_rate < 1e-10 && steady;
    report(&format!(
        "ACCEPTANCE 6 {}: trajectory physicality — max |u.u - 1| = {worst_timelike:.3e}, \
         max |k.u - rate| = {worst_rate:.3e} over 41 worldlines (tol 1e-10 each); \
         constant-rate velocity is tau-independent: {steady}",
        verdict(ok),
    ));
    assert!(ok);
}

#[test]
fn criterion_7_inertial_amplitudes_reach_the_distributional_limit() {
    let pf = PhaseFunction::inertial(1.0, 1.0).unwrap();
    let mut worst_resonance = 0.0f64;
    let mut bound_ok = true;
    for epsilon in [1e-2, 1e-3, 1e-4] {
        let reg = Regularization::AdiabaticTails { epsilon };
        let i_minus = eval_i(&pf, 1.0, Sign::Minus, &reg).unwrap();
        worst_resonance = worst_resonance.max((epsilon * i_minus.norm() - 2.0).abs() / 2.0);
        let i_plus = eval_i(&pf, 1.0, Sign::Plus, &reg).unwrap();
        let bound = 2.0 * epsilon / (epsilon * epsilon + 4.0) * (1.0 + 1e-6);
        bound_ok &= i_plus.norm() <= bound;
    }
    let ok = worst_resonance <= 1e-3 && bound_ok;
    report(&format!(
        "ACCEPTANCE 7 {}: inertial limits — worst |eps*|I-| - 2|/2 = {worst_resonance:.3e} \
         (tol 1e-3) and |I+| within its Lorentzian bound: {bound_ok}",
        verdict(ok),
    ));
    assert!(ok);
}

#[test]
fn criterion_8_artifacts_are_identical_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let config_path = dir.path().join("config.json");
    std::fs::write(
        &config_path,
        r#"{"phase": {"k0": 1.0, "s0": 1.0, "s1": 2.5, "s2": 2.0, "T1": 5.0, "T2": 18.0},
            "scan": {"omega_min": 0.5, "omega_max": 2.5, "n_omega": 21}}"#,
    )
    .unwrap();
    let run = |args: &[&str], out: &Path, threads: &str| {
        let status = Command::new(env!("CARGO_BIN_EXE_unruh-lab"))
            .env_remove("UNRUH_LAB_THREADS")
            .args(args)
            .arg("--out")
            .arg(out)
            .args(["--threads", threads])
            .status()
            .unwrap();
        assert!(status.success());
    };
    let mut all_equal = true;
    let mut compared = Vec::new();
    for (args, artifacts) in [
        (
            vec!["scan", "--config", config_path.to_str().unwrap()],
            vec!["spectrum.csv", "spectrum.meta.json"],
        ),
        (
            vec!["find-transparency", "--format", "json"],
            vec!["report.json"],
        ),
    ] {
        let one = TempDir::new().unwrap();
        let four = TempDir::new().unwrap();
        run(&args, one.path(), "1");
        run(&args, four.path(), "4");
        for name in artifacts {
            let a = std::fs::read(one.path().join(name)).unwrap();
            let b = std::fs::read(four.path().join(name)).unwrap();
            all_equal &= a == b;
            compared.push(name);
        }
    }
    report(&format!(
        "ACCEPTANCE 8 {}: determinism — {:?} byte-identical between --threads 1 and 4: {}",
        verdict(all_equal),
        compared,
        all_equal,
    ));
    assert!(all_equal);
}
