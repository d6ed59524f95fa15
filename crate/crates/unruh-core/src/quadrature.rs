//! Brute-force cross-check of the closed-form amplitudes: adaptive
//! Gauss–Kronrod (G7/K15) quadrature of `∫ e^{i(Ωτ ± α(τ))}` with the same
//! regularizations.
//!
//! This path deliberately shares nothing with the Fresnel/Faddeeva closed
//! form — the integrand is evaluated pointwise and panels are refined
//! worst-error-first until the accumulated error estimate drops below the
//! requested tolerance.  Infinite adiabatic tails are handled exactly:
//!
//! * when the tail phase is exactly linear (piecewise profiles), one damped
//!   period is integrated numerically and the remaining periods are summed
//!   as a geometric series — `∫ tail = C/(1-ρ)` with `ρ = e^{-εP}`;
//! * slowly-oscillating tails (`|rate| < ε`) are integrated directly until
//!   the damping is below 1e-19;
//! * tails whose phase rate grows without bound (the uniformly accelerated
//!   profile) are truncated where the rate exceeds `rate_cap`, with the
//!   non-stationary-phase remainder `≤ 2·damping/rate` added to the error
//!   estimate.
//!
//! Results are bit-for-bit deterministic: panel refinement order is a pure
//! function of the inputs.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::math::{cis, complex_norm};
use crate::oscillatory::{OscillatoryError, Regularization, Sign};
use crate::trajectory::PhaseProfile;

/// Tuning knobs of the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Relative accuracy target (against the integral's own magnitude, with
    /// a roundoff floor against the integrand's absolute mass).
    pub rel_tol: f64,
    /// Hard cap on the number of Gauss–Kronrod panel evaluations.
    pub panel_budget: usize,
    /// Phase-rate ceiling beyond which an unbounded-rate tail is truncated
    /// and bounded instead of integrated.
    pub rate_cap: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            rel_tol: 1e-10,
            panel_budget: 1_000_000,
            rate_cap: 3e6,
        }
    }
}

// Nodes and weights of the 7-point Gauss / 15-point Kronrod pair on [-1, 1]
// (Kronrod abscissae; the Gauss nodes are every second one).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One G7/K15 evaluation: returns `(∫f, |K15-G7|, ∫|f|)`.
fn gk15<F: Fn(f64) -> Complex64>(f: &F, lo: f64, hi: f64) -> (Complex64, f64, f64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * complex_norm(fc);
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        let s = f1 + f2;
        resk += WGK[j] * s;
        resabs += WGK[j] * (complex_norm(f1) + complex_norm(f2));
        if j % 2 == 1 {
            resg += WG[j / 2] * s;
        }
    }
    (resk * h, complex_norm((resk - resg) * h), resabs * h)
}

/// A panel awaiting possible refinement.  `weight` scales its contribution
/// (and its error) in the total — used by the geometric tail summation.
struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    err: f64,
    weight: f64,
    seq: u64,
}

impl Panel {
    #[inline]
    fn priority(&self) -> f64 {
        self.err * self.weight
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.priority() == other.priority() && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority()
            .total_cmp(&other.priority())
            .then(self.seq.cmp(&other.seq))
    }
}

/// Worst-error-first adaptive accumulator over weighted panels.
struct Adaptive {
    heap: BinaryHeap<Panel>,
    /// Running Σ value·weight (guides refinement; the final value is
    /// re-summed exactly from the surviving panels).
    value: Complex64,
    /// Running Σ err·weight, plus any fixed truncation bounds.
    err: f64,
    fixed_err: f64,
    resabs: f64,
    panels: usize,
    seq: u64,
}

impl Adaptive {
    fn new() -> Self {
        Adaptive {
            heap: BinaryHeap::new(),
            value: Complex64::new(0.0, 0.0),
            err: 0.0,
            fixed_err: 0.0,
            resabs: 0.0,
            panels: 0,
            seq: 0,
        }
    }

    fn push<F: Fn(f64) -> Complex64>(&mut self, f: &F, lo: f64, hi: f64, weight: f64) {
        let (value, err, resabs) = gk15(f, lo, hi);
        self.value += value * weight;
        self.err += err * weight;
        self.resabs += resabs * weight;
        self.panels += 1;
        self.heap.push(Panel {
            lo,
            hi,
            value,
            err,
            weight,
            seq: self.seq,
        });
        self.seq += 1;
    }

    /// Seed consecutive panels over `[lo, hi]` split at `points`.
    fn push_interval<F: Fn(f64) -> Complex64>(
        &mut self,
        f: &F,
        points: &[f64],
        weight: f64,
    ) {
        for w in points.windows(2) {
            if w[1] > w[0] {
                self.push(f, w[0], w[1], weight);
            }
        }
    }

    fn refine_worst<F: Fn(f64) -> Complex64>(&mut self, f: &F) {
        if let Some(p) = self.heap.pop() {
            self.value -= p.value * p.weight;
            self.err -= p.err * p.weight;
            let mid = 0.5 * (p.lo + p.hi);
            if mid <= p.lo || mid >= p.hi {
                // Interval at floating-point resolution: accept as is.
                self.value += p.value * p.weight;
                self.fixed_err += p.err * p.weight;
                return;
            }
            self.push(f, p.lo, mid, p.weight);
            self.push(f, mid, p.hi, p.weight);
        }
    }

    fn total_err(&self) -> f64 {
        self.err + self.fixed_err
    }

    /// Refine until the refinable error estimate beats `rel_tol` relative
    /// to the running value (with a roundoff floor), then re-sum exactly.
    /// Fixed bounds (tail truncations) are reported through
    /// [`Adaptive::total_err`] but cannot be refined away, so they do not
    /// gate the loop.
    fn run<F: Fn(f64) -> Complex64>(
        &mut self,
        f: &F,
        rel_tol: f64,
        budget: usize,
    ) -> Result<Complex64, OscillatoryError> {
        loop {
            let floor = 1e-16 * self.resabs;
            let target = (rel_tol * complex_norm(self.value)).max(floor);
            if self.err <= target || self.heap.is_empty() {
                break;
            }
            if self.panels >= budget {
                return Err(OscillatoryError::NoConvergence {
                    requested: rel_tol,
                    achieved: self.total_err() / complex_norm(self.value).max(1e-300),
                    panels: self.panels,
                });
            }
            self.refine_worst(f);
        }
        // Drift-free final sum over the surviving panels.
        let mut total = Complex64::new(0.0, 0.0);
        for p in self.heap.iter() {
            total += p.value * p.weight;
        }
        Ok(total)
    }
}

/// Walk breakpoints from `lo` to `hi` so that each panel spans at most ~π of
/// phase (by local rate and curvature) and at most half a damping length.
fn seed_points(
    profile: &dyn PhaseProfile,
    omega: f64,
    sgn: f64,
    lo: f64,
    hi: f64,
    epsilon: Option<f64>,
    budget: usize,
    out: &mut Vec<f64>,
) -> Result<(), OscillatoryError> {
    out.clear();
    out.push(lo);
    let knots = profile.breakpoints();
    let mut next_knot = knots.iter().copied().filter(|&k| k > lo && k < hi);
    let mut pending_knot = next_knot.next();
    let mut t = lo;
    let damp_step = epsilon.map(|e| 0.5 / e).unwrap_or(f64::INFINITY);
    while t < hi {
        let rate = libm::fabs(omega + sgn * profile.alpha_dot(t));
        let curv = libm::fabs(profile.alpha_ddot(t));
        let mut step = (core::f64::consts::PI / (rate + 1e-12))
            .min(libm::sqrt(core::f64::consts::PI / (curv + 1e-12)))
            .min(damp_step)
            .min(hi - lo);
        // Never step over an α̈ discontinuity.
        while let Some(k) = pending_knot {
            if k <= t {
                pending_knot = next_knot.next();
                continue;
            }
            if t + step > k {
                step = k - t;
                pending_knot = next_knot.next();
            }
            break;
        }
        t = (t + step).min(hi);
        out.push(t);
        if out.len() > budget {
            return Err(OscillatoryError::NoConvergence {
                requested: 0.0,
                achieved: f64::INFINITY,
                panels: out.len(),
            });
        }
    }
    let last = out.len() - 1;
    out[last] = hi;
    Ok(())
}

/// Damping factor `e^{-ε·d(τ)}` with `d` the distance from `[lo, hi]`.
#[inline]
fn adiabatic_damping(tau: f64, lo: f64, hi: f64, epsilon: f64) -> f64 {
    let d = if tau < lo {
        lo - tau
    } else if tau > hi {
        tau - hi
    } else {
        return 1.0;
    };
    libm::exp(-epsilon * d)
}

/// Beyond this many damping lengths the tail mass is below 1e-19 of the
/// integrand scale and is accounted for as a fixed error bound instead.
const TAIL_CUT: f64 = 45.0;

/// Independent evaluation of one amplitude by adaptive quadrature.
///
/// For unbounded-rate profiles (no exact tail rates) the fast tail is
/// truncated at `opts.rate_cap`; the certified remainder bound inflates the
/// internal error estimate, so a tolerance the truncation cannot meet
/// surfaces as `NoConvergence` rather than a wrong answer.
pub fn oracle_quadrature(
    profile: &dyn PhaseProfile,
    omega: f64,
    sign: Sign,
    reg: &Regularization,
    opts: &OracleOptions,
) -> Result<Complex64, OscillatoryError> {
    if !omega.is_finite() {
        return Err(OscillatoryError::NonFiniteInput {
            name: "omega",
            value: omega,
        });
    }
    reg.validate()?;
    let sgn = sign.factor();
    match *reg {
        Regularization::HardWindow { tau_min, tau_max } => {
            let f = |t: f64| cis(omega * t + sgn * profile.alpha(t));
            let mut acc = Adaptive::new();
            let mut seeds = Vec::new();
            let (lo_eff, truncated) =
                truncate_fast_past(profile, omega, sgn, tau_min, tau_max, opts.rate_cap);
            if truncated {
                // Dropped piece is non-stationary with rate ≥ cap at both
                // ends: bounded by its two integration-by-parts boundary
                // terms.
                acc.fixed_err += 4.0 / opts.rate_cap;
            }
            seed_points(
                profile,
                omega,
                sgn,
                lo_eff,
                tau_max,
                None,
                opts.panel_budget,
                &mut seeds,
            )?;
            acc.push_interval(&f, &seeds, 1.0);
            acc.run(&f, opts.rel_tol, opts.panel_budget)
        }
        Regularization::AdiabaticTails { epsilon } => {
            let (lo, hi) = profile.core_span();
            match profile.tail_rates() {
                Some(_) => damped_with_exact_tails(profile, omega, sgn, epsilon, opts),
                None => {
                    // No exact tail form: integrate a window wide enough for
                    // the damping to be negligible at the edges.
                    let window = (lo - TAIL_CUT / epsilon, hi + TAIL_CUT / epsilon);
                    damped_windowed(profile, omega, sgn, epsilon, window, opts).map(|r| r.0)
                }
            }
        }
    }
}

/// Damped integral over a finite window plus the analytic continuation of
/// the future tail beyond it; returns `(value, error_bound)`.
///
/// Used directly by the thermal-response checker, where the window is a
/// physical input.  Assumes the phase rate beyond `window.1` has settled
/// (`α̈` negligible) — true for every profile in this crate once
/// `α̇(window.1)` is small — and that any unbounded rate growth lies on the
/// past side.
pub(crate) fn damped_windowed(
    profile: &dyn PhaseProfile,
    omega: f64,
    sgn: f64,
    epsilon: f64,
    window: (f64, f64),
    opts: &OracleOptions,
) -> Result<(Complex64, f64), OscillatoryError> {
    let (lo, hi) = profile.core_span();
    let (w0, w1) = window;
    if !(w0.is_finite() && w1.is_finite() && w0 < w1) {
        return Err(OscillatoryError::BadWindow {
            tau_min: w0,
            tau_max: w1,
        });
    }
    let f = |t: f64| {
        cis(omega * t + sgn * profile.alpha(t)) * adiabatic_damping(t, lo, hi, epsilon)
    };
    let mut acc = Adaptive::new();
    // Clip to the damping reach: beyond TAIL_CUT damping lengths the
    // integrand underflows; the future side is covered by the analytic
    // tail, the past clip is bounded by the remaining damped mass.
    let mut w1 = w1.min(hi + TAIL_CUT / epsilon);
    // The analytic future tail is exact to roundoff once the phase rate has
    // stopped varying, so the numeric edge can stop at the earliest point
    // past the core where the residual curvature drops below the floor.
    // Without this the numeric window would scale as `1/ε` and the cost of
    // a damping refinement would double with every halving of `ε`.
    let tail_flat = |t: f64| {
        let rate = libm::fabs(omega + sgn * profile.alpha_dot(t)).max(epsilon);
        libm::fabs(profile.alpha_ddot(t)) <= 1e-16 * rate * rate
    };
    if w1 > hi && tail_flat(w1) {
        let mut edge = w1;
        if tail_flat(hi) {
            edge = hi;
        } else {
            let mut a = hi;
            for _ in 0..100 {
                let mid = 0.5 * (a + edge);
                if tail_flat(mid) {
                    edge = mid;
                } else {
                    a = mid;
                }
            }
        }
        // Keep the earlier edge only if flatness holds across the rest of
        // the damping reach; a non-monotone rate keeps the full window.
        if (0..=8).all(|m| tail_flat(edge + (w1 - edge) * f64::from(m) / 8.0)) {
            w1 = edge.max(w0);
        }
    }
    let w0 = if w0 < lo - TAIL_CUT / epsilon {
        acc.fixed_err += libm::exp(-TAIL_CUT) / epsilon;
        lo - TAIL_CUT / epsilon
    } else {
        w0
    };
    // Truncate the fast (past) side where the phase rate exceeds the cap,
    // replacing the dropped `(-∞, τ_c]` by its leading integration-by-parts
    // boundary term `u·e^{iφ}/(iφ')` at τ_c.  The certified remainder is
    // second order: `≤ 2u(ε + |φ''|/|φ'|)/φ'²` at τ_c.
    let (lo_eff, truncated) = truncate_fast_past(profile, omega, sgn, w0, w1, opts.rate_cap);
    let mut correction = Complex64::new(0.0, 0.0);
    if truncated {
        let rate_c = omega + sgn * profile.alpha_dot(lo_eff);
        let u_c = adiabatic_damping(lo_eff, lo, hi, epsilon);
        let phase_c = cis(omega * lo_eff + sgn * profile.alpha(lo_eff));
        correction = phase_c * Complex64::new(0.0, -u_c / rate_c);
        let curv_ratio = libm::fabs(profile.alpha_ddot(lo_eff)) / libm::fabs(rate_c);
        acc.fixed_err += 2.0 * u_c * (epsilon + curv_ratio) / (rate_c * rate_c);
    } else {
        // Window edge reached with a bounded rate: bound the dropped mass
        // without correcting for it (the stationary point may lie outside).
        let rate0 = libm::fabs(omega + sgn * profile.alpha_dot(w0));
        acc.fixed_err += 2.0 * adiabatic_damping(w0, lo, hi, epsilon) / rate0.max(epsilon);
    }
    let mut seeds = Vec::new();
    seed_points(
        profile,
        omega,
        sgn,
        lo_eff,
        w1,
        Some(epsilon),
        opts.panel_budget,
        &mut seeds,
    )?;
    acc.push_interval(&f, &seeds, 1.0);
    // Future tail beyond w1: the phase rate is constant there to the
    // accuracy of the damping floor, so the tail is elementary.
    let rate1 = omega + sgn * profile.alpha_dot(w1);
    let damp1 = adiabatic_damping(w1, lo, hi, epsilon);
    let tail = cis(omega * w1 + sgn * profile.alpha(w1)) * damp1
        / Complex64::new(epsilon, -rate1);
    // Residual curvature of the tail phase contributes at most |α̈|/rate²
    // relative to the tail.
    let curv1 = libm::fabs(profile.alpha_ddot(w1));
    acc.fixed_err += complex_norm(tail) * (curv1 / (rate1 * rate1).max(1e-300)).min(1.0);
    let value = acc.run(&f, opts.rel_tol, opts.panel_budget)? + tail + correction;
    let err = acc.total_err();
    Ok((value, err))
}

/// Full adiabatic evaluation when both tails have exactly linear phase.
fn damped_with_exact_tails(
    profile: &dyn PhaseProfile,
    omega: f64,
    sgn: f64,
    epsilon: f64,
    opts: &OracleOptions,
) -> Result<Complex64, OscillatoryError> {
    let (lo, hi) = profile.core_span();
    let (rate_past, rate_future) = profile.tail_rates().expect("caller checked tail_rates");
    let f = |t: f64| {
        cis(omega * t + sgn * profile.alpha(t)) * adiabatic_damping(t, lo, hi, epsilon)
    };
    let mut acc = Adaptive::new();
    let mut seeds = Vec::new();
    if hi > lo {
        seed_points(
            profile,
            omega,
            sgn,
            lo,
            hi,
            None,
            opts.panel_budget,
            &mut seeds,
        )?;
        acc.push_interval(&f, &seeds, 1.0);
    }
    for (side_rate, future) in [(rate_past, false), (rate_future, true)] {
        let tail_rate = omega + sgn * side_rate;
        let abs_rate = libm::fabs(tail_rate);
        if abs_rate >= epsilon {
            // Geometric summation: one damped period numerically, the rest
            // as the exact series Σ ρⁿ with ρ = e^{-εP}.
            let period = 2.0 * core::f64::consts::PI / abs_rate;
            let weight = 1.0 / -libm::expm1(-epsilon * period);
            let (a, b) = if future {
                (hi, hi + period)
            } else {
                (lo - period, lo)
            };
            seed_points(profile, omega, sgn, a, b, Some(epsilon), opts.panel_budget, &mut seeds)?;
            acc.push_interval(&f, &seeds, weight);
        } else {
            // Slow phase: integrate straight through the damping.
            let reach = TAIL_CUT / epsilon;
            let (a, b) = if future {
                (hi, hi + reach)
            } else {
                (lo - reach, lo)
            };
            seed_points(profile, omega, sgn, a, b, Some(epsilon), opts.panel_budget, &mut seeds)?;
            acc.push_interval(&f, &seeds, 1.0);
            acc.fixed_err += libm::exp(-TAIL_CUT) / epsilon;
        }
    }
    acc.run(&f, opts.rel_tol, opts.panel_budget)
}

/// If the phase rate grows beyond `rate_cap` toward the past edge of
/// `[w0, w1]`, move the edge in to where the rate reaches the cap; returns
/// the effective edge and whether truncation happened.  Relies on `α̇`
/// growing monotonically toward the past, which holds for every profile
/// here.
fn truncate_fast_past(
    profile: &dyn PhaseProfile,
    omega: f64,
    _sgn: f64,
    w0: f64,
    w1: f64,
    rate_cap: f64,
) -> (f64, bool) {
    // α̇ ≥ cap + |Ω| guarantees |Ω ± α̇| ≥ cap for either sign.
    let dot_cap = rate_cap + libm::fabs(omega);
    if profile.alpha_dot(w0) <= dot_cap {
        return (w0, false);
    }
    // Bisect for α̇ = cap (α̇ decreasing away from the past edge).
    let (mut fast, mut slow) = (w0, w1);
    for _ in 0..200 {
        let mid = 0.5 * (fast + slow);
        if profile.alpha_dot(mid) > dot_cap {
            fast = mid;
        } else {
            slow = mid;
        }
        if slow - fast < 1e-12 * (1.0 + libm::fabs(slow)) {
            break;
        }
    }
    (slow, true)
}
