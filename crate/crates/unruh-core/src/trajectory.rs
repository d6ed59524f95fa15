//! Detector phase functions and closed-form worldline reconstruction.
//!
//! A detector on a timelike worldline `x(τ)` sees a null mode `k` through the
//! phase `α(τ) = k·x(τ)`, whose derivative `α̇ = k·ẋ > 0` is the local Doppler
//! factor times `k⁰`.  For motion in the `x`-plane with `k = (k0, k0, 0, 0)`
//! the worldline can be recovered from `α̇` alone:
//!
//! ```text
//! ẋ⁰ = (k0/α̇ + α̇/k0)/2,   ẋ¹ = (k0/α̇ - α̇/k0)/2,
//! ```
//!
//! which satisfies `ẋ·ẋ = 1` and `k·ẋ = α̇` identically.  This module builds
//! phase functions whose slope `σ = α̇/k0` is a continuous piecewise-linear
//! function of proper time — constant Doppler shift in the far past and
//! future, linear ramps in between — plus the exponential profile of a
//! uniformly accelerated worldline.  Positions are integrated in closed form
//! (logarithms for ramps, linear pieces for constant slope), so the kinematic
//! identities hold to machine precision.

use alloc::vec::Vec;
use core::fmt;

/// Errors from constructing phase functions or sampling trajectories.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrajectoryError {
    /// The slope `σ = α̇/k0` must stay strictly positive (the mode would
    /// otherwise cross the detector's light cone).
    NonPositiveSlope { tau: f64, slope: f64 },
    /// Knot times must be finite and strictly increasing, with at least two
    /// knots for a piecewise profile.
    BadKnots { detail: &'static str },
    /// A scale parameter (`k0`, acceleration, …) must be finite and positive.
    NonPositiveScale { name: &'static str, value: f64 },
    /// Sampling range empty, non-finite, or fewer than two samples requested.
    BadSampling { detail: &'static str },
}

impl fmt::Display for TrajectoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TrajectoryError::NonPositiveSlope { tau, slope } => {
                write!(f, "slope {slope} at τ = {tau} is not strictly positive")
            }
            TrajectoryError::BadKnots { detail } => write!(f, "bad knots: {detail}"),
            TrajectoryError::NonPositiveScale { name, value } => {
                write!(f, "{name} = {value} must be finite and positive")
            }
            TrajectoryError::BadSampling { detail } => write!(f, "bad sampling: {detail}"),
        }
    }
}

impl core::error::Error for TrajectoryError {}

/// One linear ramp of the slope profile: `σ(τ)` interpolates from `s_start`
/// at `tau_start` to `s_end` at `tau_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub tau_start: f64,
    pub tau_end: f64,
    pub s_start: f64,
    pub s_end: f64,
}

impl Segment {
    /// Slope of the ramp, `dσ/dτ`.
    #[inline]
    pub fn ramp_rate(&self) -> f64 {
        (self.s_end - self.s_start) / (self.tau_end - self.tau_start)
    }
}

/// A phase `α(τ)` with continuous piecewise-linear `α̇/k0`, constant outside
/// the knot span.  `α(0)` is pinned to `alpha_at_origin` (default 0).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFunction {
    k0: f64,
    left_slope: f64,
    right_slope: f64,
    segments: Vec<Segment>,
    /// `α` at each segment start, plus one final entry at the last segment end.
    knot_alpha: Vec<f64>,
    alpha_at_origin: f64,
}

fn check_slope(tau: f64, s: f64) -> Result<(), TrajectoryError> {
    if !(s.is_finite() && s > 0.0) {
        return Err(TrajectoryError::NonPositiveSlope { tau, slope: s });
    }
    Ok(())
}

fn check_scale(name: &'static str, v: f64) -> Result<(), TrajectoryError> {
    if !(v.is_finite() && v > 0.0) {
        return Err(TrajectoryError::NonPositiveScale { name, value: v });
    }
    Ok(())
}

impl PhaseFunction {
    /// Constant slope everywhere: `α(τ) = k0·s·τ` (an inertial detector).
    pub fn inertial(k0: f64, slope: f64) -> Result<Self, TrajectoryError> {
        check_scale("k0", k0)?;
        check_slope(0.0, slope)?;
        Ok(PhaseFunction {
            k0,
            left_slope: slope,
            right_slope: slope,
            segments: Vec::new(),
            knot_alpha: Vec::new(),
            alpha_at_origin: 0.0,
        })
    }

    /// Build from slope knots `(τᵢ, sᵢ)`: `σ` interpolates linearly between
    /// consecutive knots and continues flat outside them.
    pub fn from_slope_knots(k0: f64, knots: &[(f64, f64)]) -> Result<Self, TrajectoryError> {
        check_scale("k0", k0)?;
        if knots.len() < 2 {
            return Err(TrajectoryError::BadKnots {
                detail: "need at least two knots (use `inertial` for none)",
            });
        }
        for w in knots.windows(2) {
            if !(w[0].0.is_finite() && w[1].0.is_finite()) {
                return Err(TrajectoryError::BadKnots {
                    detail: "knot times must be finite",
                });
            }
            if !(w[1].0 > w[0].0) {
                return Err(TrajectoryError::BadKnots {
                    detail: "knot times must be strictly increasing",
                });
            }
        }
        for &(tau, s) in knots {
            check_slope(tau, s)?;
        }
        let segments: Vec<Segment> = knots
            .windows(2)
            .map(|w| Segment {
                tau_start: w[0].0,
                tau_end: w[1].0,
                s_start: w[0].1,
                s_end: w[1].1,
            })
            .collect();
        let mut pf = PhaseFunction {
            k0,
            left_slope: knots[0].1,
            right_slope: knots[knots.len() - 1].1,
            segments,
            knot_alpha: Vec::new(),
            alpha_at_origin: 0.0,
        };
        pf.rebuild_knot_alpha();
        Ok(pf)
    }

    /// Shift the overall phase so that `α(0)` equals `alpha0`.
    pub fn with_alpha_at_origin(mut self, alpha0: f64) -> Self {
        let delta = alpha0 - self.alpha_at_origin;
        for a in self.knot_alpha.iter_mut() {
            *a += delta;
        }
        self.alpha_at_origin = alpha0;
        self
    }

    /// Recompute `α` at the knots with `α(0) = alpha_at_origin`.
    fn rebuild_knot_alpha(&mut self) {
        let n = self.segments.len();
        self.knot_alpha.clear();
        self.knot_alpha.resize(n + 1, 0.0);
        // First pass: α relative to the first knot.
        for i in 0..n {
            let seg = self.segments[i];
            let d = seg.tau_end - seg.tau_start;
            let inc = self.k0 * d * (seg.s_start + 0.5 * (seg.s_end - seg.s_start));
            self.knot_alpha[i + 1] = self.knot_alpha[i] + inc;
        }
        // Second pass: shift so α(0) has the requested value.
        let at_zero = self.alpha_relative_to_knots(0.0);
        let delta = self.alpha_at_origin - at_zero;
        for a in self.knot_alpha.iter_mut() {
            *a += delta;
        }
    }

    /// `α(τ)` using the current `knot_alpha` table (whatever its offset).
    fn alpha_relative_to_knots(&self, tau: f64) -> f64 {
        let first = self.segments[0].tau_start;
        let last = self.segments[self.segments.len() - 1].tau_end;
        if tau < first {
            return self.knot_alpha[0] + self.k0 * self.left_slope * (tau - first);
        }
        if tau >= last {
            return self.knot_alpha[self.segments.len()]
                + self.k0 * self.right_slope * (tau - last);
        }
        let i = self.segment_index(tau);
        let seg = self.segments[i];
        let d = tau - seg.tau_start;
        self.knot_alpha[i] + self.k0 * d * (seg.s_start + 0.5 * seg.ramp_rate() * d)
    }

    /// Index of the segment containing `tau` (requires `first ≤ tau < last`).
    fn segment_index(&self, tau: f64) -> usize {
        // Profiles have a handful of segments; a linear scan is both simple
        // and branch-predictable.
        for (i, seg) in self.segments.iter().enumerate() {
            if tau < seg.tau_end {
                return i;
            }
        }
        self.segments.len() - 1
    }

    #[inline]
    pub fn k0(&self) -> f64 {
        self.k0
    }

    #[inline]
    pub fn left_slope(&self) -> f64 {
        self.left_slope
    }

    #[inline]
    pub fn right_slope(&self) -> f64 {
        self.right_slope
    }

    #[inline]
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    #[inline]
    pub fn alpha_at_origin(&self) -> f64 {
        self.alpha_at_origin
    }

    /// Slope `σ = α̇/k0` at `tau`.
    pub fn slope(&self, tau: f64) -> f64 {
        if self.segments.is_empty() {
            return self.left_slope;
        }
        let first = self.segments[0].tau_start;
        let last = self.segments[self.segments.len() - 1].tau_end;
        if tau < first {
            self.left_slope
        } else if tau >= last {
            self.right_slope
        } else {
            let seg = self.segments[self.segment_index(tau)];
            seg.s_start + seg.ramp_rate() * (tau - seg.tau_start)
        }
    }

    /// Asymptotic mode frequencies in the detector frame:
    /// `(k0·σ_past, k0·σ_future)`.
    pub fn doppler_frequencies(&self) -> (f64, f64) {
        (self.k0 * self.left_slope, self.k0 * self.right_slope)
    }
}

/// Common interface of all phase profiles the integrators accept.
pub trait PhaseProfile {
    /// Phase `α(τ)`.
    fn alpha(&self, tau: f64) -> f64;
    /// Phase rate `α̇(τ)` (always strictly positive).
    fn alpha_dot(&self, tau: f64) -> f64;
    /// Phase curvature `α̈(τ)` (piecewise value; jumps at knots are fine).
    fn alpha_ddot(&self, tau: f64) -> f64;
    /// Interval outside of which `α̇` has reached its asymptotic form.
    fn core_span(&self) -> (f64, f64);
    /// Exact constant tail rates `(α̇_past, α̇_future)`, when the tails are
    /// exactly linear in `τ`; `None` for merely asymptotic behaviour.
    fn tail_rates(&self) -> Option<(f64, f64)>;
    /// Proper times where `α̈` is discontinuous, ascending; used as initial
    /// panel boundaries by the quadrature oracle.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

impl PhaseProfile for PhaseFunction {
    fn alpha(&self, tau: f64) -> f64 {
        if self.segments.is_empty() {
            return self.alpha_at_origin + self.k0 * self.left_slope * tau;
        }
        self.alpha_relative_to_knots(tau)
    }

    fn alpha_dot(&self, tau: f64) -> f64 {
        self.k0 * self.slope(tau)
    }

    fn alpha_ddot(&self, tau: f64) -> f64 {
        if self.segments.is_empty() {
            return 0.0;
        }
        let (lo, hi) = self.core_span();
        if tau < lo || tau >= hi {
            0.0
        } else {
            self.k0 * self.segments[self.segment_index(tau)].ramp_rate()
        }
    }

    fn core_span(&self) -> (f64, f64) {
        // The hull of genuine acceleration.  Flat leading or trailing
        // ramps carry the same slope as the adjacent tail, so the motion
        // is still inertial there and tail treatments extend over them
        // exactly; a fully flat profile collapses to a point anchor,
        // making it indistinguishable from the knotless inertial case.
        let first = self.segments.iter().find(|s| s.s_start != s.s_end);
        let last = self.segments.iter().rev().find(|s| s.s_start != s.s_end);
        match (first, last) {
            (Some(f), Some(l)) => (f.tau_start, l.tau_end),
            _ => {
                let anchor = self.segments.first().map_or(0.0, |s| s.tau_start);
                (anchor, anchor)
            }
        }
    }

    fn tail_rates(&self) -> Option<(f64, f64)> {
        Some((self.k0 * self.left_slope, self.k0 * self.right_slope))
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.segments.iter().map(|s| s.tau_start).collect();
        if let Some(last) = self.segments.last() {
            out.push(last.tau_end);
        }
        out
    }
}

/// The standard three-slope profile: Doppler slope `s0` for `τ ≤ 0`, a linear
/// ramp to `s1` on `[0, T1]`, a ramp to `s2` on `[T1, T2]`, then constant
/// `s2`.
pub fn make_piecewise_alpha(
    s0: f64,
    s1: f64,
    s2: f64,
    t1: f64,
    t2: f64,
    k0: f64,
) -> Result<PhaseFunction, TrajectoryError> {
    if !(t1.is_finite() && t2.is_finite() && 0.0 < t1 && t1 < t2) {
        return Err(TrajectoryError::BadKnots {
            detail: "need 0 < T1 < T2",
        });
    }
    PhaseFunction::from_slope_knots(k0, &[(0.0, s0), (t1, s1), (t2, s2)])
}

/// Phase of a uniformly accelerated worldline: `α(τ) = -(k0/a) e^{-aτ}`, so
/// `α̇ = k0 e^{-aτ}` sweeps every Doppler shift from blue (past) to red
/// (future).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialPhase {
    acceleration: f64,
    k0: f64,
}

impl ExponentialPhase {
    #[inline]
    pub fn acceleration(&self) -> f64 {
        self.acceleration
    }

    #[inline]
    pub fn k0(&self) -> f64 {
        self.k0
    }
}

impl PhaseProfile for ExponentialPhase {
    fn alpha(&self, tau: f64) -> f64 {
        -(self.k0 / self.acceleration) * libm::exp(-self.acceleration * tau)
    }

    fn alpha_dot(&self, tau: f64) -> f64 {
        self.k0 * libm::exp(-self.acceleration * tau)
    }

    fn alpha_ddot(&self, tau: f64) -> f64 {
        -self.acceleration * self.alpha_dot(tau)
    }

    fn core_span(&self) -> (f64, f64) {
        (0.0, 0.0)
    }

    fn tail_rates(&self) -> Option<(f64, f64)> {
        None
    }
}

/// Closed-form phase for proper acceleration `a` against a mode of frequency
/// `k0`.
pub fn uniform_acceleration_phase(a: f64, k0: f64) -> Result<ExponentialPhase, TrajectoryError> {
    check_scale("acceleration", a)?;
    check_scale("k0", k0)?;
    Ok(ExponentialPhase {
        acceleration: a,
        k0,
    })
}

/// A four-vector in mostly-minus signature `(+,-,-,-)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const ZERO: FourVector = FourVector {
        t: 0.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// `a·b = a⁰b⁰ - a¹b¹ - a²b² - a³b³`.
    #[inline]
    pub fn minkowski_dot(&self, other: &FourVector) -> f64 {
        self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z
    }
}

/// One sampled point of a reconstructed worldline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub tau: f64,
    pub position: FourVector,
    pub velocity: FourVector,
    pub alpha: f64,
    pub alpha_dot: f64,
}

/// A worldline sampled on a uniform proper-time grid, alongside the null
/// wave vector its phase function refers to.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub wave_vector: FourVector,
}

/// Cumulative antiderivatives `A = ∫ dτ/σ` and `B = ∫ σ dτ` within one
/// linear-slope piece, measured from the piece start.
#[inline]
fn piece_antiderivatives(s_start: f64, ramp: f64, d: f64) -> (f64, f64) {
    let a = if ramp != 0.0 {
        libm::log((s_start + ramp * d) / s_start) / ramp
    } else {
        d / s_start
    };
    let b = d * (s_start + 0.5 * ramp * d);
    (a, b)
}

/// Recover the worldline of a phase function on `n_samples` uniformly spaced
/// proper times in `[tau_min, tau_max]`, with the position zeroed at
/// `tau_min`.
pub fn reconstruct_trajectory(
    pf: &PhaseFunction,
    tau_min: f64,
    tau_max: f64,
    n_samples: usize,
) -> Result<Trajectory, TrajectoryError> {
    if !(tau_min.is_finite() && tau_max.is_finite() && tau_min < tau_max) {
        return Err(TrajectoryError::BadSampling {
            detail: "need finite tau_min < tau_max",
        });
    }
    if n_samples < 2 {
        return Err(TrajectoryError::BadSampling {
            detail: "need at least two samples",
        });
    }

    // Antiderivative tables at the knots, relative to the first knot.
    let nseg = pf.segments.len();
    let mut knot_a = Vec::with_capacity(nseg + 1);
    let mut knot_b = Vec::with_capacity(nseg + 1);
    knot_a.push(0.0);
    knot_b.push(0.0);
    for seg in pf.segments.iter() {
        let (da, db) =
            piece_antiderivatives(seg.s_start, seg.ramp_rate(), seg.tau_end - seg.tau_start);
        knot_a.push(knot_a[knot_a.len() - 1] + da);
        knot_b.push(knot_b[knot_b.len() - 1] + db);
    }

    // A(τ), B(τ) relative to the first knot (or to τ=0 for inertial profiles).
    let eval_ab = |tau: f64| -> (f64, f64) {
        if nseg == 0 {
            return (tau / pf.left_slope, tau * pf.left_slope);
        }
        let first = pf.segments[0].tau_start;
        let last = pf.segments[nseg - 1].tau_end;
        if tau < first {
            let d = tau - first;
            (d / pf.left_slope, d * pf.left_slope)
        } else if tau >= last {
            let d = tau - last;
            (
                knot_a[nseg] + d / pf.right_slope,
                knot_b[nseg] + d * pf.right_slope,
            )
        } else {
            let i = pf.segment_index(tau);
            let seg = pf.segments[i];
            let (da, db) =
                piece_antiderivatives(seg.s_start, seg.ramp_rate(), tau - seg.tau_start);
            (knot_a[i] + da, knot_b[i] + db)
        }
    };

    let (a0, b0) = eval_ab(tau_min);
    let step = (tau_max - tau_min) / (n_samples - 1) as f64;
    let mut samples = Vec::with_capacity(n_samples);
    for j in 0..n_samples {
        let tau = if j + 1 == n_samples {
            tau_max
        } else {
            tau_min + step * j as f64
        };
        let (a, b) = eval_ab(tau);
        let (a, b) = (a - a0, b - b0);
        let sigma = pf.slope(tau);
        let inv = 1.0 / sigma;
        samples.push(TrajectorySample {
            tau,
            position: FourVector {
                t: 0.5 * (a + b),
                x: 0.5 * (a - b),
                y: 0.0,
                z: 0.0,
            },
            velocity: FourVector {
                t: 0.5 * (inv + sigma),
                x: 0.5 * (inv - sigma),
                y: 0.0,
                z: 0.0,
            },
            alpha: pf.alpha(tau),
            alpha_dot: pf.k0 * sigma,
        });
    }
    Ok(Trajectory {
        samples,
        wave_vector: FourVector {
            t: pf.k0,
            x: pf.k0,
            y: 0.0,
            z: 0.0,
        },
    })
}

/// Largest deviation of the four-velocity norm from 1 over the samples.
pub fn check_timelike(traj: &Trajectory) -> f64 {
    let mut worst = 0.0f64;
    for s in traj.samples.iter() {
        worst = worst.max(libm::fabs(s.velocity.minkowski_dot(&s.velocity) - 1.0));
    }
    worst
}

/// Largest deviation of `k·ẋ` from `α̇` over the samples.
pub fn check_phase_rate(traj: &Trajectory) -> f64 {
    let mut worst = 0.0f64;
    for s in traj.samples.iter() {
        worst = worst.max(libm::fabs(traj.wave_vector.minkowski_dot(&s.velocity) - s.alpha_dot));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn demo_pf() -> PhaseFunction {
        make_piecewise_alpha(1.0, 2.5, 2.0, 5.0, 18.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            make_piecewise_alpha(1.0, -0.5, 2.0, 5.0, 18.0, 1.0),
            Err(TrajectoryError::NonPositiveSlope { .. })
        ));
        assert!(matches!(
            make_piecewise_alpha(1.0, 0.5, 2.0, 5.0, 4.0, 1.0),
            Err(TrajectoryError::BadKnots { .. })
        ));
        assert!(matches!(
            make_piecewise_alpha(1.0, 0.5, 2.0, 5.0, 18.0, 0.0),
            Err(TrajectoryError::NonPositiveScale { .. })
        ));
        assert!(matches!(
            PhaseFunction::from_slope_knots(1.0, &[(0.0, 1.0)]),
            Err(TrajectoryError::BadKnots { .. })
        ));
        assert!(PhaseFunction::inertial(2.0, 0.7).is_ok());
    }

    #[test]
    fn alpha_matches_hand_integration() {
        let pf = demo_pf();
        // α(0) = 0 by default.
        assert_eq!(pf.alpha(0.0), 0.0);
        // Over [0, T1]: k0·T1·(s0+s1)/2 (trapezoid of the linear slope).
        let want_t1 = 5.0 * (1.0 + 2.5) / 2.0;
        assert!((pf.alpha(5.0) - want_t1).abs() < 1e-12);
        // Over [T1, T2]: add k0·(T2-T1)·(s1+s2)/2.
        let want_t2 = want_t1 + 13.0 * (2.5 + 2.0) / 2.0;
        assert!((pf.alpha(18.0) - want_t2).abs() < 1e-12);
        // Left tail is exactly linear at slope k0·s0.
        assert!((pf.alpha(-7.0) - (-7.0)).abs() < 1e-12);
        // Right tail linear at k0·s2.
        assert!((pf.alpha(20.0) - (want_t2 + 2.0 * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn alpha_offset_shifts_everything() {
        let pf = demo_pf().with_alpha_at_origin(0.75);
        assert!((pf.alpha(0.0) - 0.75).abs() < 1e-15);
        let base = demo_pf();
        for tau in [-3.0, 2.0, 5.0, 11.0, 18.0, 25.0] {
            assert!((pf.alpha(tau) - base.alpha(tau) - 0.75).abs() < 1e-12);
        }
    }

    #[test]
    fn doppler_frequencies_are_tail_rates() {
        let pf = make_piecewise_alpha(0.5, 1.0, 3.0, 1.0, 4.0, 2.0).unwrap();
        assert_eq!(pf.doppler_frequencies(), (1.0, 6.0));
        assert_eq!(pf.tail_rates(), Some((1.0, 6.0)));
    }

    #[test]
    fn kinematic_identities_hold_to_machine_precision() {
        let pf = demo_pf();
        let traj = reconstruct_trajectory(&pf, -5.0, 25.0, 801).unwrap();
        assert!(check_timelike(&traj) < 1e-12);
        assert!(check_phase_rate(&traj) < 1e-12);
        // Position zeroed at the range start.
        assert_eq!(traj.samples[0].position, FourVector::ZERO);
        // Proper time runs forward, coordinate time faster (time dilation).
        let last = traj.samples.last().unwrap();
        assert!(last.position.t > 25.0 - (-5.0) - 1e-9);
    }

    #[test]
    fn positions_differentiate_to_velocities() {
        let pf = demo_pf();
        let traj = reconstruct_trajectory(&pf, -2.0, 22.0, 4801).unwrap();
        let h = traj.samples[1].tau - traj.samples[0].tau;
        let mut worst = 0.0f64;
        for w in traj.samples.windows(3) {
            let dt = (w[2].position.t - w[0].position.t) / (2.0 * h);
            let dx = (w[2].position.x - w[0].position.x) / (2.0 * h);
            worst = worst.max((dt - w[1].velocity.t).abs());
            worst = worst.max((dx - w[1].velocity.x).abs());
        }
        // Central differences are O(h²); the knots contribute O(h) locally.
        assert!(worst < 5e-3, "worst FD mismatch {worst:e}");
    }

    #[test]
    fn exponential_phase_basics() {
        let ph = uniform_acceleration_phase(0.5, 2.0).unwrap();
        assert!((ph.alpha(0.0) + 2.0 / 0.5).abs() < 1e-15);
        assert!((ph.alpha_dot(0.0) - 2.0).abs() < 1e-15);
        // FD check of α̇ = dα/dτ.
        let h = 1e-6;
        for tau in [-3.0, 0.0, 2.0] {
            let fd = (ph.alpha(tau + h) - ph.alpha(tau - h)) / (2.0 * h);
            assert!((fd - ph.alpha_dot(tau)).abs() < 1e-7);
        }
        assert!(uniform_acceleration_phase(-1.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn alpha_is_continuous_and_increasing(
            s0 in 0.2f64..4.0,
            s1 in 0.2f64..4.0,
            s2 in 0.2f64..4.0,
            t1 in 0.5f64..5.0,
            dt in 0.5f64..15.0,
            k0 in 0.5f64..2.0,
        ) {
            let pf = make_piecewise_alpha(s0, s1, s2, t1, t1 + dt, k0).unwrap();
            let (lo, hi) = (-3.0, t1 + dt + 3.0);
            let mut prev = pf.alpha(lo);
            let n = 400;
            for j in 1..=n {
                let tau = lo + (hi - lo) * j as f64 / n as f64;
                let cur = pf.alpha(tau);
                prop_assert!(cur > prev, "α not increasing at τ={tau}");
                prev = cur;
            }
            // Continuity across each knot.
            for seg in pf.segments() {
                for edge in [seg.tau_start, seg.tau_end] {
                    let below = pf.alpha(edge - 1e-9);
                    let above = pf.alpha(edge + 1e-9);
                    prop_assert!((above - below).abs() < 1e-6);
                }
            }
        }

        #[test]
        fn reconstruction_is_timelike_for_random_profiles(
            s0 in 0.2f64..4.0,
            s1 in 0.2f64..4.0,
            s2 in 0.2f64..4.0,
            t1 in 0.5f64..5.0,
            dt in 0.5f64..15.0,
        ) {
            let pf = make_piecewise_alpha(s0, s1, s2, t1, t1 + dt, 1.0).unwrap();
            let traj = reconstruct_trajectory(&pf, -4.0, t1 + dt + 4.0, 257).unwrap();
            prop_assert!(check_timelike(&traj) < 1e-10);
            prop_assert!(check_phase_rate(&traj) < 1e-10);
        }
    }
}
