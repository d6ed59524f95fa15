//! Closed-form evaluation of the response amplitudes
//! `I± = ∫ dτ e^{i(Ωτ ± α(τ))}`.
//!
//! For a phase function with piecewise-linear `α̇` the total phase
//! `φ(τ) = Ωτ ± α(τ)` is piecewise quadratic, so every segment integral is a
//! Fresnel-type integral expressible through the Faddeeva function, and the
//! constant-rate tails reduce to elementary integrals once regularized.  Two
//! regularizations are supported:
//!
//! * **adiabatic tails** — the integrand is damped by `e^{-ε·d(τ)}` with
//!   `d(τ)` the distance from the knot span, giving each tail the exact value
//!   `e^{iφ(edge)}/(ε ± if)` with `f` the tail phase rate;
//! * **hard window** — the integral is simply clipped to `[τ_min, τ_max]`.
//!
//! All segment phases are anchored at the segment start before
//! exponentiation, so nothing large is ever fed to `sin`/`cos` and the
//! closed form stays accurate to ~1e-13 relative even for thousands of
//! radians of accumulated phase.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::math::{cis, faddeeva, sinc, SQRT_PI};
use crate::trajectory::{PhaseFunction, PhaseProfile};

/// Errors from amplitude evaluation, shared with the quadrature oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OscillatoryError {
    /// Adiabatic switching needs `ε > 0`.
    NonPositiveEpsilon { epsilon: f64 },
    /// A hard window needs finite `τ_min < τ_max`.
    BadWindow { tau_min: f64, tau_max: f64 },
    /// A scalar input (gap, frequency, …) was NaN or infinite.
    NonFiniteInput { name: &'static str, value: f64 },
    /// The adaptive oracle ran out of its panel budget before reaching the
    /// requested accuracy.
    NoConvergence {
        requested: f64,
        achieved: f64,
        panels: usize,
    },
}

impl fmt::Display for OscillatoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OscillatoryError::NonPositiveEpsilon { epsilon } => {
                write!(f, "epsilon = {epsilon} must be finite and positive")
            }
            OscillatoryError::BadWindow { tau_min, tau_max } => {
                write!(f, "window [{tau_min}, {tau_max}] is not a finite ascending interval")
            }
            OscillatoryError::NonFiniteInput { name, value } => {
                write!(f, "{name} = {value} is not finite")
            }
            OscillatoryError::NoConvergence {
                requested,
                achieved,
                panels,
            } => write!(
                f,
                "quadrature stalled at {achieved:e} (requested {requested:e}) after {panels} panels"
            ),
        }
    }
}

impl core::error::Error for OscillatoryError {}

/// How the non-decaying oscillatory integrand is tamed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regularization {
    /// Damp by `e^{-ε·d(τ)}`, `d` = distance from the knot span.
    AdiabaticTails { epsilon: f64 },
    /// Integrate over `[tau_min, tau_max]` only.
    HardWindow { tau_min: f64, tau_max: f64 },
}

impl Regularization {
    pub fn validate(&self) -> Result<(), OscillatoryError> {
        match *self {
            Regularization::AdiabaticTails { epsilon } => {
                if !(epsilon.is_finite() && epsilon > 0.0) {
                    return Err(OscillatoryError::NonPositiveEpsilon { epsilon });
                }
            }
            Regularization::HardWindow { tau_min, tau_max } => {
                if !(tau_min.is_finite() && tau_max.is_finite() && tau_min < tau_max) {
                    return Err(OscillatoryError::BadWindow { tau_min, tau_max });
                }
            }
        }
        Ok(())
    }
}

/// Which of the two amplitudes: `I+` carries `+α` (counter-rotating),
/// `I-` carries `-α` (rotating).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Both amplitudes at one gap, with the regularization they were computed
/// under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePair {
    pub i_plus: Complex64,
    pub i_minus: Complex64,
    pub omega: f64,
    pub regularization: Regularization,
}

/// One row of a gap scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub omega: f64,
    pub i_plus: Complex64,
    pub i_minus: Complex64,
}

/// `i·z`.
#[inline]
fn mul_i(z: Complex64) -> Complex64 {
    Complex64::new(-z.im, z.re)
}

/// `∫₀ᴰ e^{i(a t² + b t)} dt`.
///
/// Below `|a| ≤ 1e-12 (b²+1)` the quadratic term cannot move the phase at
/// working precision and the linear closed form is used; otherwise the
/// integral is completed to Gaussian form and expressed through the Faddeeva
/// function.  The three case splits keep every `w` argument in the closed
/// upper half-plane and group all phases relative to the interval endpoints,
/// so no large cancelling exponents ever appear.
fn quadratic_phase_kernel(a: f64, b: f64, d: f64) -> Complex64 {
    if d == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if libm::fabs(a) <= 1e-12 * (b * b + 1.0) {
        let half = 0.5 * b * d;
        return d * cis(half) * sinc(half);
    }
    // sqrt(-i a), principal branch: argument ∓π/4 for a ≷ 0, written out
    // explicitly so the branch cut stays on the pinned `libm` route.
    let r = libm::sqrt(0.5 * libm::fabs(a));
    let q = Complex64::new(r, -libm::copysign(r, a));
    let scale = SQRT_PI / 2.0 * q.inv();
    let beta = b / (2.0 * a);
    let u1 = beta;
    let u2 = d + beta;
    let theta2 = (a * d + b) * d;
    let e2 = cis(theta2);
    if u1 >= 0.0 && u2 >= 0.0 {
        scale * (faddeeva(mul_i(q * u1)) - e2 * faddeeva(mul_i(q * u2)))
    } else if u1 <= 0.0 && u2 <= 0.0 {
        scale * (e2 * faddeeva(-mul_i(q * u2)) - faddeeva(-mul_i(q * u1)))
    } else {
        // The stationary point -β lies inside (0, D): both endpoint terms
        // plus the full Gaussian through the saddle.  |β| < D here, so the
        // saddle phase a·β² stays moderate.
        let saddle = cis(-a * beta * beta);
        scale * (2.0 * saddle - e2 * faddeeva(mul_i(q * u2)) - faddeeva(-mul_i(q * u1)))
    }
}

/// `∫_{τ1}^{τ2} e^{i(a τ² + b τ + c)} dτ`, exact up to roundoff.
///
/// The phase is re-anchored at `τ1` internally, so huge absolute phase
/// offsets (`aτ²` in the thousands of radians) do not cost accuracy.
pub fn segment_fresnel(a: f64, b: f64, c: f64, tau1: f64, tau2: f64) -> Complex64 {
    if tau2 < tau1 {
        return -segment_fresnel(a, b, c, tau2, tau1);
    }
    let d = tau2 - tau1;
    let b_anchored = b + 2.0 * a * tau1;
    let phase1 = (a * tau1 + b) * tau1 + c;
    cis(phase1) * quadratic_phase_kernel(a, b_anchored, d)
}

/// Which side of the knot span an adiabatic tail extends to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSide {
    Past,
    Future,
}

/// Exact adiabatic tail `∫ e^{i f (τ-τ_edge)} e^{-ε|τ-τ_edge|} dτ` over the
/// half-line on `side` of the edge, times the boundary phase factor
/// `e^{iφ(τ_edge)}`:
///
/// ```text
/// past:   boundary_phase / (ε + i f)
/// future: boundary_phase / (ε - i f)
/// ```
pub fn tail_contribution(
    freq: f64,
    epsilon: f64,
    boundary_phase: Complex64,
    side: TailSide,
) -> Result<Complex64, OscillatoryError> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(OscillatoryError::NonPositiveEpsilon { epsilon });
    }
    if !freq.is_finite() {
        return Err(OscillatoryError::NonFiniteInput {
            name: "tail frequency",
            value: freq,
        });
    }
    let den = match side {
        TailSide::Past => Complex64::new(epsilon, freq),
        TailSide::Future => Complex64::new(epsilon, -freq),
    };
    Ok(boundary_phase / den)
}

/// Total phase `φ(τ) = Ωτ + s·α(τ)`.
#[inline]
fn total_phase(pf: &PhaseFunction, omega: f64, sgn: f64, tau: f64) -> f64 {
    omega * tau + sgn * pf.alpha(tau)
}

/// `∫_{w0}^{w1} e^{iφ(τ)} dτ` by exact per-piece Fresnel integrals.
fn windowed_sum(pf: &PhaseFunction, omega: f64, sgn: f64, w0: f64, w1: f64) -> Complex64 {
    debug_assert!(w0 <= w1);
    let mut total = Complex64::new(0.0, 0.0);
    let mut add_piece = |x: f64, y: f64, half_curvature: f64| {
        if y <= x {
            return;
        }
        let rate = omega + sgn * pf.alpha_dot(x);
        let phase = total_phase(pf, omega, sgn, x);
        total += cis(phase) * quadratic_phase_kernel(half_curvature, rate, y - x);
    };
    let (lo, hi) = pf.core_span();
    // Piece before the acceleration hull (the whole line for inertial
    // profiles); the phase rate is constant there.
    add_piece(w0, w1.min(lo), 0.0);
    // Ramps clipped to the hull — flat outer ramps belong to the constant
    // pieces above/below and must not be counted twice.
    for seg in pf.segments() {
        let a = 0.5 * sgn * pf.k0() * seg.ramp_rate();
        add_piece(w0.max(seg.tau_start).max(lo), w1.min(seg.tau_end).min(hi), a);
    }
    // Piece after the hull.
    add_piece(w0.max(hi), w1, 0.0);
    total
}

/// One amplitude `I±(Ω)` in closed form.
pub fn eval_i(
    pf: &PhaseFunction,
    omega: f64,
    sign: Sign,
    reg: &Regularization,
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
            Ok(windowed_sum(pf, omega, sgn, tau_min, tau_max))
        }
        Regularization::AdiabaticTails { epsilon } => {
            let (lo, hi) = pf.core_span();
            let mut total = if hi > lo {
                windowed_sum(pf, omega, sgn, lo, hi)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let (f_past, f_future) = {
                let (past, future) = pf.doppler_frequencies();
                (omega + sgn * past, omega + sgn * future)
            };
            total += tail_contribution(
                f_past,
                epsilon,
                cis(total_phase(pf, omega, sgn, lo)),
                TailSide::Past,
            )?;
            total += tail_contribution(
                f_future,
                epsilon,
                cis(total_phase(pf, omega, sgn, hi)),
                TailSide::Future,
            )?;
            Ok(total)
        }
    }
}

/// Both amplitudes at one gap.
pub fn eval_pair(
    pf: &PhaseFunction,
    omega: f64,
    reg: &Regularization,
) -> Result<AmplitudePair, OscillatoryError> {
    Ok(AmplitudePair {
        i_plus: eval_i(pf, omega, Sign::Plus, reg)?,
        i_minus: eval_i(pf, omega, Sign::Minus, reg)?,
        omega,
        regularization: *reg,
    })
}

/// Evaluate both amplitudes over a gap grid.  Rows are independent, so
/// callers may compute them in parallel and splice the results by index; this
/// sequential form is the reference ordering.
pub fn spectrum_scan(
    pf: &PhaseFunction,
    omegas: &[f64],
    reg: &Regularization,
) -> Result<Vec<SpectrumRow>, OscillatoryError> {
    let mut rows = Vec::with_capacity(omegas.len());
    for &omega in omegas {
        let pair = eval_pair(pf, omega, reg)?;
        rows.push(SpectrumRow {
            omega,
            i_plus: pair.i_plus,
            i_minus: pair.i_minus,
        });
    }
    Ok(rows)
}
