//! Transition probabilities for a two-level detector coupled to one field
//! mode, given the amplitude pair `(I₊, I₋)` of a trajectory.
//!
//! The first-order state transformation splits into a counter-rotating
//! channel (weight `√(n+1)·I₊`, the stimulated Unruh process) and a
//! rotating-wave channel (weight `√n·I₋`, conventional resonant
//! absorption).  This module turns those weights into probabilities for
//! Fock, coherent, and mean-photon-number field states:
//!
//! * Fock `|n⟩`:      `P_stim = pref·(n+1)|I₊|²`, `P_abs = pref·n|I₋|²`;
//! * coherent `|α⟩`:  `P = pref·(|α|²|I₊+I₋|² + |I₊|²)`;
//! * mean photon n̄:   `P = pref·(n̄|I₊+I₋|² + |I₊|²)`;
//!
//! with `pref = G²/((2π)^p·ω_k)` and `p ∈ {2, 3}` selectable, because the
//! two source displays for the mode-density prefactor disagree; every ratio
//! this crate asserts is prefactor-independent.
//!
//! Also here: the catalysis fraction `|α*I₊ + αI₋|²/(|α|²|I₊+I₋|² + |I₊|²)`
//! (the probability share of transitions that leave the field state
//! untouched), the time-reversal map `(I₊, I₋) ↦ (Ī₋, Ī₊)` for processes
//! starting from the excited detector state, and the inertial resonance
//! condition `Ω = γ·ω·(1 − k̂·v)` with its `(n+1) : n` Einstein weights.

use num_complex::Complex64;

use crate::oscillatory::AmplitudePair;

/// Invalid input to a probability computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateError {
    /// Both amplitudes (and the stimulation) vanish: no transition channel
    /// exists, so a probability fraction is undefined.
    DegenerateAmplitudes,
    /// Mean photon number below zero.
    NegativeMeanPhoton { nbar: f64 },
    /// Detector speed at or above the speed of light.
    SuperluminalVelocity { speed: f64 },
    /// The mode wave vector has zero spatial part, so no propagation
    /// direction (and no Doppler shift) is defined.
    ZeroWaveVector,
    /// Context parameter outside its domain (coupling and mode frequency
    /// must be positive).
    BadContext { name: &'static str, value: f64 },
}

impl core::fmt::Display for StateError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            StateError::DegenerateAmplitudes => {
                write!(f, "both amplitudes vanish: probability fraction undefined")
            }
            StateError::NegativeMeanPhoton { nbar } => {
                write!(f, "mean photon number must be >= 0, got {nbar}")
            }
            StateError::SuperluminalVelocity { speed } => {
                write!(f, "detector speed must satisfy |v| < 1, got {speed}")
            }
            StateError::ZeroWaveVector => {
                write!(f, "wave vector must have a nonzero spatial part")
            }
            StateError::BadContext { name, value } => {
                write!(f, "context field {name} must be positive, got {value}")
            }
        }
    }
}

impl core::error::Error for StateError {}

/// Initial state of the stimulating field mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldState {
    /// Photon-number eigenstate `|n⟩`.
    Fock(u64),
    /// Coherent state `|α⟩` with complex amplitude α.
    Coherent(Complex64),
    /// Any state specified only through its mean photon number `n̄ ≥ 0`
    /// (thermal, mixed, …): the excitation probability depends on nothing
    /// else at this order.
    MeanPhoton(f64),
}

/// Choice of mode-density prefactor `G²/((2π)^p·ω_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefactorConvention {
    /// `p = 2`.
    TwoPiSquared,
    /// `p = 3`.
    TwoPiCubed,
}

/// Coupling and mode data shared by all probability formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityContext {
    coupling: f64,
    omega_k: f64,
    convention: PrefactorConvention,
}

impl ProbabilityContext {
    /// Validates `coupling > 0` and `omega_k > 0`.
    pub fn new(
        coupling: f64,
        omega_k: f64,
        convention: PrefactorConvention,
    ) -> Result<Self, StateError> {
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(StateError::BadContext {
                name: "coupling",
                value: coupling,
            });
        }
        if !(omega_k.is_finite() && omega_k > 0.0) {
            return Err(StateError::BadContext {
                name: "omega_k",
                value: omega_k,
            });
        }
        Ok(ProbabilityContext {
            coupling,
            omega_k,
            convention,
        })
    }

    /// Coupling strength `G`.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Mode frequency `ω_k`.
    pub fn omega_k(&self) -> f64 {
        self.omega_k
    }

    /// Selected prefactor convention.
    pub fn convention(&self) -> PrefactorConvention {
        self.convention
    }

    /// The full prefactor `G²/((2π)^p·ω_k)`.
    pub fn prefactor(&self) -> f64 {
        let two_pi = 2.0 * core::f64::consts::PI;
        let p = match self.convention {
            PrefactorConvention::TwoPiSquared => two_pi * two_pi,
            PrefactorConvention::TwoPiCubed => two_pi * two_pi * two_pi,
        };
        self.coupling * self.coupling / (p * self.omega_k)
    }
}

/// Probabilities of the two channels open to a Fock-stimulated detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockProbabilities {
    /// Counter-rotating channel `pref·(n+1)·|I₊|²` (photon emitted while
    /// the detector is excited).
    pub stimulated_unruh: f64,
    /// Rotating-wave channel `pref·n·|I₋|²` (photon absorbed).
    pub absorption: f64,
}

impl FockProbabilities {
    /// Total excitation probability, both channels.
    pub fn total(&self) -> f64 {
        self.stimulated_unruh + self.absorption
    }
}

/// Channel probabilities for the detector stimulated by `|n⟩`.
///
/// `stimulated_unruh` carries the `(n+1)` enhancement over the spontaneous
/// (`n = 0`) process; `absorption` scales as `n` and vanishes in vacuum.
pub fn fock_probabilities(
    pair: &AmplitudePair,
    n: u64,
    ctx: &ProbabilityContext,
) -> FockProbabilities {
    let pref = ctx.prefactor();
    FockProbabilities {
        stimulated_unruh: pref * (n as f64 + 1.0) * pair.i_plus.norm_sqr(),
        absorption: pref * n as f64 * pair.i_minus.norm_sqr(),
    }
}

/// Excitation probability for a coherent stimulating state `|α⟩`,
/// `pref·(|α|²·|I₊+I₋|² + |I₊|²)`, summed over final field states.
pub fn coherent_excitation_probability(
    pair: &AmplitudePair,
    alpha: Complex64,
    ctx: &ProbabilityContext,
) -> f64 {
    let coherent_sum = (pair.i_plus + pair.i_minus).norm_sqr();
    ctx.prefactor() * (alpha.norm_sqr() * coherent_sum + pair.i_plus.norm_sqr())
}

/// Excitation probability for any field state of mean photon number `n̄`,
/// `pref·(n̄·|I₊+I₋|² + |I₊|²)`.
pub fn general_state_probability(
    pair: &AmplitudePair,
    nbar: f64,
    ctx: &ProbabilityContext,
) -> Result<f64, StateError> {
    if !(nbar >= 0.0) {
        return Err(StateError::NegativeMeanPhoton { nbar });
    }
    let coherent_sum = (pair.i_plus + pair.i_minus).norm_sqr();
    Ok(ctx.prefactor() * (nbar * coherent_sum + pair.i_plus.norm_sqr()))
}

/// Excitation probability for any [`FieldState`], dispatching to the
/// matching formula.  For `Fock(n)` this is the two-channel total.
pub fn excitation_probability(
    pair: &AmplitudePair,
    state: &FieldState,
    ctx: &ProbabilityContext,
) -> Result<f64, StateError> {
    match *state {
        FieldState::Fock(n) => Ok(fock_probabilities(pair, n, ctx).total()),
        FieldState::Coherent(alpha) => Ok(coherent_excitation_probability(pair, alpha, ctx)),
        FieldState::MeanPhoton(nbar) => general_state_probability(pair, nbar, ctx),
    }
}

/// Share of the coherent-state excitation probability carried by
/// transitions that leave the field state unchanged:
/// `|α*·I₊ + α·I₋|² / (|α|²·|I₊+I₋|² + |I₊|²)`.
///
/// Nonnegative for all inputs; with absorption suppressed (`I₋ = 0`) it
/// equals `|α|²/(|α|²+1)` exactly — then a true fraction in `[0, 1)`,
/// approaching 1 at large stimulation.  Away from that regime the two
/// channels interfere and the quotient may exceed 1.  Prefactors cancel,
/// so no context is needed.
pub fn catalysis_fraction(pair: &AmplitudePair, alpha: Complex64) -> Result<f64, StateError> {
    let denom = alpha.norm_sqr() * (pair.i_plus + pair.i_minus).norm_sqr()
        + pair.i_plus.norm_sqr();
    if denom <= 0.0 {
        return Err(StateError::DegenerateAmplitudes);
    }
    let numer = (alpha.conj() * pair.i_plus + alpha * pair.i_minus).norm_sqr();
    Ok(numer / denom)
}

/// Amplitude pair of the time-reversed process (detector starting in the
/// excited state): `(I₊, I₋) ↦ (conj(I₋), conj(I₊))`.  An involution; the
/// moduli swap, so emission-side probabilities follow from the absorption
/// formulas with the roles of the two amplitudes exchanged.
pub fn time_reversed_pair(pair: &AmplitudePair) -> AmplitudePair {
    AmplitudePair {
        i_plus: pair.i_minus.conj(),
        i_minus: pair.i_plus.conj(),
        omega: pair.omega,
        regularization: pair.regularization,
    }
}

/// Resonance data for an inertial detector: the amplitudes are delta
/// distributions on the Doppler condition, so only the resonant frequency
/// and the relative channel weights are physical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertialResonance {
    /// Mode frequency `ω` satisfying `Ω = γ·ω·(1 − k̂·v)`.
    pub resonant_frequency: f64,
    /// Stimulated-emission weight `n+1`, in units of the spontaneous rate.
    pub emission_weight: f64,
    /// Absorption weight `n`, in units of the spontaneous rate.
    pub absorption_weight: f64,
}

/// Solve the inertial resonance condition for a detector of gap `omega_gap`
/// moving at `velocity` relative to a mode propagating along `wave_vector`.
///
/// Inertial amplitudes are supported only on `Ω = γ(ω − k·v)` — a delta
/// distribution, not a finite probability density — so this reports the
/// frequency where the distribution sits together with the Einstein weights
/// `(n+1)` and `n`; no finite probability is fabricated off resonance.
pub fn inertial_resonance(
    omega_gap: f64,
    wave_vector: [f64; 3],
    velocity: [f64; 3],
    n: u64,
) -> Result<InertialResonance, StateError> {
    let k_norm = libm::sqrt(
        wave_vector[0] * wave_vector[0]
            + wave_vector[1] * wave_vector[1]
            + wave_vector[2] * wave_vector[2],
    );
    if k_norm == 0.0 || !k_norm.is_finite() {
        return Err(StateError::ZeroWaveVector);
    }
    let v_sq =
        velocity[0] * velocity[0] + velocity[1] * velocity[1] + velocity[2] * velocity[2];
    let speed = libm::sqrt(v_sq);
    if !(speed < 1.0) {
        return Err(StateError::SuperluminalVelocity { speed });
    }
    let k_hat_dot_v = (wave_vector[0] * velocity[0]
        + wave_vector[1] * velocity[1]
        + wave_vector[2] * velocity[2])
        / k_norm;
    let gamma = 1.0 / libm::sqrt(1.0 - v_sq);
    // Ω = γ·ω·(1 − k̂·v) for a massless mode with ω = |k|.
    let resonant_frequency = omega_gap / (gamma * (1.0 - k_hat_dot_v));
    Ok(InertialResonance {
        resonant_frequency,
        emission_weight: n as f64 + 1.0,
        absorption_weight: n as f64,
    })
}
