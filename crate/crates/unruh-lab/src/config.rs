//! Run configuration: one JSON document describing everything a subcommand
//! needs — the phase-function family, regularization, grids, search box,
//! field state, and thermality settings.
//!
//! The document round-trips losslessly through serde, and the copy embedded
//! in every artifact is the *resolved* form: defaults filled in, overrides
//! applied, the tuned gap written back.  Unknown fields are rejected so a
//! typo fails loudly instead of silently running with defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};
use unruh_core::oscillatory::Regularization;
use unruh_core::states::PrefactorConvention;
use unruh_core::trajectory::{make_piecewise_alpha, PhaseFunction};
use unruh_core::transparency::SearchSpec;
use unruh_core::unruh::UnruhSpec;

use crate::AppError;

fn default_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

fn one() -> f64 {
    1.0
}

/// The full run configuration; blocks irrelevant to the invoked subcommand
/// may be omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Tool version the config was written for; informational.
    #[serde(default = "default_version")]
    pub version: String,
    /// Seed for any randomized data generation; part of the audit trail.
    #[serde(default)]
    pub seed: u64,
    /// Three-slope phase-function family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<PhaseConfig>,
    /// How the non-decaying tails are tamed; defaults to adiabatic damping
    /// at `1e-3·k0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regularization: Option<RegularizationConfig>,
    /// Gap grid for `scan`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanConfig>,
    /// Search box for `find-transparency`; defaults to the demonstration
    /// box when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchConfig>,
    /// Sampling window for `reconstruct`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstruct: Option<ReconstructConfig>,
    /// Field state and coupling for `probability`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability: Option<ProbabilityConfig>,
    /// Thermality measurement for `unruh-check`; defaults to unit
    /// acceleration when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unruh: Option<UnruhConfig>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            version: default_version(),
            seed: 0,
            phase: None,
            regularization: None,
            scan: None,
            search: None,
            reconstruct: None,
            probability: None,
            unruh: None,
        }
    }
}

impl RunConfig {
    /// Read a config from `path`, or the defaults when no path is given.
    pub fn load(path: Option<&Path>) -> Result<Self, AppError> {
        let Some(path) = path else {
            return Ok(RunConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::Io(format!("reading {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| AppError::Validation(format!("config {}: {e}", path.display())))
    }
}

/// The three-slope velocity profile: Doppler slope `s0` up to τ = 0, linear
/// ramps to `s1` at `T1` and on to `s2` at `T2`, constant afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseConfig {
    pub k0: f64,
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "T2")]
    pub t2: f64,
}

impl PhaseConfig {
    /// Validate the fields and build the phase function.
    pub fn build(&self) -> Result<PhaseFunction, AppError> {
        let positive = [
            ("phase.k0", self.k0),
            ("phase.s0", self.s0),
            ("phase.s1", self.s1),
            ("phase.s2", self.s2),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(AppError::Validation(format!(
                    "{name} must be positive and finite (got {value})"
                )));
            }
        }
        if !(self.t1.is_finite() && self.t1 > 0.0) {
            return Err(AppError::Validation(format!(
                "phase.T1 must be positive and finite (got {})",
                self.t1
            )));
        }
        if !(self.t2.is_finite() && self.t2 > self.t1) {
            return Err(AppError::Validation(format!(
                "phase.T2 must exceed phase.T1 (got T2 = {}, T1 = {})",
                self.t2, self.t1
            )));
        }
        make_piecewise_alpha(self.s0, self.s1, self.s2, self.t1, self.t2, self.k0)
            .map_err(|e| AppError::Validation(format!("phase: {e}")))
    }
}

/// Regularization choice, mirroring the core enum in serializable form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RegularizationConfig {
    /// Exponential damping beyond the knot span.
    AdiabaticTails { epsilon: f64 },
    /// Integrate over a finite proper-time interval only.
    HardWindow { tau_min: f64, tau_max: f64 },
}

impl RegularizationConfig {
    /// The default damping for mode frequency `k0`.
    pub fn default_for(k0: f64) -> Self {
        RegularizationConfig::AdiabaticTails { epsilon: 1e-3 * k0 }
    }

    /// Validate and convert to the core representation.
    pub fn to_core(&self) -> Result<Regularization, AppError> {
        let reg = match *self {
            RegularizationConfig::AdiabaticTails { epsilon } => {
                Regularization::AdiabaticTails { epsilon }
            }
            RegularizationConfig::HardWindow { tau_min, tau_max } => {
                Regularization::HardWindow { tau_min, tau_max }
            }
        };
        reg.validate()
            .map_err(|e| AppError::Validation(format!("regularization: {e}")))?;
        Ok(reg)
    }
}

/// Uniform detector-gap grid for the spectrum scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub omega_min: f64,
    pub omega_max: f64,
    pub n_omega: usize,
}

impl ScanConfig {
    /// Validate bounds and produce the gap grid.
    pub fn grid(&self) -> Result<Vec<f64>, AppError> {
        if !(self.omega_min.is_finite() && self.omega_min > 0.0) {
            return Err(AppError::Validation(format!(
                "scan.omega_min must be positive and finite (got {})",
                self.omega_min
            )));
        }
        if !(self.omega_max.is_finite() && self.omega_max > self.omega_min) {
            return Err(AppError::Validation(format!(
                "scan.omega_max must exceed scan.omega_min (got {})",
                self.omega_max
            )));
        }
        if self.n_omega < 2 {
            return Err(AppError::Validation(format!(
                "scan.n_omega must be at least 2 (got {})",
                self.n_omega
            )));
        }
        let span = self.omega_max - self.omega_min;
        let last = (self.n_omega - 1) as f64;
        Ok((0..self.n_omega)
            .map(|i| self.omega_min + span * i as f64 / last)
            .collect())
    }
}

/// Search box for the transparency hunt; `omega` is tuned automatically
/// when omitted and written back into the resolved config.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub k0: f64,
    pub s0: f64,
    pub s2: f64,
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    pub s1_range: (f64, f64),
    pub t2_range: (f64, f64),
    pub n_s1: usize,
    pub n_t2: usize,
}

impl SearchConfig {
    /// The demonstration box: the family with a unit Doppler slope ratio of
    /// two, searched over a broad middle-slope and knot-time window.
    pub fn demo() -> Self {
        SearchConfig {
            k0: 1.0,
            s0: 1.0,
            s2: 2.0,
            t1: 5.0,
            omega: None,
            s1_range: (0.1, 5.0),
            t2_range: (6.0, 30.0),
            n_s1: 64,
            n_t2: 64,
        }
    }

    /// Convert to a core search spec with `omega` as given (caller resolves
    /// a missing gap by pre-scanning).
    pub fn to_spec(&self, omega: f64, reg: Regularization) -> SearchSpec {
        SearchSpec {
            k0: self.k0,
            s0: self.s0,
            s2: self.s2,
            t1: self.t1,
            omega,
            regularization: reg,
            s1_range: self.s1_range,
            t2_range: self.t2_range,
            n_s1: self.n_s1,
            n_t2: self.n_t2,
        }
    }
}

/// Proper-time sampling window for trajectory reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconstructConfig {
    pub tau_min: f64,
    pub tau_max: f64,
    pub n_samples: usize,
}

impl ReconstructConfig {
    /// A window covering the whole knot span of `phase` with margins.
    pub fn default_for(phase: &PhaseConfig) -> Self {
        ReconstructConfig {
            tau_min: -5.0,
            tau_max: phase.t2 + 5.0,
            n_samples: 501,
        }
    }

    /// Validate the sampling request, naming the offending field.
    pub fn validate(&self) -> Result<(), AppError> {
        if !(self.tau_min.is_finite() && self.tau_max.is_finite() && self.tau_min < self.tau_max)
        {
            return Err(AppError::Validation(format!(
                "reconstruct.tau_max must exceed reconstruct.tau_min (got [{}, {}])",
                self.tau_min, self.tau_max
            )));
        }
        if self.n_samples < 2 {
            return Err(AppError::Validation(format!(
                "reconstruct.n_samples must be at least 2 (got {})",
                self.n_samples
            )));
        }
        Ok(())
    }
}

/// Stimulating field state, in serializable form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StateConfig {
    /// Photon-number eigenstate `|n⟩`.
    Fock { n: u64 },
    /// Coherent state `|α⟩`.
    Coherent { re: f64, im: f64 },
    /// Any state known only by its mean photon number.
    MeanPhoton { nbar: f64 },
}

/// Mode-density prefactor convention `G²/((2π)^p·ω_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ConventionConfig {
    /// `p = 2`.
    TwoPiSquared,
    /// `p = 3`.
    #[default]
    TwoPiCubed,
}

impl ConventionConfig {
    /// The core representation.
    pub fn to_core(&self) -> PrefactorConvention {
        match self {
            ConventionConfig::TwoPiSquared => PrefactorConvention::TwoPiSquared,
            ConventionConfig::TwoPiCubed => PrefactorConvention::TwoPiCubed,
        }
    }
}

/// Excitation-probability request: gap, state, and coupling data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbabilityConfig {
    pub omega: f64,
    pub state: StateConfig,
    #[serde(default = "one")]
    pub coupling: f64,
    #[serde(default = "one")]
    pub omega_k: f64,
    #[serde(default)]
    pub convention: ConventionConfig,
}

impl ProbabilityConfig {
    /// Validate the gap, naming the field; coupling data is validated by
    /// the probability context itself.
    pub fn validate(&self) -> Result<(), AppError> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(AppError::Validation(format!(
                "probability.omega must be positive and finite (got {})",
                self.omega
            )));
        }
        Ok(())
    }
}

/// Thermality measurement: acceleration plus optional overrides of the
/// derived defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnruhConfig {
    pub acceleration: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omegas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

impl UnruhConfig {
    /// The default measurement at unit acceleration.
    pub fn demo() -> Self {
        UnruhConfig {
            acceleration: 1.0,
            k0: None,
            omegas: None,
            window: None,
            epsilon: None,
        }
    }

    /// Build the core spec: acceleration-derived defaults, then overrides.
    pub fn to_spec(&self) -> Result<UnruhSpec, AppError> {
        let mut spec = UnruhSpec::for_acceleration(self.acceleration)
            .map_err(|e| AppError::Validation(format!("unruh: {e}")))?;
        if let Some(k0) = self.k0 {
            spec.k0 = k0;
        }
        if let Some(omegas) = &self.omegas {
            spec.omegas = omegas.clone();
        }
        if let Some(window) = self.window {
            spec.window = window;
        }
        if let Some(epsilon) = self.epsilon {
            spec.epsilon = epsilon;
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config_round_trips_losslessly() {
        let text = r#"{
            "version": "0.1.0",
            "seed": 7,
            "phase": {"k0": 1.0, "s0": 1.0, "s1": 2.5, "s2": 2.0, "T1": 5.0, "T2": 18.0},
            "regularization": {"adiabatic_tails": {"epsilon": 0.001}},
            "scan": {"omega_min": 0.1, "omega_max": 4.0, "n_omega": 64},
            "search": {"k0": 1.0, "s0": 1.0, "s2": 2.0, "T1": 5.0,
                       "omega": 1.84, "s1_range": [0.1, 5.0],
                       "t2_range": [6.0, 30.0], "n_s1": 64, "n_t2": 64},
            "reconstruct": {"tau_min": -5.0, "tau_max": 23.0, "n_samples": 501},
            "probability": {"omega": 1.84, "state": {"coherent": {"re": 3.0, "im": 0.0}},
                            "coupling": 1.0, "omega_k": 1.0, "convention": "two_pi_cubed"},
            "unruh": {"acceleration": 1.0, "omegas": [0.5, 1.0, 2.0]}
        }"#;
        let parsed: RunConfig = serde_json::from_str(text).unwrap();
        let echoed = serde_json::to_string(&parsed).unwrap();
        let reparsed: RunConfig = serde_json::from_str(&echoed).unwrap();
        assert_eq!(parsed, reparsed);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"phase": {"k0": 1.0, "s0": 1.0, "s1": 2.0, "s2": 2.0,
                       "T1": 5.0, "T2": 18.0, "T3": 20.0}}"#;
        assert!(serde_json::from_str::<RunConfig>(text).is_err());
    }

    #[test]
    fn phase_validation_names_the_ordering_violation() {
        let bad = PhaseConfig {
            k0: 1.0,
            s0: 1.0,
            s1: 2.0,
            s2: 2.0,
            t1: 5.0,
            t2: 3.0,
        };
        let err = bad.build().unwrap_err();
        assert!(matches!(err, AppError::Validation(ref m) if m.contains("T2")));
    }

    #[test]
    fn hard_window_needs_an_ascending_interval() {
        let bad = RegularizationConfig::HardWindow {
            tau_min: 4.0,
            tau_max: 4.0,
        };
        assert!(matches!(bad.to_core(), Err(AppError::Validation(_))));
    }

    #[test]
    fn state_config_spells_out_every_kind() {
        for (text, _) in [
            (r#"{"fock": {"n": 3}}"#, "fock"),
            (r#"{"coherent": {"re": 1.0, "im": -2.0}}"#, "coherent"),
            (r#"{"mean_photon": {"nbar": 2.5}}"#, "mean photon"),
        ] {
            let parsed: StateConfig = serde_json::from_str(text).unwrap();
            let echoed = serde_json::to_string(&parsed).unwrap();
            assert_eq!(text.replace(' ', ""), echoed.replace(' ', ""));
        }
    }
}
