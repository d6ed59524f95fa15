//! Numerical core for a two-level detector coupled to a single field mode.
//!
//! The detector moves along a timelike worldline `x(τ)` and sees the mode
//! through the phase `α(τ) = k·x(τ)`.  Everything in this crate is organised
//! around that phase function:
//!
//! * [`trajectory`] builds phase functions with piecewise-linear `α̇` (constant
//!   Doppler shift in the distant past and future, linear ramps in between),
//!   recovers the worldline from them in closed form, and checks the kinematic
//!   identities `ẋ·ẋ = 1` and `k·ẋ = α̇`.
//! * [`oscillatory`] evaluates the response amplitudes
//!   `I± = ∫ dτ e^{iΩτ ± iα(τ)}` exactly, segment by segment, via the Faddeeva
//!   function, with adiabatic switching or a hard window taming the
//!   non-decaying integrand.
//! * [`quadrature`] is the independent cross-check: an adaptive
//!   Gauss–Kronrod evaluation of the same integrals that shares no code with
//!   the closed form.
//! * [`transparency`] searches a two-parameter family of profiles for points
//!   where the rotating-wave amplitude `I−` vanishes while `I+` survives.
//! * [`states`] turns amplitude pairs into excitation probabilities for Fock,
//!   coherent and general single-mode field states.
//! * [`unruh`] checks the thermal (detailed-balance) structure of the response
//!   for the uniformly accelerated worldline.
//!
//! The crate is `no_std` (with `alloc`); all floating-point special functions
//! go through `libm` so results are bit-for-bit reproducible across platforms.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod math;
pub mod oscillatory;
pub mod quadrature;
pub mod states;
pub mod trajectory;
pub mod transparency;
pub mod unruh;

pub use num_complex::Complex64;
