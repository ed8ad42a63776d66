//! Effective resonant-transition constants of periodically modulated quantum
//! systems, together with direct-integration cross checks.
//!
//! The crate is organized in five layers:
//!
//! * [`liealg`]: finite-dimensional realizations of the su(2), su(1,1) and
//!   Heisenberg-Weyl generator triples, their structural polynomials, and
//!   commutator checks.
//! * [`coeffs`]: the scalar machinery, recursive expansion coefficients for
//!   weakly and strongly modulated systems, Bell polynomials, Bessel series,
//!   intensity shifts, and the closed-form effective constants of the coupled
//!   models.
//! * [`models`]: time-dependent Hamiltonian builders for the concrete systems
//!   (modulated Rabi, parametric oscillator, modulated nonlinear oscillator,
//!   Dicke-type chain, parametric amplifier, two-atom exchange).
//! * [`dynamics`]: a fourth-order commutator-free integrator for periodically
//!   driven Hamiltonians, monodromy-based stroboscopic evolution, and
//!   observable extraction (Rabi fits, growth-rate fits, peak refinement).
//! * [`resonance`]: parameter scans that locate resonance peaks and compare
//!   measured transition constants against the analytic predictions.

pub mod coeffs;
pub mod dynamics;
pub mod liealg;
pub mod models;
pub mod resonance;

mod doctests;
pub(crate) mod matutil;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
