//! Numerical laboratory for the time-dependent Aharonov-Bohm effect.
//!
//! An infinitely long solenoid of radius `R` carries a time-varying flux
//! `Φ(t)`. Two electrons leave the same point on a circle of radius `ρ > R`
//! with angular speeds `+ω0` and `−ω0`. The induced azimuthal electric field
//! exerts a torque on both, and the AB phase is the difference of the
//! vector-potential line integrals along the two paths.
//!
//! The crate is split into:
//!
//! * [`fields`]: flux profiles and the solenoid's `B`, `A`, `E`.
//! * [`dynamics`]: the angular equation of motion, closed forms, RK4, and the
//!   re-encounter time and angle.
//! * [`phase`]: the AB phase by three independent routes and the
//!   sinusoidal-flux `f` factor.
//! * [`quadrature`], [`interp`]: numerical plumbing.
//! * [`format`]: bit-stable decimal formatting and CSV rows.
//!
//! Units are natural (`ħ = 1`); the electron charge is `−e` with `e > 0`.

// `!(x > 0.0)` is used on purpose so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod fields;
pub mod format;
pub mod interp;
pub mod phase;
pub mod quadrature;

pub use dynamics::{
    coupling_coefficient, encounter_angle, encounter_time, encounter_time_numeric,
    integrate_trajectory, max_step, omega_closed_form, torque_rhs, Branch, CouplingMode,
    ElectronParams, EncounterMethod, EncounterResult, Trajectory, TrajectoryMethod,
    TrajectorySample,
};
pub use error::{Error, Result};
pub use fields::{field_at, CylPoint, FieldSample, FluxProfile, SolenoidConfig};
pub use phase::{
    ab_phase_mean_flux, ab_phase_trajectories, encounter_angle_sinusoid, f_factor,
    f_factor_printed_sign, f_limits, line_integral_a, mean_flux, PhaseResult, Route,
    SinusoidSummary,
};
