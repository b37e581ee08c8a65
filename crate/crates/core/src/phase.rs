//! AB phase shift `φ_AB = e·∮_{C1−C2} A·dx` by three routes.
//!
//! On the circle of radius `ρ > R`, `A·dx = Φ(t)/(2πρ)·ρ·dφ = Φ(t)·ω(t)/(2π)·dt`,
//! so each branch contributes `(1/2π)∫₀ᵀ Φ(t)·ω(t) dt`. Since `ω1 − ω2 = 2ω0`
//! and `ω0·T = π`, the difference collapses to the mean flux `Φ̄(T)`:
//!
//! * [`Route::MeanFluxClosedForm`]: `e·Φ̄(T)` directly.
//! * [`Route::ClosedFormTrajectories`]: Simpson line integrals over the exact
//!   `ω(t)` samples.
//! * [`Route::NumericTrajectories`]: the same line integrals over RK4 samples.

use std::f64::consts::PI;
use std::fmt;

use crate::dynamics::{
    encounter_angle, encounter_time, integrate_trajectory, max_step, coupling_coefficient,
    Branch, ElectronParams, Trajectory, TrajectoryMethod,
};
use crate::error::{Error, Result};
use crate::fields::{FluxProfile, SolenoidConfig};
use crate::quadrature::composite_simpson;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    MeanFluxClosedForm,
    ClosedFormTrajectories,
    NumericTrajectories,
}

impl Route {
    pub const ALL: [Route; 3] = [
        Route::MeanFluxClosedForm,
        Route::ClosedFormTrajectories,
        Route::NumericTrajectories,
    ];

    /// Short label used on the command line and in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            Route::MeanFluxClosedForm => "mean",
            Route::ClosedFormTrajectories => "closed",
            Route::NumericTrajectories => "numeric",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.label() == s)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    /// Re-encounter time.
    pub t: f64,
    pub phi_ab: f64,
    /// Re-encounter angle.
    pub phi_f: f64,
    pub route: Route,
}

/// One point of the offset-sinusoid `f(ΩT)` curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidSummary {
    pub ratio: f64,
    pub f: f64,
    pub omega_t: f64,
}

impl SinusoidSummary {
    pub fn new(ratio: f64, omega_t: f64) -> Result<Self> {
        Ok(Self {
            ratio,
            f: f_factor(ratio, omega_t)?,
            omega_t,
        })
    }
}

/// `Φ̄(T) = (1/T)∫₀ᵀ Φ(t) dt`.
pub fn mean_flux(profile: &FluxProfile, horizon: f64, rel_tol: f64) -> Result<f64> {
    if !(horizon > 0.0) {
        return Err(Error::domain("mean_flux", format!("T must be > 0, got {horizon}")));
    }
    Ok(profile.integral(0.0, horizon, rel_tol)? / horizon)
}

pub fn ab_phase_mean_flux(
    profile: &FluxProfile,
    params: &ElectronParams,
    rel_tol: f64,
) -> Result<PhaseResult> {
    let t = encounter_time(params);
    Ok(PhaseResult {
        t,
        phi_ab: params.charge * mean_flux(profile, t, rel_tol)?,
        phi_f: encounter_angle(params, profile, rel_tol)?,
        route: Route::MeanFluxClosedForm,
    })
}

/// `∫ A·dx` along one branch: composite Simpson of `Φ(t)·ω(t)/(2π)` over the
/// trajectory samples.
pub fn line_integral_a(profile: &FluxProfile, traj: &Trajectory) -> Result<f64> {
    if traj.samples.len() < 3 {
        return Err(Error::domain(
            "line_integral_a",
            format!("need at least 3 samples, got {}", traj.samples.len()),
        ));
    }
    let integrand = traj
        .samples
        .iter()
        .map(|s| Ok(profile.value(s.t)? * s.omega / (2.0 * PI)))
        .collect::<Result<Vec<_>>>()?;
    composite_simpson(&integrand, traj.step)
}

/// Builds both branch trajectories up to `T = π/ω0` and differences their
/// line integrals. `step` of `None` picks the largest admissible RK4 step.
pub fn ab_phase_trajectories(
    params: &ElectronParams,
    cfg: &SolenoidConfig,
    method: TrajectoryMethod,
    step: Option<f64>,
    rel_tol: f64,
) -> Result<PhaseResult> {
    params.check_orbit(cfg)?;
    let profile = cfg.profile();
    let t = encounter_time(params);
    let step = step.unwrap_or_else(|| max_step(profile, t));
    let build = |branch| match method {
        TrajectoryMethod::Rk4 => integrate_trajectory(params, cfg, branch, t, step),
        TrajectoryMethod::ClosedForm => {
            Trajectory::closed_form(params, profile, branch, t, step, rel_tol)
        }
    };
    let c1 = build(Branch::C1)?;
    let c2 = build(Branch::C2)?;
    let loop_integral = line_integral_a(profile, &c1)? - line_integral_a(profile, &c2)?;
    // φ1(T) = φ_f and φ2(T) = φ_f − 2π
    let phi_f = 0.5 * (c1.last().phi + c2.last().phi) + PI;
    Ok(PhaseResult {
        t,
        phi_ab: params.charge * loop_integral,
        phi_f,
        route: match method {
            TrajectoryMethod::Rk4 => Route::NumericTrajectories,
            TrajectoryMethod::ClosedForm => Route::ClosedFormTrajectories,
        },
    })
}

/// Dispatches to the route's implementation.
pub fn ab_phase(
    route: Route,
    params: &ElectronParams,
    cfg: &SolenoidConfig,
    step: Option<f64>,
    rel_tol: f64,
) -> Result<PhaseResult> {
    match route {
        Route::MeanFluxClosedForm => {
            params.check_orbit(cfg)?;
            ab_phase_mean_flux(cfg.profile(), params, rel_tol)
        }
        Route::ClosedFormTrajectories => {
            ab_phase_trajectories(params, cfg, TrajectoryMethod::ClosedForm, step, rel_tol)
        }
        Route::NumericTrajectories => {
            ab_phase_trajectories(params, cfg, TrajectoryMethod::Rk4, step, rel_tol)
        }
    }
}

/// `(1 − cos x)/x`, evaluated without cancellation near zero.
fn one_minus_cos_over(x: f64) -> f64 {
    let s = (0.5 * x).sin();
    2.0 * s * s / x
}

/// `f(x) = Φ̄/Φ0 = 1 + ratio·(1 − cos x)/x` for `Φ(t) = Φ0(1 + ratio·sin Ωt)`
/// and `x = ΩT`. Always `>= 1` for positive `ratio`.
pub fn f_factor(ratio: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain("f_factor", format!("ΩT must be > 0, got {x}")));
    }
    Ok(1.0 + ratio * one_minus_cos_over(x))
}

/// The sign-flipped curve `1 + ratio·(cos x/x − 1/x)`, kept for comparison
/// with plots drawn from that form.
pub fn f_factor_printed_sign(ratio: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(
            "f_factor_printed_sign",
            format!("ΩT must be > 0, got {x}"),
        ));
    }
    Ok(1.0 - ratio * one_minus_cos_over(x))
}

/// Limits of `f` as `x → 0` and `x → ∞`, both 1.
///
/// Also checks `|f − 1| <= |ratio|·x/2` on a small-`x` grid and
/// `|f − 1| <= 2|ratio|/x` on a large-`x` grid.
pub fn f_limits(ratio: f64) -> Result<(f64, f64)> {
    let r = ratio.abs();
    for k in 0..=70 {
        let small = 10f64.powf(-8.0 + 0.1 * k as f64);
        let dev = (f_factor(ratio, small)? - 1.0).abs();
        if dev > r * small / 2.0 + 1e-12 {
            return Err(Error::Solver(format!(
                "f({small}) deviates by {dev}, above the Taylor bound"
            )));
        }
        let large = 10f64.powf(1.0 + 0.1 * k as f64);
        let dev = (f_factor(ratio, large)? - 1.0).abs();
        if dev > 2.0 * r / large {
            return Err(Error::Solver(format!(
                "f({large}) deviates by {dev}, above the envelope 2·ratio/x"
            )));
        }
    }
    Ok((1.0, 1.0))
}

/// `φ_f = π + κ·Φ1·(1 − cos ΩT)/Ω` for `Φ(t) = Φ0 + Φ1·sin Ωt`, `T = π/ω0`.
pub fn encounter_angle_sinusoid(params: &ElectronParams, phi1: f64, omega: f64) -> f64 {
    let t = encounter_time(params);
    PI + coupling_coefficient(params) * phi1 * t * one_minus_cos_over(omega * t)
}
