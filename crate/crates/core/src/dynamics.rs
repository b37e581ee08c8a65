//! Angular motion of the two electron beams on a circle of fixed radius.
//!
//! Outside the solenoid `B_z = 0`, so the only torque comes from the induced
//! field: `dL/dt = (e/2π)·Φ̇`. With `L = mρ²ω` this gives the branch
//! independent law `dω/dt = κ·Φ̇` and hence
//!
//! ```text
//! ω_σ(t) = σ·ω0 + κ·[Φ(t) − Φ(0)]        σ = +1 on C1, −1 on C2
//! ```
//!
//! The corrections are identical on both branches, so `φ1 − φ2 = 2ω0·t` and
//! the beams meet again (`φ1 − φ2 = 2π`) at `T = π/ω0` for any flux history.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fields::{FluxProfile, SolenoidConfig};

/// How the torque law is turned into an angular acceleration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CouplingMode {
    /// `κ = e/(2πmρ²)`, from `L = mρ²ω`.
    #[default]
    Consistent,
    /// `κ = e/(2πmρ)`, the coefficient as commonly printed with `L = mρω`.
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectronParams {
    pub mass: f64,
    /// Charge magnitude; the electron carries `−charge`.
    pub charge: f64,
    pub rho: f64,
    pub omega0: f64,
    pub mode: CouplingMode,
}

impl ElectronParams {
    pub fn new(mass: f64, charge: f64, rho: f64, omega0: f64, mode: CouplingMode) -> Result<Self> {
        for (what, v) in [
            ("electron.m", mass),
            ("electron.e", charge),
            ("electron.rho", rho),
            ("electron.omega0", omega0),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(what, format!("must be > 0, got {v}")));
            }
        }
        Ok(Self {
            mass,
            charge,
            rho,
            omega0,
            mode,
        })
    }

    /// The orbit must lie outside the solenoid.
    pub fn check_orbit(&self, cfg: &SolenoidConfig) -> Result<()> {
        if self.rho > cfg.radius() {
            Ok(())
        } else {
            Err(Error::invalid(
                "electron.rho",
                format!(
                    "electron.rho must exceed solenoid.R ({} <= {})",
                    self.rho,
                    cfg.radius()
                ),
            ))
        }
    }

    pub fn with_mode(self, mode: CouplingMode) -> Self {
        Self { mode, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    C1,
    C2,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::C1, Branch::C2];

    pub fn sign(self) -> f64 {
        match self {
            Branch::C1 => 1.0,
            Branch::C2 => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryMethod {
    Rk4,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub phi: f64,
    pub omega: f64,
}

/// Samples of one branch on a uniform grid from `t = 0` to `t_end`.
///
/// The grid always has an even number of steps, so the sample count is odd.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub branch: Branch,
    pub samples: Vec<TrajectorySample>,
    pub step: f64,
    pub method: TrajectoryMethod,
}

impl Trajectory {
    pub fn t_end(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.t)
    }

    pub fn last(&self) -> TrajectorySample {
        *self.samples.last().expect("trajectory has samples")
    }

    /// Samples the closed-form solution on the same grid `integrate_trajectory`
    /// would use.
    pub fn closed_form(
        params: &ElectronParams,
        profile: &FluxProfile,
        branch: Branch,
        t_end: f64,
        step: f64,
        rel_tol: f64,
    ) -> Result<Self> {
        let (n, h) = uniform_grid(t_end, step)?;
        let kappa = coupling_coefficient(params);
        let sigma = branch.sign();
        let phi_start = profile.value(0.0)?;
        let mut samples = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let t = grid_time(i, n, h, t_end);
            let omega = sigma * params.omega0 + kappa * (profile.value(t)? - phi_start);
            let phi = sigma * params.omega0 * t + kappa * profile.excess_integral(t, rel_tol)?;
            samples.push(TrajectorySample { t, phi, omega });
        }
        Ok(Self {
            branch,
            samples,
            step: h,
            method: TrajectoryMethod::ClosedForm,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncounterMethod {
    ClosedForm,
    NumericRoot,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncounterResult {
    pub t: f64,
    pub phi_f: f64,
    pub method: EncounterMethod,
}

/// `κ`, the factor multiplying `Φ̇` in `dω/dt`.
pub fn coupling_coefficient(params: &ElectronParams) -> f64 {
    let ElectronParams {
        mass, charge, rho, ..
    } = *params;
    match params.mode {
        CouplingMode::Consistent => charge / (2.0 * PI * mass * rho * rho),
        CouplingMode::PaperLiteral => charge / (2.0 * PI * mass * rho),
    }
}

pub fn omega_closed_form(
    params: &ElectronParams,
    profile: &FluxProfile,
    branch: Branch,
    t: f64,
) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain("omega_closed_form", format!("t must be >= 0, got {t}")));
    }
    let shift = profile.value(t)? - profile.value(0.0)?;
    Ok(branch.sign() * params.omega0 + coupling_coefficient(params) * shift)
}

/// `dω/dt = κ·Φ̇(t)`, the same on both branches.
pub fn torque_rhs(params: &ElectronParams, profile: &FluxProfile, t: f64) -> Result<f64> {
    Ok(coupling_coefficient(params) * profile.derivative(t)?)
}

/// Largest admissible RK4 step for integrating to `t_end`.
pub fn max_step(profile: &FluxProfile, t_end: f64) -> f64 {
    let base = t_end / 100.0;
    profile.step_bound().map_or(base, |b| b.min(base))
}

/// Even step count `n` and spacing `h = t_end/n <= step`.
fn uniform_grid(t_end: f64, step: f64) -> Result<(usize, f64)> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::domain("trajectory", format!("t_end must be > 0, got {t_end}")));
    }
    if !(step > 0.0 && step <= t_end) {
        return Err(Error::domain(
            "trajectory",
            format!("step must lie in (0, t_end = {t_end}], got {step}"),
        ));
    }
    let mut n = (t_end / step).ceil() as usize;
    // guard against ceil landing one short from rounding in t_end/step
    if t_end / n as f64 > step {
        n += 1;
    }
    if n % 2 == 1 {
        n += 1;
    }
    Ok((n, t_end / n as f64))
}

fn grid_time(i: usize, n: usize, h: f64, t_end: f64) -> f64 {
    if i == n {
        t_end
    } else {
        i as f64 * h
    }
}

/// One classical RK4 step for `(φ, ω)`; the right-hand side only depends on
/// time, so a single derivative evaluation is shared by both stages at `t+h/2`.
fn rk4_step(
    rate: &impl Fn(f64) -> Result<f64>,
    t: f64,
    t_next: f64,
    phi: f64,
    omega: f64,
) -> Result<(f64, f64)> {
    let h = t_next - t;
    let a0 = rate(t)?;
    let a_mid = rate(t + 0.5 * h)?;
    let a1 = rate(t_next)?;

    let k1_phi = omega;
    let k1_omega = a0;
    let k2_phi = omega + 0.5 * h * k1_omega;
    let k2_omega = a_mid;
    let k3_phi = omega + 0.5 * h * k2_omega;
    let k3_omega = a_mid;
    let k4_phi = omega + h * k3_omega;
    let k4_omega = a1;

    Ok((
        phi + h / 6.0 * (k1_phi + 2.0 * k2_phi + 2.0 * k3_phi + k4_phi),
        omega + h / 6.0 * (k1_omega + 2.0 * k2_omega + 2.0 * k3_omega + k4_omega),
    ))
}

fn check_step(profile: &FluxProfile, t_end: f64, step: f64) -> Result<()> {
    let bound = max_step(profile, t_end);
    if step > bound {
        return Err(Error::StepTooCoarse { step, bound });
    }
    Ok(())
}

/// Integrates one branch from `(φ, ω) = (0, σω0)` with fixed-step RK4.
///
/// `step` is an upper bound; the grid is refined to an even number of equal
/// steps ending exactly on `t_end`.
pub fn integrate_trajectory(
    params: &ElectronParams,
    cfg: &SolenoidConfig,
    branch: Branch,
    t_end: f64,
    step: f64,
) -> Result<Trajectory> {
    params.check_orbit(cfg)?;
    let (n, h) = uniform_grid(t_end, step)?;
    check_step(cfg.profile(), t_end, step)?;
    let rate = |t: f64| torque_rhs(params, cfg.profile(), t);

    let mut samples = Vec::with_capacity(n + 1);
    let (mut phi, mut omega) = (0.0, branch.sign() * params.omega0);
    samples.push(TrajectorySample { t: 0.0, phi, omega });
    for i in 0..n {
        let (t, t_next) = (grid_time(i, n, h, t_end), grid_time(i + 1, n, h, t_end));
        (phi, omega) = rk4_step(&rate, t, t_next, phi, omega)?;
        samples.push(TrajectorySample {
            t: t_next,
            phi,
            omega,
        });
    }
    Ok(Trajectory {
        branch,
        samples,
        step: h,
        method: TrajectoryMethod::Rk4,
    })
}

/// `T = π/ω0`.
pub fn encounter_time(params: &ElectronParams) -> f64 {
    PI / params.omega0
}

/// Final angles `(φ1, φ2)` after integrating both branches together to `t_end`.
fn joint_final_angles(
    params: &ElectronParams,
    profile: &FluxProfile,
    t_end: f64,
    step: f64,
) -> Result<(f64, f64)> {
    let (n, h) = uniform_grid(t_end, step)?;
    let rate = |t: f64| torque_rhs(params, profile, t);
    let (mut phi1, mut omega1) = (0.0, params.omega0);
    let (mut phi2, mut omega2) = (0.0, -params.omega0);
    for i in 0..n {
        let (t, t_next) = (grid_time(i, n, h, t_end), grid_time(i + 1, n, h, t_end));
        (phi1, omega1) = rk4_step(&rate, t, t_next, phi1, omega1)?;
        (phi2, omega2) = rk4_step(&rate, t, t_next, phi2, omega2)?;
    }
    Ok((phi1, phi2))
}

/// Finds `T` with `φ1(T) − φ2(T) = 2π` by bisection on RK4 trajectories.
///
/// The bracket is `π/ω0 ± 10%`. The meeting angle is recovered from the same
/// integration as `φ_f = (φ1 + φ2)/2 + π`.
pub fn encounter_time_numeric(
    params: &ElectronParams,
    cfg: &SolenoidConfig,
    step: f64,
) -> Result<EncounterResult> {
    params.check_orbit(cfg)?;
    let profile = cfg.profile();
    let guess = encounter_time(params);
    check_step(profile, guess, step)?;

    let gap = |t: f64| -> Result<f64> {
        let (p1, p2) = joint_final_angles(params, profile, t, step.min(t))?;
        Ok(p1 - p2 - 2.0 * PI)
    };
    let (mut lo, mut hi) = (0.9 * guess, 1.1 * guess);
    let mut g_lo = gap(lo)?;
    let g_hi = gap(hi)?;
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::Solver(format!(
            "encounter time not bracketed in [{lo}, {hi}]: gap {g_lo} and {g_hi}"
        )));
    }
    let tol = 1e-13 * guess.max(1.0);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let g_mid = gap(mid)?;
        if g_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let (p1, p2) = joint_final_angles(params, profile, t, step.min(t))?;
    Ok(EncounterResult {
        t,
        phi_f: 0.5 * (p1 + p2) + PI,
        method: EncounterMethod::NumericRoot,
    })
}

/// `φ_f = π + κ·∫₀ᵀ [Φ(t) − Φ(0)] dt` with `T = π/ω0`.
pub fn encounter_angle(params: &ElectronParams, profile: &FluxProfile, rel_tol: f64) -> Result<f64> {
    let t = encounter_time(params);
    Ok(PI + coupling_coefficient(params) * profile.excess_integral(t, rel_tol)?)
}

/// Closed-form encounter time and angle.
pub fn encounter(params: &ElectronParams, profile: &FluxProfile, rel_tol: f64) -> Result<EncounterResult> {
    Ok(EncounterResult {
        t: encounter_time(params),
        phi_f: encounter_angle(params, profile, rel_tol)?,
        method: EncounterMethod::ClosedForm,
    })
}
