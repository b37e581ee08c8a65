//! Flux profiles and the field of an infinitely long solenoid.
//!
//! With total flux `Φ(t)` through a solenoid of radius `R`, and the scalar
//! potential set to zero:
//!
//! | region | `B_z`      | `A_φ`           | `E_φ`            |
//! |--------|------------|-----------------|------------------|
//! | ρ < R  | Φ/(πR²)    | ρΦ/(2πR²)       | −ρΦ̇/(2πR²)       |
//! | ρ ≥ R  | 0          | Φ/(2πρ)         | −Φ̇/(2πρ)         |
//!
//! `B_z` is the curl of the interior `A_φ`, so `Φ = πR²·B`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::interp::CubicSpline;
use crate::quadrature::adaptive_simpson;

/// Time dependence of the flux threading the solenoid.
#[derive(Debug, Clone, PartialEq)]
pub enum FluxProfile {
    Constant { phi0: f64 },
    /// `Φ(t) = Φ0 + rate·t`
    Ramp { phi0: f64, rate: f64 },
    /// `Φ(t) = Φ0 + Φ1·sin(Ω t)`
    OffsetSinusoid { phi0: f64, phi1: f64, omega: f64 },
    /// Natural cubic spline through `(t, Φ)` samples.
    Tabulated(CubicSpline),
}

impl FluxProfile {
    pub fn constant(phi0: f64) -> Result<Self> {
        finite("constant.phi0", phi0)?;
        Ok(Self::Constant { phi0 })
    }

    pub fn ramp(phi0: f64, rate: f64) -> Result<Self> {
        finite("ramp.phi0", phi0)?;
        finite("ramp.rate", rate)?;
        Ok(Self::Ramp { phi0, rate })
    }

    pub fn sinusoid(phi0: f64, phi1: f64, omega: f64) -> Result<Self> {
        finite("sinusoid.phi0", phi0)?;
        finite("sinusoid.phi1", phi1)?;
        finite("sinusoid.omega", omega)?;
        if omega <= 0.0 {
            return Err(Error::invalid("sinusoid.omega", "must be > 0"));
        }
        Ok(Self::OffsetSinusoid { phi0, phi1, omega })
    }

    pub fn tabulated(times: Vec<f64>, flux: Vec<f64>) -> Result<Self> {
        Ok(Self::Tabulated(CubicSpline::new(times, flux)?))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Constant { .. } => "constant",
            Self::Ramp { .. } => "ramp",
            Self::OffsetSinusoid { .. } => "sinusoid",
            Self::Tabulated(_) => "tabulated",
        }
    }

    /// `Φ(t)`.
    pub fn value(&self, t: f64) -> Result<f64> {
        match self {
            Self::Constant { phi0 } => Ok(*phi0),
            Self::Ramp { phi0, rate } => Ok(phi0 + rate * t),
            Self::OffsetSinusoid { phi0, phi1, omega } => Ok(phi0 + phi1 * (omega * t).sin()),
            Self::Tabulated(s) => s.value(t),
        }
    }

    /// `Φ̇(t)`.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        match self {
            Self::Constant { .. } => Ok(0.0),
            Self::Ramp { rate, .. } => Ok(*rate),
            Self::OffsetSinusoid { phi1, omega, .. } => Ok(phi1 * omega * (omega * t).cos()),
            Self::Tabulated(s) => s.derivative(t),
        }
    }

    /// `∫ₐᵇ Φ(t) dt`: closed form for the analytic variants, adaptive Simpson
    /// at `rel_tol` for tabulated samples.
    pub fn integral(&self, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
        match self {
            Self::Constant { phi0 } => Ok(phi0 * (b - a)),
            Self::Ramp { phi0, rate } => Ok(phi0 * (b - a) + 0.5 * rate * (b - a) * (b + a)),
            Self::OffsetSinusoid { phi0, phi1, omega } => {
                // cos Ωa − cos Ωb written as a product to avoid cancellation at small Ω
                let diff =
                    2.0 * (0.5 * omega * (a + b)).sin() * (0.5 * omega * (b - a)).sin();
                Ok(phi0 * (b - a) + phi1 * diff / omega)
            }
            Self::Tabulated(s) => {
                s.value(a)?;
                s.value(b)?;
                adaptive_simpson(|t| s.value(t), a, b, rel_tol)
            }
        }
    }

    /// `∫₀ᵀ [Φ(t) − Φ(0)] dt`.
    pub fn excess_integral(&self, horizon: f64, rel_tol: f64) -> Result<f64> {
        match self {
            Self::Constant { .. } => Ok(0.0),
            Self::Ramp { rate, .. } => Ok(0.5 * rate * horizon * horizon),
            Self::OffsetSinusoid { phi1, omega, .. } => {
                let s = (0.5 * omega * horizon).sin();
                Ok(phi1 * 2.0 * s * s / omega)
            }
            Self::Tabulated(s) => {
                let phi_start = s.value(0.0)?;
                s.value(horizon)?;
                adaptive_simpson(|t| Ok(s.value(t)? - phi_start), 0.0, horizon, rel_tol)
            }
        }
    }

    /// Largest RK4 step that resolves the profile's own timescale, if it has
    /// one: `0.05/Ω` for sinusoids, 1/64 of the smallest knot spacing for
    /// samples (the spline's third derivative jumps at every knot, which
    /// drops RK4 to third order on the steps that straddle one).
    pub fn step_bound(&self) -> Option<f64> {
        match self {
            Self::OffsetSinusoid { omega, .. } => Some(0.05 / omega),
            Self::Tabulated(s) => Some(s.min_spacing() / 64.0),
            _ => None,
        }
    }
}

fn finite(what: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(what, format!("must be finite, got {v}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolenoidConfig {
    radius: f64,
    profile: FluxProfile,
}

impl SolenoidConfig {
    pub fn new(radius: f64, profile: FluxProfile) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid("solenoid.R", format!("must be > 0, got {radius}")));
        }
        Ok(Self { radius, profile })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn profile(&self) -> &FluxProfile {
        &self.profile
    }
}

/// Point in cylindrical coordinates. `phi` is kept unwrapped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylPoint {
    pub rho: f64,
    pub phi: f64,
    pub z: f64,
}

impl CylPoint {
    pub fn new(rho: f64, phi: f64, z: f64) -> Result<Self> {
        if !(rho >= 0.0) {
            return Err(Error::invalid("point.rho", format!("must be >= 0, got {rho}")));
        }
        Ok(Self { rho, phi, z })
    }

    pub fn at_radius(rho: f64) -> Result<Self> {
        Self::new(rho, 0.0, 0.0)
    }
}

/// Non-vanishing field components; everything else is zero by symmetry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub b_z: f64,
    pub a_phi: f64,
    pub e_phi: f64,
}

/// Evaluates `B_z`, `A_φ` and `E_φ` at `p` and time `t`. Points exactly on
/// the surface use the exterior formulas.
pub fn field_at(cfg: &SolenoidConfig, p: CylPoint, t: f64) -> Result<FieldSample> {
    let flux = cfg.profile.value(t)?;
    let flux_rate = cfg.profile.derivative(t)?;
    let r = cfg.radius;
    let rho = p.rho;
    if rho < r {
        let area = PI * r * r;
        Ok(FieldSample {
            b_z: flux / area,
            a_phi: rho * flux / (2.0 * area),
            e_phi: -rho * flux_rate / (2.0 * area),
        })
    } else {
        let circumference = 2.0 * PI * rho;
        Ok(FieldSample {
            b_z: 0.0,
            a_phi: flux / circumference,
            e_phi: -flux_rate / circumference,
        })
    }
}
