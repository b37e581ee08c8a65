//! TOML run configuration.
//!
//! ```toml
//! [solenoid]
//! R = 1.0
//! [solenoid.profile]
//! kind = "sinusoid"      # constant | ramp | sinusoid | tabulated
//! phi0 = 1.0
//! phi1 = 0.1
//! omega = 1.0
//!
//! [electron]
//! e = 1.0
//! m = 1.0
//! rho = 2.0
//! omega0 = 1.0
//! coupling_mode = "consistent"   # or "paper_literal"
//!
//! [numerics]
//! rk4_step = 0.01        # optional
//! quad_rel_tol = 1e-10   # optional
//!
//! [sweep]                # optional
//! omega_T_min = 0.5
//! omega_T_max = 40.0
//! points = 200
//! ratio = 0.1
//! ```
//!
//! A tabulated profile names a `t,phi` CSV with `csv_path`, resolved relative
//! to the configuration file.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use tdab_core::{CouplingMode, ElectronParams, FluxProfile, SolenoidConfig};

use crate::error::CliError;

pub const DEFAULT_QUAD_REL_TOL: f64 = 1e-10;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    solenoid: RawSolenoid,
    electron: RawElectron,
    #[serde(default)]
    numerics: RawNumerics,
    sweep: Option<RawSweep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolenoid {
    #[serde(rename = "R")]
    radius: f64,
    profile: RawProfile,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawProfile {
    Constant { phi0: f64 },
    Ramp { phi0: f64, rate: f64 },
    Sinusoid { phi0: f64, phi1: f64, omega: f64 },
    Tabulated { csv_path: PathBuf },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElectron {
    e: f64,
    m: f64,
    rho: f64,
    omega0: f64,
    #[serde(default)]
    coupling_mode: RawCoupling,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawCoupling {
    #[default]
    Consistent,
    PaperLiteral,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNumerics {
    rk4_step: Option<f64>,
    quad_rel_tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    #[serde(rename = "omega_T_min")]
    omega_t_min: f64,
    #[serde(rename = "omega_T_max")]
    omega_t_max: f64,
    points: usize,
    ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Numerics {
    /// `None` picks the largest admissible step for each integration.
    pub rk4_step: Option<f64>,
    pub quad_rel_tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub omega_t_min: f64,
    pub omega_t_max: f64,
    pub points: usize,
    pub ratio: f64,
}

impl SweepSpec {
    /// Uniform grid including both ends.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.omega_t_max - self.omega_t_min;
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.omega_t_max
                } else {
                    self.omega_t_min + span * i as f64 / last as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub solenoid: SolenoidConfig,
    pub electron: ElectronParams,
    pub numerics: Numerics,
    pub sweep: Option<SweepSpec>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parses and validates a configuration document. Relative `csv_path`s are
/// resolved against `base_dir`.
pub fn parse_config(text: &str, base_dir: &Path) -> Result<RunConfig, CliError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| invalid(e.to_string()))?;

    let profile = match raw.solenoid.profile {
        RawProfile::Constant { phi0 } => FluxProfile::constant(phi0)?,
        RawProfile::Ramp { phi0, rate } => FluxProfile::ramp(phi0, rate)?,
        RawProfile::Sinusoid { phi0, phi1, omega } => FluxProfile::sinusoid(phi0, phi1, omega)?,
        RawProfile::Tabulated { csv_path } => {
            let path = base_dir.join(csv_path);
            let (t, phi) = read_flux_csv(&path)?;
            FluxProfile::tabulated(t, phi).map_err(|e| {
                invalid(format!("solenoid.profile.csv_path {}: {e}", path.display()))
            })?
        }
    };
    if !(raw.solenoid.radius > 0.0 && raw.solenoid.radius.is_finite()) {
        return Err(invalid(format!(
            "solenoid.R must be > 0, got {}",
            raw.solenoid.radius
        )));
    }
    let solenoid = SolenoidConfig::new(raw.solenoid.radius, profile)?;

    let mode = match raw.electron.coupling_mode {
        RawCoupling::Consistent => CouplingMode::Consistent,
        RawCoupling::PaperLiteral => CouplingMode::PaperLiteral,
    };
    let el = raw.electron;
    for (key, v) in [
        ("electron.e", el.e),
        ("electron.m", el.m),
        ("electron.rho", el.rho),
        ("electron.omega0", el.omega0),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(invalid(format!("{key} must be > 0, got {v}")));
        }
    }
    let electron = ElectronParams::new(el.m, el.e, el.rho, el.omega0, mode)?;
    if electron.rho <= solenoid.radius() {
        return Err(invalid(format!(
            "electron.rho must exceed solenoid.R ({} <= {})",
            electron.rho,
            solenoid.radius()
        )));
    }

    let quad_rel_tol = raw.numerics.quad_rel_tol.unwrap_or(DEFAULT_QUAD_REL_TOL);
    if !(quad_rel_tol > 0.0 && quad_rel_tol <= 1e-4) {
        return Err(invalid(format!(
            "numerics.quad_rel_tol must lie in (0, 1e-4], got {quad_rel_tol}"
        )));
    }
    if let Some(step) = raw.numerics.rk4_step {
        if !(step > 0.0 && step.is_finite()) {
            return Err(invalid(format!("numerics.rk4_step must be > 0, got {step}")));
        }
        if let Some(bound) = solenoid.profile().step_bound() {
            if step > bound {
                return Err(invalid(format!(
                    "numerics.rk4_step = {step} exceeds the step bound {bound} for the {} profile",
                    solenoid.profile().kind()
                )));
            }
        }
    }

    let sweep = raw
        .sweep
        .map(|s| {
            if !(s.omega_t_min > 0.0 && s.omega_t_min.is_finite()) {
                return Err(invalid(format!(
                    "sweep.omega_T_min must be > 0, got {}",
                    s.omega_t_min
                )));
            }
            if !(s.omega_t_max > s.omega_t_min && s.omega_t_max.is_finite()) {
                return Err(invalid(format!(
                    "sweep.omega_T_max must exceed sweep.omega_T_min, got {}",
                    s.omega_t_max
                )));
            }
            if s.points < 2 {
                return Err(invalid(format!("sweep.points must be >= 2, got {}", s.points)));
            }
            if !s.ratio.is_finite() {
                return Err(invalid("sweep.ratio must be finite"));
            }
            Ok(SweepSpec {
                omega_t_min: s.omega_t_min,
                omega_t_max: s.omega_t_max,
                points: s.points,
                ratio: s.ratio,
            })
        })
        .transpose()?;

    Ok(RunConfig {
        solenoid,
        electron,
        numerics: Numerics {
            rk4_step: raw.numerics.rk4_step,
            quad_rel_tol,
        },
        sweep,
    })
}

pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_config(&text, base)
}

#[derive(Debug, Deserialize)]
struct FluxRow {
    t: f64,
    phi: f64,
}

/// Reads a `t,phi` CSV of flux samples.
pub fn read_flux_csv(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let file = std::fs::File::open(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["t", "phi"] {
        return Err(invalid(format!(
            "{}: expected header `t,phi`, found `{}`",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut t = Vec::new();
    let mut phi = Vec::new();
    for row in reader.deserialize::<FluxRow>() {
        let row = row.map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        t.push(row.t);
        phi.push(row.phi);
    }
    Ok((t, phi))
}
