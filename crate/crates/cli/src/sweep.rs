//! `f(ΩT)` sweep over the offset-sinusoid flux and its emitters.

use std::io::{self, Write};

use tdab_core::dynamics::TrajectoryMethod;
use tdab_core::format::{csv_line, fmt_g17};
use tdab_core::{
    ab_phase_trajectories, encounter_angle, encounter_time, f_factor, f_factor_printed_sign,
    max_step, FluxProfile, SolenoidConfig,
};

use crate::config::RunConfig;
use crate::error::CliError;

pub const SWEEP_HEADER: &str = "omega_T,f,phi_AB,phi_f";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub omega_t: f64,
    pub f: f64,
    pub phi_ab: f64,
    pub phi_f: f64,
    /// `f` with the opposite sign on the oscillating term.
    pub f_printed_sign: f64,
}

/// Runs the sweep block of `cfg`.
///
/// `T = π/ω0` stays fixed and `Ω = ΩT/T` varies; the flux is
/// `Φ0·(1 + ratio·sin Ωt)` with `Φ0 = Φ(0)` of the configured profile.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<SweepRow>, CliError> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("the sweep subcommand needs a [sweep] section".into()))?;
    let params = &cfg.electron;
    let t = encounter_time(params);
    let phi0 = cfg.solenoid.profile().value(0.0)?;
    let tol = cfg.numerics.quad_rel_tol;

    spec.grid()
        .into_iter()
        .map(|omega_t| {
            let profile = FluxProfile::sinusoid(phi0, spec.ratio * phi0, omega_t / t)?;
            let step = cfg.numerics.rk4_step.map(|s| s.min(max_step(&profile, t)));
            let solenoid = SolenoidConfig::new(cfg.solenoid.radius(), profile)?;
            let phase = ab_phase_trajectories(params, &solenoid, TrajectoryMethod::Rk4, step, tol)?;
            Ok(SweepRow {
                omega_t,
                f: f_factor(spec.ratio, omega_t)?,
                phi_ab: phase.phi_ab,
                phi_f: encounter_angle(params, solenoid.profile(), tol)?,
                f_printed_sign: f_factor_printed_sign(spec.ratio, omega_t)?,
            })
        })
        .collect()
}

pub fn emit_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    out.write_all(SWEEP_HEADER.as_bytes())?;
    out.write_all(b"\n")?;
    for r in rows {
        let line = csv_line(&[
            fmt_g17(r.omega_t),
            fmt_g17(r.f),
            fmt_g17(r.phi_ab),
            fmt_g17(r.phi_f),
        ]);
        out.write_all(line.as_bytes())?;
    }
    out.flush()
}

fn emit_columns<W: Write>(
    rows: &[SweepRow],
    mut out: W,
    label: &str,
    column: impl Fn(&SweepRow) -> f64,
) -> io::Result<()> {
    writeln!(out, "# omega_T {label}")?;
    for r in rows {
        writeln!(out, "{} {}", fmt_g17(r.omega_t), fmt_g17(column(r)))?;
    }
    out.flush()
}

/// Two whitespace-separated columns `omega_T f` for plotting tools.
pub fn emit_plot_data<W: Write>(rows: &[SweepRow], out: W) -> io::Result<()> {
    emit_columns(rows, out, "f", |r| r.f)
}

/// Same layout as [`emit_plot_data`] for the sign-flipped curve.
pub fn emit_plot_data_printed_sign<W: Write>(rows: &[SweepRow], out: W) -> io::Result<()> {
    emit_columns(rows, out, "f_paper_literal_sign", |r| r.f_printed_sign)
}
