//! Command-line front end: configuration, the `fields`, `trajectory`,
//! `phase` and `sweep` subcommands, and their output formats.

pub mod config;
pub mod error;
pub mod sweep;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use tdab_core::format::{csv_line, fmt_g17, write_trajectory_csv, PHASE_HEADER};
use tdab_core::phase::ab_phase;
use tdab_core::{field_at, integrate_trajectory, max_step, Branch, CylPoint, Route};

pub use config::{load_config, parse_config, Numerics, RunConfig, SweepSpec};
pub use error::CliError;
pub use sweep::{emit_csv, emit_plot_data, emit_plot_data_printed_sign, run_sweep, SweepRow};

#[derive(Debug, Parser)]
#[command(name = "tdab", version, about = "Time-dependent Aharonov-Bohm phase laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print B_z, A_phi and E_phi at radius RHO and time T.
    Fields {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        rho: f64,
        #[arg(long = "t")]
        t: f64,
    },
    /// Integrate one branch with RK4 and write `t,phi,omega` samples.
    Trajectory {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        branch: BranchArg,
        #[arg(long = "t-end")]
        t_end: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the AB phase by one route as `T,phi_AB,phi_f,route`.
    Phase {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        route: RouteArg,
    },
    /// Sweep f(ΩT) for the offset-sinusoid flux.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "plot-data")]
        plot_data: Option<PathBuf>,
        /// Also write the sign-flipped f curve in plot-data layout.
        #[arg(long = "plot-data-printed-sign")]
        plot_data_printed_sign: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BranchArg {
    C1,
    C2,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::C1 => Branch::C1,
            BranchArg::C2 => Branch::C2,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RouteArg {
    Mean,
    Closed,
    Numeric,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Mean => Route::MeanFluxClosedForm,
            RouteArg::Closed => Route::ClosedFormTrajectories,
            RouteArg::Numeric => Route::NumericTrajectories,
        }
    }
}

pub const FIELDS_HEADER: &str = "rho,t,B_z,A_phi,E_phi";

fn write_file(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<(), CliError> {
    let wrap = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(wrap)?;
    let mut out = BufWriter::new(file);
    body(&mut out).map_err(wrap)?;
    out.flush().map_err(wrap)
}

/// Executes one subcommand, writing any console output to `stdout`.
pub fn run<W: Write>(cli: Cli, mut stdout: W) -> Result<(), CliError> {
    let console = |e| CliError::Write {
        path: PathBuf::from("<stdout>"),
        source: e,
    };
    match cli.command {
        Command::Fields { config, rho, t } => {
            let cfg = load_config(&config)?;
            let sample = field_at(&cfg.solenoid, CylPoint::at_radius(rho)?, t)?;
            let text = format!(
                "{FIELDS_HEADER}\n{}",
                csv_line(&[
                    fmt_g17(rho),
                    fmt_g17(t),
                    fmt_g17(sample.b_z),
                    fmt_g17(sample.a_phi),
                    fmt_g17(sample.e_phi),
                ])
            );
            stdout.write_all(text.as_bytes()).map_err(console)
        }
        Command::Trajectory {
            config,
            branch,
            t_end,
            out,
        } => {
            let cfg = load_config(&config)?;
            if !(t_end > 0.0 && t_end.is_finite()) {
                return Err(CliError::Config(format!("--t-end must be > 0, got {t_end}")));
            }
            let step = cfg
                .numerics
                .rk4_step
                .unwrap_or_else(|| max_step(cfg.solenoid.profile(), t_end));
            let traj = integrate_trajectory(&cfg.electron, &cfg.solenoid, branch.into(), t_end, step)?;
            write_file(&out, |w| write_trajectory_csv(&traj, w))
        }
        Command::Phase { config, route } => {
            let cfg = load_config(&config)?;
            let result = ab_phase(
                route.into(),
                &cfg.electron,
                &cfg.solenoid,
                cfg.numerics.rk4_step,
                cfg.numerics.quad_rel_tol,
            )?;
            let text = format!("{PHASE_HEADER}\n{}", result.csv_row());
            stdout.write_all(text.as_bytes()).map_err(console)
        }
        Command::Sweep {
            config,
            out,
            plot_data,
            plot_data_printed_sign,
        } => {
            let cfg = load_config(&config)?;
            let rows = run_sweep(&cfg)?;
            write_file(&out, |w| emit_csv(&rows, w))?;
            if let Some(path) = plot_data {
                write_file(&path, |w| emit_plot_data(&rows, w))?;
            }
            if let Some(path) = plot_data_printed_sign {
                write_file(&path, |w| emit_plot_data_printed_sign(&rows, w))?;
            }
            Ok(())
        }
    }
}
