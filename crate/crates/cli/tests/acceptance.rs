//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Tolerances are fixed here and never recalibrated.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tdab_cli::{run_sweep, Numerics, RunConfig, SweepSpec};
use tdab_core::dynamics::{encounter_angle, TrajectoryMethod};
use tdab_core::phase::ab_phase;
use tdab_core::{
    ab_phase_trajectories, coupling_coefficient, encounter_angle_sinusoid, encounter_time,
    encounter_time_numeric, f_factor, f_limits, field_at, integrate_trajectory, max_step,
    omega_closed_form, Branch, CouplingMode, CylPoint, ElectronParams, FluxProfile, Route,
    SolenoidConfig,
};

const QUAD_TOL: f64 = 1e-10;
const SEED: u64 = 0x7dab_2025;

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Random electron/flux tuple for the offset sinusoid with `Φ1/Φ0 = 0.1`.
struct Tuple {
    params: ElectronParams,
    phi0: f64,
    omega: f64,
}

fn random_tuples(rng: &mut StdRng, n: usize, mode: CouplingMode) -> Vec<Tuple> {
    (0..n)
        .map(|_| Tuple {
            params: ElectronParams::new(
                rng.random_range(0.1..5.0),
                rng.random_range(0.1..5.0),
                rng.random_range(1.2..10.0),
                rng.random_range(0.5..4.0),
                mode,
            )
            .unwrap(),
            phi0: rng.random_range(0.5..3.0),
            omega: rng.random_range(0.05..20.0),
        })
        .collect()
}

fn sinusoid_cfg(t: &Tuple) -> SolenoidConfig {
    SolenoidConfig::new(1.0, FluxProfile::sinusoid(t.phi0, 0.1 * t.phi0, t.omega).unwrap()).unwrap()
}

/// `e·(1/T)∫₀ᵀ Φ dt` for the offset sinusoid, written out independently.
fn mean_flux_phase(t: &Tuple) -> f64 {
    let horizon = PI / t.params.omega0;
    let x = t.omega * horizon;
    t.params.charge * (t.phi0 + 0.1 * t.phi0 * (1.0 - x.cos()) / x)
}

fn numeric_phase(params: &ElectronParams, cfg: &SolenoidConfig) -> tdab_core::PhaseResult {
    ab_phase_trajectories(params, cfg, TrajectoryMethod::Rk4, None, QUAD_TOL).unwrap()
}

fn static_reduction() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let (mut worst_phase, mut worst_angle) = (0.0f64, 0.0f64);
    for mode in [CouplingMode::Consistent, CouplingMode::PaperLiteral] {
        for t in random_tuples(&mut rng, 10, mode) {
            let cfg = SolenoidConfig::new(1.0, FluxProfile::constant(t.phi0).unwrap()).unwrap();
            let want = t.params.charge * t.phi0;
            for route in Route::ALL {
                let r = ab_phase(route, &t.params, &cfg, None, QUAD_TOL).unwrap();
                worst_phase = worst_phase.max(rel(r.phi_ab, want));
                worst_angle = worst_angle.max((r.phi_f - PI).abs());
            }
        }
    }
    outcome(
        worst_phase <= 1e-10 && worst_angle <= 1e-10,
        format!("max rel |phi_AB - e*Phi0| = {worst_phase:.2e}, max |phi_f - pi| = {worst_angle:.2e}"),
    )
}

fn central_claim() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let worst = random_tuples(&mut rng, 20, CouplingMode::Consistent)
        .iter()
        .map(|t| rel(numeric_phase(&t.params, &sinusoid_cfg(t)).phi_ab, mean_flux_phase(t)))
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-7,
        format!("20 tuples, max rel |phi_AB(RK4) - e*mean flux| = {worst:.2e}"),
    )
}

fn coupling_scaling() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let (mut phase_change, mut angle_dev, mut numeric_angle_dev) = (0.0f64, 0.0f64, 0.0f64);
    for t in random_tuples(&mut rng, 20, CouplingMode::Consistent) {
        let cfg = sinusoid_cfg(&t);
        let scaled = ElectronParams {
            mass: t.params.mass / 10.0,
            ..t.params
        };
        assert!(rel(coupling_coefficient(&scaled), 10.0 * coupling_coefficient(&t.params)) < 1e-14);
        let base = numeric_phase(&t.params, &cfg);
        let heavy = numeric_phase(&scaled, &cfg);
        phase_change = phase_change.max(rel(heavy.phi_ab, base.phi_ab));
        numeric_angle_dev = numeric_angle_dev.max(rel(heavy.phi_f - PI, 10.0 * (base.phi_f - PI)));

        let a = encounter_angle(&t.params, cfg.profile(), QUAD_TOL).unwrap() - PI;
        let b = encounter_angle(&scaled, cfg.profile(), QUAD_TOL).unwrap() - PI;
        angle_dev = angle_dev.max(rel(b, 10.0 * a));
    }
    outcome(
        phase_change < 1e-7 && angle_dev <= 1e-8 && numeric_angle_dev <= 1e-8,
        format!(
            "phi_AB rel change {phase_change:.2e}; (phi_f - pi) ratio vs 10: closed form {angle_dev:.2e}, RK4 {numeric_angle_dev:.2e}"
        ),
    )
}

fn fig2_config(ratio: f64, points: usize) -> RunConfig {
    RunConfig {
        solenoid: SolenoidConfig::new(1.0, FluxProfile::constant(1.0).unwrap()).unwrap(),
        electron: ElectronParams::new(1.0, 1.0, 2.0, 1.0, CouplingMode::Consistent).unwrap(),
        numerics: Numerics {
            rk4_step: None,
            quad_rel_tol: QUAD_TOL,
        },
        sweep: Some(SweepSpec {
            omega_t_min: 0.5,
            omega_t_max: 40.0,
            points,
            ratio,
        }),
    }
}

fn fig2_reproduction() -> Outcome {
    let ratio = 0.1;
    let rows = run_sweep(&fig2_config(ratio, 200)).unwrap();
    let ordered = rows.len() == 200 && rows.windows(2).all(|w| w[1].omega_t > w[0].omega_t);

    let above_one = rows.iter().all(|r| r.f >= 1.0);
    let minima = rows
        .windows(3)
        .filter(|w| w[1].f < w[0].f && w[1].f < w[2].f)
        .count();
    let envelope = rows
        .iter()
        .all(|r| (r.f - 1.0).abs() <= 2.0 * ratio / r.omega_t + 1e-12);
    let full_periods = (1..=6)
        .map(|k| (f_factor(ratio, 2.0 * PI * k as f64).unwrap() - 1.0).abs())
        .fold(0.0, f64::max);
    let half = (f_factor(ratio, PI).unwrap() - (1.0 + 0.2 / PI)).abs();
    let consistent_rows = rows.iter().all(|r| (r.f - r.phi_ab).abs() <= 1e-7);
    let mirrored = rows
        .iter()
        .all(|r| ((r.f - 1.0) + (r.f_printed_sign - 1.0)).abs() < 1e-15);

    outcome(
        ordered
            && above_one
            && minima >= 5
            && envelope
            && full_periods <= 1e-12
            && half <= 1e-12
            && consistent_rows
            && mirrored,
        format!(
            "{} rows, {minima} local minima, f >= 1: {above_one}, envelope ok: {envelope}, \
             max |f(2 pi k) - 1| = {full_periods:.1e}, |f(pi) - (1 + 0.2/pi)| = {half:.1e}, \
             |f - phi_AB| <= 1e-7: {consistent_rows}, printed-sign curve mirrored: {mirrored}",
            rows.len()
        ),
    )
}

fn limits() -> Outcome {
    let ratio = 0.1;
    let small = f_factor(ratio, 1e-6).unwrap() - 1.0;
    let large = (f_factor(ratio, 1e6).unwrap() - 1.0).abs();
    let limits_ok = f_limits(ratio).map(|l| l == (1.0, 1.0)).unwrap_or(false);

    // φ_f − π = κ·Φ0·T·(f − 1), so the same bounds apply after scaling by κΦ0T
    let params = ElectronParams::new(1.0, 1.0, 2.0, 1.0, CouplingMode::PaperLiteral).unwrap();
    let t = encounter_time(&params);
    let scale = coupling_coefficient(&params) * 1.0 * t;
    let angle_small = encounter_angle_sinusoid(&params, ratio, 1e-6 / t) - PI;
    let angle_large = (encounter_angle_sinusoid(&params, ratio, 1e6 / t) - PI).abs();

    let small_ok = small <= 1e-7 * ratio;
    let large_ok = large <= 2.0 * ratio * 1e-6;
    let angle_small_ok = angle_small <= scale * 1e-7 * ratio;
    let angle_large_ok = angle_large <= scale * 2.0 * ratio * 1e-6;
    outcome(
        small_ok && large_ok && angle_small_ok && angle_large_ok && limits_ok,
        format!(
            "f(1e-6) - 1 = {small:.3e} (bound {:.1e}: {small_ok}); |f(1e6) - 1| = {large:.3e} \
             (bound {:.1e}: {large_ok}); phi_f - pi small-x {angle_small:.3e} (bound {:.3e}: {angle_small_ok}), \
             large-x {angle_large:.3e} (bound {:.3e}: {angle_large_ok}); f_limits = (1, 1): {limits_ok}",
            1e-7 * ratio,
            2.0 * ratio * 1e-6,
            scale * 1e-7 * ratio,
            scale * 2.0 * ratio * 1e-6,
        ),
    )
}

fn ode_fidelity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 2);
    let mut worst = 0.0f64;
    for t in random_tuples(&mut rng, 10, CouplingMode::Consistent) {
        let cfg = sinusoid_cfg(&t);
        let horizon = encounter_time(&t.params);
        for branch in Branch::BOTH {
            let traj = integrate_trajectory(
                &t.params,
                &cfg,
                branch,
                horizon,
                max_step(cfg.profile(), horizon),
            )
            .unwrap();
            for s in &traj.samples {
                let w = omega_closed_form(&t.params, cfg.profile(), branch, s.t).unwrap();
                worst = worst.max(rel(s.omega, w));
            }
        }
    }

    // strong coupling so the discretisation error sits far above roundoff
    let params = ElectronParams::new(0.01, 2.0, 1.5, 1.0, CouplingMode::Consistent).unwrap();
    let cfg = SolenoidConfig::new(1.0, FluxProfile::sinusoid(1.0, 1.0, 1.0).unwrap()).unwrap();
    let horizon = encounter_time(&params);
    let max_err = |step: f64| {
        let traj = integrate_trajectory(&params, &cfg, Branch::C1, horizon, step).unwrap();
        traj.samples
            .iter()
            .map(|s| (s.omega - omega_closed_form(&params, cfg.profile(), Branch::C1, s.t).unwrap()).abs())
            .fold(0.0, f64::max)
    };
    let h = max_step(cfg.profile(), horizon);
    let errors = [max_err(h), max_err(h / 2.0), max_err(h / 4.0)];
    let factors = [errors[0] / errors[1], errors[1] / errors[2]];
    let converges = factors.iter().all(|&f| f >= 12.0);
    outcome(
        worst <= 1e-8 && converges,
        format!(
            "max rel |omega_RK4 - omega_closed| = {worst:.2e}; halving factors {:.2}, {:.2}",
            factors[0], factors[1]
        ),
    )
}

fn encounter_universality() -> Outcome {
    let xs: Vec<f64> = (0..=24).map(|i| 0.25 * i as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|t| 1.0 + 0.3 * (1.3 * t).sin() + 0.05 * t).collect();
    let profiles = [
        FluxProfile::constant(1.0).unwrap(),
        FluxProfile::ramp(0.5, 0.8).unwrap(),
        FluxProfile::sinusoid(1.0, 0.1, 1.0).unwrap(),
        FluxProfile::tabulated(xs, ys).unwrap(),
    ];
    let mut worst_t = 0.0f64;
    for omega0 in [1.0, 2.0] {
        let params = ElectronParams::new(0.2, 1.0, 1.5, omega0, CouplingMode::Consistent).unwrap();
        for p in &profiles {
            let cfg = SolenoidConfig::new(1.0, p.clone()).unwrap();
            let t = encounter_time(&params);
            let r = encounter_time_numeric(&params, &cfg, max_step(p, t)).unwrap();
            worst_t = worst_t.max((r.t - PI / omega0).abs());
        }
    }

    let mut rng = StdRng::seed_from_u64(SEED + 3);
    let mut worst_angle = 0.0f64;
    for mode in [CouplingMode::Consistent, CouplingMode::PaperLiteral] {
        for t in random_tuples(&mut rng, 10, mode) {
            let phi1 = 0.1 * t.phi0;
            let profile = FluxProfile::sinusoid(t.phi0, phi1, t.omega).unwrap();
            let a = encounter_angle(&t.params, &profile, QUAD_TOL).unwrap();
            let b = encounter_angle_sinusoid(&t.params, phi1, t.omega);
            worst_angle = worst_angle.max((a - b).abs());
        }
    }
    outcome(
        worst_t <= 1e-8 && worst_angle <= 1e-10,
        format!(
            "max |T_numeric - pi/omega0| = {worst_t:.2e} over 4 profiles x 2 speeds; \
             max |phi_f(quadrature) - phi_f(sinusoid form)| = {worst_angle:.2e} over 20 sets"
        ),
    )
}

fn field_laws() -> Outcome {
    let xs: Vec<f64> = (0..=10).map(|i| i as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|t| 2.0 + (0.7 * t).cos()).collect();
    let profiles = [
        FluxProfile::constant(1.3).unwrap(),
        FluxProfile::ramp(0.4, -0.7).unwrap(),
        FluxProfile::sinusoid(1.0, 0.5, 3.0).unwrap(),
        FluxProfile::tabulated(xs, ys).unwrap(),
    ];
    let (mut continuity, mut loop_law, mut curl) = (0.0f64, 0.0f64, 0.0f64);
    for radius in [0.3, 1.0, 4.0] {
        for p in &profiles {
            let cfg = SolenoidConfig::new(radius, p.clone()).unwrap();
            for t in [0.3, 1.7, 4.2] {
                let at = |rho: f64| field_at(&cfg, CylPoint::at_radius(rho).unwrap(), t).unwrap();
                let eps = 1e-8 * radius;
                let (inside, outside) = (at(radius - eps), at(radius + eps));
                for (a, b) in [(inside.a_phi, outside.a_phi), (inside.e_phi, outside.e_phi)] {
                    if a != b {
                        continuity = continuity.max((a - b).abs() / a.abs().max(b.abs()));
                    }
                }
                let rate = p.derivative(t).unwrap();
                for k in [1.0, 1.5, 10.0] {
                    let rho = k * radius;
                    let lhs = 2.0 * PI * rho * at(rho).e_phi;
                    if rate != 0.0 {
                        loop_law = loop_law.max(rel(lhs, -rate));
                    } else {
                        loop_law = loop_law.max(lhs.abs());
                    }
                }
                for frac in [0.2, 0.5, 0.9] {
                    let rho = frac * radius;
                    let h = 1e-5 * radius;
                    let d = ((rho + h) * at(rho + h).a_phi - (rho - h) * at(rho - h).a_phi) / (2.0 * h);
                    curl = curl.max(rel(d / rho, at(rho).b_z));
                }
            }
        }
    }
    outcome(
        continuity <= 1e-6 && loop_law <= 1e-12 && curl <= 1e-6,
        format!(
            "continuity rel {continuity:.2e}, loop law rel {loop_law:.2e}, interior curl rel {curl:.2e}"
        ),
    )
}

fn radius_independence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let radius = 1.0;
    let (mut worst, mut min_angle_spread) = (0.0f64, f64::INFINITY);
    for t in random_tuples(&mut rng, 20, CouplingMode::Consistent) {
        let cfg = sinusoid_cfg(&t);
        let results: Vec<_> = [1.5, 3.0, 10.0]
            .iter()
            .map(|k| {
                let params = ElectronParams {
                    rho: k * radius,
                    ..t.params
                };
                numeric_phase(&params, &cfg)
            })
            .collect();
        for r in &results[1..] {
            worst = worst.max(rel(r.phi_ab, results[0].phi_ab));
        }
        let excess: Vec<f64> = results.iter().map(|r| r.phi_f - PI).collect();
        // the shift falls off as 1/ρ², so 1.5R vs 10R must differ
        let spread = (excess[0] - excess[2]).abs() / excess[0].abs().max(1e-300);
        min_angle_spread = min_angle_spread.min(spread);
    }
    outcome(
        worst <= 1e-7 && min_angle_spread > 0.5,
        format!(
            "max rel phi_AB spread over rho in {{1.5R, 3R, 10R}} = {worst:.2e}; \
             min rel phi_f shift change 1.5R -> 10R = {min_angle_spread:.3}"
        ),
    )
}

fn determinism() -> Outcome {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("sweep{i}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_tdab"))
            .args(["sweep", "--config"])
            .arg(fixtures.join("fig2.toml"))
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        if !status.success() {
            return outcome(false, format!("sweep run {i} exited with {status}"));
        }
        outputs.push(std::fs::read(&out).unwrap());
    }
    let golden = std::fs::read(fixtures.join("fig2_sweep.csv")).unwrap();
    let identical = outputs[0] == outputs[1];
    let matches_golden = outputs[0] == golden;
    outcome(
        identical && matches_golden,
        format!(
            "two runs byte-identical: {identical} ({} bytes); equal to golden fixture: {matches_golden}",
            outputs[0].len()
        ),
    )
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("static AB reduction", static_reduction),
        ("RK4 phase equals mean-flux phase", central_claim),
        ("coupling invariance of phi_AB, linearity of phi_f", coupling_scaling),
        ("f(omega T) curve for ratio 1/10", fig2_reproduction),
        ("limits omega T -> 0 and -> infinity", limits),
        ("RK4 fidelity and convergence", ode_fidelity),
        ("encounter time and angle", encounter_universality),
        ("field laws", field_laws),
        ("radius independence of phi_AB", radius_independence),
        ("sweep determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!(
            "{status} criterion {:>2} {name} ({:.2}s): {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
