use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tdab_core::dynamics::TrajectoryMethod;
use tdab_core::{
    ab_phase_trajectories, encounter_angle, encounter_time, encounter_time_numeric, f_factor,
    integrate_trajectory, max_step, Branch, CouplingMode, ElectronParams, FluxProfile,
    SolenoidConfig,
};

fn setup() -> (ElectronParams, SolenoidConfig) {
    let params = ElectronParams::new(1.0, 1.0, 2.0, 1.0, CouplingMode::Consistent).unwrap();
    let cfg = SolenoidConfig::new(1.0, FluxProfile::sinusoid(1.0, 0.1, 3.0).unwrap()).unwrap();
    (params, cfg)
}

fn trajectories(c: &mut Criterion) {
    let (params, cfg) = setup();
    let t = encounter_time(&params);
    let step = max_step(cfg.profile(), t);
    c.bench_function("rk4_trajectory", |b| {
        b.iter(|| integrate_trajectory(black_box(&params), &cfg, Branch::C1, t, step).unwrap())
    });

    let xs: Vec<f64> = (0..=40).map(|i| 0.1 * i as f64).collect();
    let ys = xs.iter().map(|x| 1.0 + 0.2 * (2.0 * x).sin()).collect();
    let tab = SolenoidConfig::new(1.0, FluxProfile::tabulated(xs, ys).unwrap()).unwrap();
    let tab_step = max_step(tab.profile(), t);
    c.bench_function("rk4_trajectory_tabulated", |b| {
        b.iter(|| integrate_trajectory(black_box(&params), &tab, Branch::C2, t, tab_step).unwrap())
    });
}

fn phase(c: &mut Criterion) {
    let (params, cfg) = setup();
    c.bench_function("ab_phase_rk4", |b| {
        b.iter(|| {
            ab_phase_trajectories(black_box(&params), &cfg, TrajectoryMethod::Rk4, None, 1e-10)
                .unwrap()
        })
    });
    c.bench_function("encounter_angle", |b| {
        b.iter(|| encounter_angle(black_box(&params), cfg.profile(), 1e-10).unwrap())
    });
    let t = encounter_time(&params);
    let step = max_step(cfg.profile(), t);
    c.bench_function("encounter_time_bisection", |b| {
        b.iter(|| encounter_time_numeric(black_box(&params), &cfg, step).unwrap())
    });
}

fn sweep(c: &mut Criterion) {
    let (params, _) = setup();
    let t = encounter_time(&params);
    let grid: Vec<f64> = (0..20).map(|i| 0.5 + 39.5 * i as f64 / 19.0).collect();
    c.bench_function("sweep_20_points", |b| {
        b.iter(|| {
            for &x in &grid {
                let profile = FluxProfile::sinusoid(1.0, 0.1, x / t).unwrap();
                let cfg = SolenoidConfig::new(1.0, profile).unwrap();
                let r = ab_phase_trajectories(&params, &cfg, TrajectoryMethod::Rk4, None, 1e-10)
                    .unwrap();
                black_box((r.phi_ab, f_factor(0.1, x).unwrap()));
            }
        })
    });
}

criterion_group!(benches, trajectories, phase, sweep);
criterion_main!(benches);
