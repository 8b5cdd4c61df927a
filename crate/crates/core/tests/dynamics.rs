use std::f64::consts::PI;

use zernike_core::dynamics::{
    closed_orbit_check, integrate_trajectory, reference_runs, CartesianSystem, CurvedOscillator, HamiltonianSystem,
    Integrator, TrajectoryConfig, DEFAULT_CLOSURE_TOLERANCE,
};
use zernike_core::{GaussianRational, SystemSpec};

fn config(x: [f64; 4], t_end: f64, dt: f64, integrator: Integrator) -> TrajectoryConfig {
    TrajectoryConfig {
        initial_state: x,
        t_end,
        dt,
        integrator,
    }
}

#[test]
fn conservation_on_reference_runs() {
    for (spec, x) in reference_runs() {
        let sys = CartesianSystem::new(&spec).unwrap();
        let tr = integrate_trajectory(&config(x, 100.0, 1e-3, Integrator::ImplicitMidpoint), &sys).unwrap();
        for name in ["H", "C", "I_N"] {
            let d = tr.drift_of(name).unwrap();
            assert!(d < 1e-8, "N = {} x0 = {x:?}: drift of {name} = {d:e}", spec.order());
        }
    }
}

#[test]
fn order_two_energy_drift_below_1e9() {
    for (spec, x) in reference_runs().into_iter().filter(|(s, _)| s.order() == 2) {
        let sys = CartesianSystem::new(&spec).unwrap();
        let tr = integrate_trajectory(&config(x, 100.0, 1e-3, Integrator::ImplicitMidpoint), &sys).unwrap();
        assert!(tr.drift_of("H").unwrap() < 1e-9);
    }
}

/// Midpoint at `dt = 1e−3` against RK4 at `dt = 1e−4`.
#[test]
fn integrators_agree() {
    let (spec, x) = reference_runs().into_iter().find(|(s, _)| s.order() == 3).unwrap();
    let sys = CartesianSystem::new(&spec).unwrap();
    let a = integrate_trajectory(&config(x, 10.0, 1e-3, Integrator::ImplicitMidpoint), &sys).unwrap();
    let b = integrate_trajectory(&config(x, 10.0, 1e-4, Integrator::ExplicitRk4), &sys).unwrap();
    for (u, v) in a.final_state().iter().zip(b.final_state()) {
        assert!((u - v).abs() <= 1e-5 * v.abs().max(1.0), "{u} vs {v}");
    }
}

#[test]
fn flat_oscillator_period() {
    for omega in [1.0, 0.5, 2.0] {
        let sys = CurvedOscillator::new(0.0, omega);
        let period = PI / omega;
        let cfg = config([0.8, 0.3, -0.2, 0.4], 1.25 * period, 1e-4, Integrator::ImplicitMidpoint);
        let r = closed_orbit_check(&sys, &cfg, DEFAULT_CLOSURE_TOLERANCE).unwrap();
        assert!(r.closed, "omega {omega}: {r:?}");
        assert!((r.period.unwrap() - period).abs() / period < 1e-4);
    }
}

#[test]
fn higgs_oscillator_closes() {
    let sys = CurvedOscillator::new(1.0, 1.0);
    let cfg = config([0.5, 0.0, 0.2, 0.25], 10.0, 1e-4, Integrator::ImplicitMidpoint);
    let r = closed_orbit_check(&sys, &cfg, DEFAULT_CLOSURE_TOLERANCE).unwrap();
    assert!(r.closed, "{r:?}");
}

#[test]
fn curved_oscillators_close() {
    for integrator in [Integrator::ImplicitMidpoint, Integrator::ExplicitRk4] {
        for (kappa, omega) in [(0.3, 1.2), (-0.5, 1.0), (2.0, 0.7)] {
            let sys = CurvedOscillator::new(kappa, omega);
            let cfg = config([0.5, 0.0, 0.2, 0.25], 10.0, 1e-4, integrator);
            let r = closed_orbit_check(&sys, &cfg, DEFAULT_CLOSURE_TOLERANCE).unwrap();
            assert!(r.closed, "{integrator:?} kappa {kappa}: {r:?}");
        }
    }
}

#[test]
fn cubic_perturbation_does_not_return() {
    let spec = SystemSpec::numeric(vec![
        GaussianRational::from_ratio(1, 100),
        GaussianRational::from_ratio(1, 200),
        GaussianRational::from_ratio(1, 50),
        GaussianRational::from_ratio(1, 1000),
    ])
    .unwrap();
    let sys = CartesianSystem::new(&spec).unwrap();
    let cfg = config([1.0, 0.0, 0.0, 0.3], 20.0, 1e-3, Integrator::ImplicitMidpoint);
    assert!(!closed_orbit_check(&sys, &cfg, DEFAULT_CLOSURE_TOLERANCE).unwrap().closed);
}

#[test]
fn time_reversal_cartesian() {
    let (spec, x0) = reference_runs().pop().unwrap();
    let sys = CartesianSystem::new(&spec).unwrap();
    let mut x = x0;
    for k in 0..5000 {
        x = Integrator::ImplicitMidpoint.step(&sys, &x, 1e-3, k).unwrap();
    }
    for k in 0..5000 {
        x = Integrator::ImplicitMidpoint.step(&sys, &x, -1e-3, k).unwrap();
    }
    assert!(sys.distance(&x, &x0) < 1e-8);
}

#[test]
fn blow_up_is_reported() {
    let spec = SystemSpec::numeric(vec![GaussianRational::from_integer(0), GaussianRational::from_integer(-50)]).unwrap();
    let sys = CartesianSystem::new(&spec).unwrap();
    let err = integrate_trajectory(&config([1.0, 1.0, 1.0, 1.0], 100.0, 1e-2, Integrator::ExplicitRk4), &sys).unwrap_err();
    assert!(matches!(err, zernike_core::Error::NonFinite { .. }), "{err}");
}
