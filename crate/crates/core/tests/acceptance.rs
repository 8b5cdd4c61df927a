//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use common::*;
use zernike_core::dynamics::{
    closed_orbit_check, integrate_trajectory, reference_runs, CartesianSystem, CurvedOscillator, Integrator,
    TrajectoryConfig, DEFAULT_CLOSURE_TOLERANCE,
};
use zernike_core::integrals::{build_hamiltonian, solve_integral_ansatz};
use zernike_core::param::Symbol;
use zernike_core::spectra::{real_parameter_form, realness_certificate, solve_spectrum, zernike_specialization, FamilyType};
use zernike_core::symmetry::{build_generators, higgs_order, structure_functions, verify_prop2};
use zernike_core::verify::{verify_classical, verify_quantum};
use zernike_core::{GaussianRational, ParamAssignment, ParamPolynomial, PhasePolynomial, SystemSpec};

const I4_CANONICAL: &str = include_str!("fixtures/i4.txt");
const I4_DISPLAY: &str = include_str!("fixtures/i4_display.txt");
const BRACKET: &str = include_str!("fixtures/bracket_n4.txt");
const SPECTRA: &str = include_str!("fixtures/spectra_n4.txt");

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn integral_and_bracket() -> Outcome {
    let spec = SystemSpec::symbolic(4).map_err(e)?;
    let solution = solve_integral_ansatz(&spec).map_err(e)?;
    ensure(solution.integral.to_string() == I4_CANONICAL.trim_end(), "I_4 text differs from the fixture")?;
    let display: PhasePolynomial = I4_DISPLAY.parse().map_err(e)?;
    ensure(display == solution.integral, "I_4 differs from the displayed form")?;
    let gens = build_generators(&solution).map_err(e)?;
    let rhs: ParamPolynomial = BRACKET.trim().parse().map_err(e)?;
    let rhs = PhasePolynomial::constant(rhs)
        .substitute_symbol_with(Symbol::Energy, &build_hamiltonian(&spec))
        .substitute_symbol_with(Symbol::Ladder, &gens.l1);
    let residual = &gens.l2.poisson_bracket(&gens.l3) - &rhs;
    ensure(residual.is_zero(), format!("bracket residual {residual}"))?;
    Ok("I_4 and {L2, L3} exact".into())
}

fn first_integrals() -> Outcome {
    for n in 1..=5 {
        let suite = verify_classical(&SystemSpec::symbolic(n).map_err(e)?, 1).map_err(e)?;
        for name in ["{H, C} = 0", "{H, I} = 0", "rank d(H, C, I) = 3 at >= 9/10 random points"] {
            let check = suite.checks.iter().find(|c| c.name == name).ok_or(format!("N = {n}: no check {name}"))?;
            ensure(check.passed(), format!("N = {n}: {name}: {:?}", check.residual_text))?;
        }
    }
    Ok("N = 1..5".into())
}

fn higgs_algebra() -> Outcome {
    for n in 1..=5 {
        let spec = SystemSpec::symbolic(n).map_err(e)?;
        let gens = build_generators(&solve_integral_ansatz(&spec).map_err(e)?).map_err(e)?;
        let table = structure_functions(&spec);
        let residual = verify_prop2(&spec, &gens, &table).residual;
        ensure(residual.is_zero(), format!("N = {n}: residual {residual}"))?;
        ensure(higgs_order(&table) == Some(2 * n - 1), format!("N = {n}: order {:?}", higgs_order(&table)))?;
    }
    Ok("N = 1..5, order 2N-1".into())
}

fn quantum_identities() -> Outcome {
    let suite = verify_quantum(&SystemSpec::symbolic(4).map_err(e)?).map_err(e)?;
    let failed: Vec<&str> = suite.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
    ensure(failed.is_empty(), format!("failed: {failed:?}"))?;
    Ok(format!("{} operator identities", suite.checks.len()))
}

fn spectra() -> Outcome {
    let families = solve_spectrum(&SystemSpec::symbolic(4).map_err(e)?).map_err(e)?;
    ensure(families.len() == 2, format!("{} families", families.len()))?;
    let half: ParamPolynomial = "-(1/2)*n".parse().map_err(e)?;
    let mut lines = SPECTRA.lines();
    for label in [FamilyType::I, FamilyType::II] {
        let want: ParamPolynomial = lines.next().ok_or("fixture too short")?.parse().map_err(e)?;
        let f = families.iter().find(|f| f.label == label).ok_or(format!("no type {label}"))?;
        ensure(f.u == half, format!("type {label}: u = {}", f.u))?;
        ensure(real_parameter_form(&f.energy) == want, format!("type {label}: E = {}", real_parameter_form(&f.energy)))?;
    }
    let zero = GaussianRational::from_integer(0);
    let (e1, e2) = zernike_specialization(zero.clone(), zero).map_err(e)?;
    let target: ParamPolynomial = "n^2 + 2*n".parse().map_err(e)?;
    ensure(e1 == target && e2 == target, format!("E_I = {e1}, E_II = {e2}"))?;
    let levels: Vec<String> = (0..=4)
        .map(|n| {
            let at: ParamAssignment = [(Symbol::Level, GaussianRational::from_integer(n))].into_iter().collect();
            e1.partial_evaluate(&at).to_string()
        })
        .collect();
    ensure(levels == ["0", "3", "8", "15", "24"], format!("levels {levels:?}"))?;
    Ok("levels 0, 3, 8, 15, 24".into())
}

fn realness() -> Outcome {
    let families = solve_spectrum(&SystemSpec::symbolic(4).map_err(e)?).map_err(e)?;
    for f in &families {
        ensure(realness_certificate(f), format!("type {} has imaginary coefficients", f.label))?;
    }
    Ok(format!("{} families real", families.len()))
}

fn dynamics() -> Outcome {
    let mut worst: f64 = 0.0;
    let runs = reference_runs();
    for (spec, x) in &runs {
        let sys = CartesianSystem::new(spec).map_err(e)?;
        let cfg = TrajectoryConfig {
            initial_state: *x,
            t_end: 100.0,
            dt: 1e-3,
            integrator: Integrator::ImplicitMidpoint,
        };
        let tr = integrate_trajectory(&cfg, &sys).map_err(e)?;
        for name in ["H", "C", "I_N"] {
            let d = tr.drift_of(name).ok_or(format!("no observable {name}"))?;
            ensure(d < 1e-8, format!("N = {} x0 = {x:?}: drift of {name} = {d:e}", spec.order()))?;
            worst = worst.max(d);
        }
    }
    let omega = 1.0;
    let period = PI / omega;
    let cfg = TrajectoryConfig {
        initial_state: [0.8, 0.3, -0.2, 0.4],
        t_end: 1.25 * period,
        dt: 1e-4,
        integrator: Integrator::ImplicitMidpoint,
    };
    let r = closed_orbit_check(&CurvedOscillator::new(0.0, omega), &cfg, DEFAULT_CLOSURE_TOLERANCE).map_err(e)?;
    ensure(r.closed, format!("orbit not closed: {r:?}"))?;
    let rel = (r.period.unwrap_or(f64::NAN) - period).abs() / period;
    ensure(rel < 1e-4, format!("period error {rel:e}"))?;
    Ok(format!("{} runs, max drift {worst:.1e}, period error {rel:.1e}", runs.len()))
}

fn properties() -> Outcome {
    run_property((phase_poly(), phase_poly()), |(a, b)| antisymmetry(a, b))?;
    run_property((phase_poly(), phase_poly(), phase_poly()), |(a, b, c)| leibniz(a, b, c))?;
    run_property((phase_poly(), phase_poly(), phase_poly()), |(a, b, c)| jacobi(a, b, c))?;
    run_property(word(), |(w, seed)| confluence(w, *seed))?;
    Ok(format!("{PROPERTY_CASES} cases each"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("integral and bracket", integral_and_bracket),
        ("first integrals", first_integrals),
        ("Higgs algebra", higgs_algebra),
        ("quantum identities", quantum_identities),
        ("spectra", spectra),
        ("realness", realness),
        ("dynamics", dynamics),
        ("algebra properties", properties),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
