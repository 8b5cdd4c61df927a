use serde::{Deserialize, Serialize};

use super::{HamiltonianSystem, State};
use crate::error::{Error, Result};

/// Fixed-point tolerance of the implicit midpoint stage, relative to the
/// state magnitude.
const STAGE_TOLERANCE: f64 = 1e-14;
const STAGE_MAX_ITERATIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrator {
    #[serde(rename = "implicit-midpoint")]
    ImplicitMidpoint,
    #[serde(rename = "explicit-rk4")]
    ExplicitRk4,
}

fn axpy(x: &State, a: f64, y: &State) -> State {
    [x[0] + a * y[0], x[1] + a * y[1], x[2] + a * y[2], x[3] + a * y[3]]
}

impl Integrator {
    /// One step of size `dt` (negative steps run backwards). `step` is only
    /// used in error reports.
    pub fn step<S: HamiltonianSystem + ?Sized>(&self, sys: &S, x: &State, dt: f64, step: usize) -> Result<State> {
        match self {
            Integrator::ExplicitRk4 => {
                let k1 = sys.vector_field(x)?;
                let k2 = sys.vector_field(&axpy(x, dt / 2.0, &k1))?;
                let k3 = sys.vector_field(&axpy(x, dt / 2.0, &k2))?;
                let k4 = sys.vector_field(&axpy(x, dt, &k3))?;
                Ok(std::array::from_fn(|i| {
                    x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                }))
            }
            Integrator::ImplicitMidpoint => {
                let mut y = axpy(x, dt, &sys.vector_field(x)?);
                for _ in 0..STAGE_MAX_ITERATIONS {
                    let mid: State = std::array::from_fn(|i| 0.5 * (x[i] + y[i]));
                    let next = axpy(x, dt, &sys.vector_field(&mid)?);
                    let scale = next.iter().fold(1.0f64, |m, v| m.max(v.abs()));
                    let diff = next.iter().zip(&y).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                    y = next;
                    if !diff.is_finite() {
                        return Err(Error::NonFinite { step });
                    }
                    if diff <= STAGE_TOLERANCE * scale {
                        return Ok(y);
                    }
                }
                Err(Error::NonConvergence { step })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryConfig {
    pub initial_state: State,
    pub t_end: f64,
    pub dt: f64,
    pub integrator: Integrator,
}

impl TrajectoryConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end >= self.dt && self.t_end.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "t_end = {} must be at least dt = {}",
                self.t_end, self.dt
            )));
        }
        if self.initial_state.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("initial state is not finite".into()));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

/// States and observable values at every step, including `t = 0`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub observable_names: Vec<String>,
    pub times: Vec<f64>,
    pub states: Vec<State>,
    pub observables: Vec<Vec<f64>>,
}

impl Trajectory {
    /// The series of observable `k`.
    pub fn series(&self, k: usize) -> impl Iterator<Item = f64> + '_ {
        self.observables.iter().map(move |row| row[k])
    }

    pub fn drift(&self, k: usize) -> f64 {
        relative_drift(self.series(k))
    }

    pub fn drift_of(&self, name: &str) -> Option<f64> {
        self.observable_names.iter().position(|n| n == name).map(|k| self.drift(k))
    }

    pub fn final_state(&self) -> &State {
        self.states.last().expect("trajectory has the initial state")
    }
}

/// `max_t |X(t) − X(0)| / |X(0)|`, or the absolute deviation when
/// `|X(0)| < 1e−12`.
pub fn relative_drift(mut series: impl Iterator<Item = f64>) -> f64 {
    let Some(x0) = series.next() else {
        return 0.0;
    };
    let dev = series.fold(0.0f64, |m, v| m.max((v - x0).abs()));
    if x0.abs() < 1e-12 {
        dev
    } else {
        dev / x0.abs()
    }
}

/// Fixed-step integration of `sys` from the configured initial state.
pub fn integrate_trajectory<S: HamiltonianSystem + ?Sized>(cfg: &TrajectoryConfig, sys: &S) -> Result<Trajectory> {
    cfg.validate()?;
    let n = cfg.steps();
    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    let mut observables = Vec::with_capacity(n + 1);
    let mut x = cfg.initial_state;
    times.push(0.0);
    states.push(x);
    observables.push(sys.observe(&x)?);
    for k in 1..=n {
        x = cfg.integrator.step(sys, &x, cfg.dt, k)?;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { step: k });
        }
        times.push(k as f64 * cfg.dt);
        states.push(x);
        observables.push(sys.observe(&x)?);
    }
    Ok(Trajectory {
        observable_names: sys.observables(),
        times,
        states,
        observables,
    })
}
