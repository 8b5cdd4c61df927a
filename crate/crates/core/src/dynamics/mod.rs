//! Numerical Hamiltonian flows: the Cartesian `H_N` with real γ and the
//! curved oscillator in the chart `(ρ, φ, p_ρ, p_φ)`.
//!
//! Conventions follow the Hamiltonians exactly (`H = p²`, no factor ½), so
//! `q̇ = ∂H/∂p = 2p` for free motion.

mod cartesian;
mod curved;
mod integrate;
mod orbit;

pub use cartesian::{hamilton_vector_field, CartesianSystem, RealPolynomial};
pub use curved::{curved_oscillator_hamiltonian, kernels, CurvedOscillator, CurvedOscillatorSpec};
pub use integrate::{integrate_trajectory, relative_drift, Integrator, Trajectory, TrajectoryConfig};
pub use orbit::{closed_orbit_check, detect_closure, ClosureResult, DEFAULT_CLOSURE_TOLERANCE};

use crate::error::Result;

/// A point of the four-dimensional phase space `(x1, x2, y1, y2)` with
/// `y` the momenta conjugate to `x`.
pub type State = [f64; 4];

/// A Hamiltonian flow on a four-dimensional phase space.
pub trait HamiltonianSystem {
    fn energy(&self, x: &State) -> Result<f64>;

    /// `(∂H/∂y1, ∂H/∂y2, −∂H/∂x1, −∂H/∂x2)`.
    fn vector_field(&self, x: &State) -> Result<State>;

    /// Conserved quantities monitored along trajectories, with their names.
    fn observables(&self) -> Vec<String> {
        vec!["H".into()]
    }

    /// Values of [`HamiltonianSystem::observables`] at `x`.
    fn observe(&self, x: &State) -> Result<Vec<f64>> {
        Ok(vec![self.energy(x)?])
    }

    /// `a − b` in the chart, used for closure detection.
    fn difference(&self, a: &State, b: &State) -> State {
        std::array::from_fn(|i| a[i] - b[i])
    }

    /// Euclidean norm of [`HamiltonianSystem::difference`].
    fn distance(&self, a: &State, b: &State) -> f64 {
        self.difference(a, b).iter().map(|d| d * d).sum::<f64>().sqrt()
    }

    /// Column names of the coordinates.
    fn coordinate_names(&self) -> [&'static str; 4] {
        ["q1", "q2", "p1", "p2"]
    }
}

/// Real-γ reference runs for conservation checks: each γ prefix of
/// `(1/100, 1/200, 1/500, 1/1000)` paired with two initial states, one
/// starting at `q·p = 0` and one at `q·p < 0`.
///
/// Cartesian flows with real γ are never bounded (`d(q·p)/dt = 2p²`), so
/// these runs are chosen with moderate momenta where `q` stays below about
/// `1e6` at `t = 100`.
pub fn reference_runs() -> Vec<(crate::SystemSpec, State)> {
    use crate::GaussianRational;
    let gammas = [(1, 100), (1, 200), (1, 500), (1, 1000)];
    let states = [[1.0, 0.0, 0.0, 0.3], [0.5, 0.5, -0.3, -0.2]];
    let mut runs = Vec::new();
    for n in 1..=gammas.len() {
        let values = gammas[..n].iter().map(|&(a, b)| GaussianRational::from_ratio(a, b)).collect();
        let spec = crate::SystemSpec::numeric(values).expect("order within range");
        for x in states {
            runs.push((spec.clone(), x));
        }
    }
    runs
}
