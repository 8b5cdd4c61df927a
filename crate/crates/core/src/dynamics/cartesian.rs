use super::{HamiltonianSystem, State};
use crate::error::{Error, Result};
use crate::integrals::{build_angular_momentum, build_hamiltonian, integral_for};
use crate::phase::{NumericPhasePolynomial, PhasePolynomial, PhaseVar};
use crate::ring::ParamAssignment;
use crate::system::SystemSpec;

/// A polynomial in `(q1, q2, p1, p2)` with `f64` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPolynomial {
    terms: Vec<([u16; 4], f64)>,
}

impl RealPolynomial {
    /// Converts an exact polynomial; every coefficient must be real.
    pub fn from_exact(p: &NumericPhasePolynomial) -> Result<Self> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            if !c.is_real() {
                return Err(Error::InvalidConfig(format!(
                    "coefficient {c} of a dynamical observable is not real"
                )));
            }
            terms.push((m.exponents(), c.to_f64_parts().0));
        }
        Ok(RealPolynomial { terms })
    }

    /// Substitutes `params` into a symbolic polynomial and converts it.
    pub fn from_symbolic(p: &PhasePolynomial, params: &ParamAssignment) -> Result<Self> {
        RealPolynomial::from_exact(&p.specialize(params)?)
    }

    pub fn eval(&self, x: &State) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = *c;
                for k in 0..4 {
                    if e[k] > 0 {
                        t *= x[k].powi(e[k] as i32);
                    }
                }
                t
            })
            .sum()
    }
}

/// `H_N` with real numeric γ, compiled to floating point.
#[derive(Clone, Debug)]
pub struct CartesianSystem {
    spec: SystemSpec,
    hamiltonian: RealPolynomial,
    /// `∂H/∂q1, ∂H/∂q2, ∂H/∂p1, ∂H/∂p2`.
    gradient: [RealPolynomial; 4],
    angular_momentum: RealPolynomial,
    integral: RealPolynomial,
    extra: Vec<(String, RealPolynomial)>,
}

impl CartesianSystem {
    /// Fails with [`Error::NonRealParameter`] if any γ is not real and with
    /// [`Error::NumericRequired`] for symbolic specs.
    pub fn new(spec: &SystemSpec) -> Result<Self> {
        let values = spec.gamma_values().ok_or(Error::NumericRequired)?;
        for (j, v) in values.iter().enumerate() {
            if !v.is_real() {
                return Err(Error::NonRealParameter {
                    index: j + 1,
                    value: v.to_string(),
                });
            }
        }
        let params = spec.assignment().expect("numeric spec");
        let h = build_hamiltonian(spec).specialize(&params)?;
        let gradient = [PhaseVar::Q1, PhaseVar::Q2, PhaseVar::P1, PhaseVar::P2]
            .map(|v| RealPolynomial::from_exact(&h.partial_derivative(v)));
        let [g0, g1, g2, g3] = gradient;
        Ok(CartesianSystem {
            spec: spec.clone(),
            hamiltonian: RealPolynomial::from_exact(&h)?,
            gradient: [g0?, g1?, g2?, g3?],
            angular_momentum: RealPolynomial::from_symbolic(&build_angular_momentum(), &params)?,
            integral: RealPolynomial::from_symbolic(&integral_for(spec)?, &params)?,
            extra: Vec::new(),
        })
    }

    /// Adds further monitored observables, given in the text form.
    pub fn with_observables(mut self, observables: &[String]) -> Result<Self> {
        let params = self.spec.assignment().expect("numeric spec");
        for src in observables {
            let p: PhasePolynomial = src.parse()?;
            self.extra.push((src.clone(), RealPolynomial::from_symbolic(&p, &params)?));
        }
        Ok(self)
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }
}

impl HamiltonianSystem for CartesianSystem {
    fn energy(&self, x: &State) -> Result<f64> {
        Ok(self.hamiltonian.eval(x))
    }

    fn vector_field(&self, x: &State) -> Result<State> {
        let g = &self.gradient;
        Ok([g[2].eval(x), g[3].eval(x), -g[0].eval(x), -g[1].eval(x)])
    }

    fn observables(&self) -> Vec<String> {
        let mut names = vec!["H".to_string(), "C".to_string(), "I_N".to_string()];
        names.extend(self.extra.iter().map(|(n, _)| n.clone()));
        names
    }

    fn observe(&self, x: &State) -> Result<Vec<f64>> {
        let mut v = vec![
            self.hamiltonian.eval(x),
            self.angular_momentum.eval(x),
            self.integral.eval(x),
        ];
        v.extend(self.extra.iter().map(|(_, p)| p.eval(x)));
        Ok(v)
    }
}

/// Hamilton's vector field of `H_N` at `state`.
pub fn hamilton_vector_field(spec: &SystemSpec, state: &State) -> Result<State> {
    CartesianSystem::new(spec)?.vector_field(state)
}
