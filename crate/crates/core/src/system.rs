//! Selection of a member of the Hamiltonian family: the order `N` and the
//! γ parameters, either symbolic or numeric.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::param::{ParamPolynomial, Symbol};
use crate::ring::ParamAssignment;
use crate::scalar::GaussianRational;

/// Largest supported order `N`.
pub const MAX_ORDER: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub enum GammaMode {
    Symbolic,
    Numeric(Vec<GaussianRational>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    order: usize,
    gammas: GammaMode,
}

impl SystemSpec {
    pub fn symbolic(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(SystemSpec {
            order,
            gammas: GammaMode::Symbolic,
        })
    }

    /// Numeric parameters γ1..γN; the order is the number of values.
    pub fn numeric(values: Vec<GaussianRational>) -> Result<Self> {
        check_order(values.len())?;
        Ok(SystemSpec {
            order: values.len(),
            gammas: GammaMode::Numeric(values),
        })
    }

    /// Numeric parameters with an explicit order; `values.len()` must equal it.
    pub fn with_values(order: usize, values: Vec<GaussianRational>) -> Result<Self> {
        check_order(order)?;
        if values.len() != order {
            return Err(Error::ParameterCount {
                expected: order,
                got: values.len(),
            });
        }
        SystemSpec::numeric(values)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mode(&self) -> &GammaMode {
        &self.gammas
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.gammas, GammaMode::Symbolic)
    }

    /// γ_j as a coefficient; zero for `j > N`.
    pub fn gamma(&self, j: usize) -> ParamPolynomial {
        if j == 0 || j > self.order {
            return ParamPolynomial::zero();
        }
        match &self.gammas {
            GammaMode::Symbolic => ParamPolynomial::gamma(j),
            GammaMode::Numeric(v) => ParamPolynomial::constant(v[j - 1].clone()),
        }
    }

    pub fn gamma_values(&self) -> Option<&[GaussianRational]> {
        match &self.gammas {
            GammaMode::Symbolic => None,
            GammaMode::Numeric(v) => Some(v),
        }
    }

    /// The symbol assignment γ_j ↦ value for numeric specs; γ_j for
    /// `N < j <= 8` map to zero.
    pub fn assignment(&self) -> Option<ParamAssignment> {
        let v = self.gamma_values()?;
        Some(
            (1..=MAX_ORDER)
                .map(|j| {
                    let val = v.get(j - 1).cloned().unwrap_or_default();
                    (Symbol::gamma(j), val)
                })
                .collect(),
        )
    }

    /// The symbolic spec of the same order.
    pub fn to_symbolic(&self) -> SystemSpec {
        SystemSpec {
            order: self.order,
            gammas: GammaMode::Symbolic,
        }
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        Err(Error::InvalidOrder(order))
    } else {
        Ok(())
    }
}

impl Serialize for SystemSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SystemSpec", 2)?;
        st.serialize_field("N", &self.order)?;
        match &self.gammas {
            GammaMode::Symbolic => st.serialize_field("gamma", "symbolic")?,
            GammaMode::Numeric(v) => {
                let txt: Vec<String> = v.iter().map(ToString::to_string).collect();
                st.serialize_field("gamma", &txt)?
            }
        }
        st.end()
    }
}

/// Upper index of the momentum sum for the degree-`n` block of the integral:
/// `n − 2` for even `n`, `n − 1` for odd `n`.
pub fn phi(n: usize) -> usize {
    assert!(n >= 1, "phi is defined for n >= 1");
    if n % 2 == 0 {
        n - 2
    } else {
        n - 1
    }
}
