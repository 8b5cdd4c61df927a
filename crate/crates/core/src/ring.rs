//! The coefficient-ring abstraction shared by the commutative phase-space
//! polynomials and the normal-ordered operator polynomials.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};


use crate::error::Result;
use crate::param::{ParamMonomial, ParamPolynomial, Symbol};
use crate::scalar::GaussianRational;

/// Values assigned to parameter symbols during evaluation.
pub type ParamAssignment = BTreeMap<Symbol, GaussianRational>;

/// A commutative ring usable as polynomial coefficients.
///
/// Two implementations exist: [`ParamPolynomial`] (symbolic parameters, the
/// default) and [`GaussianRational`] (numeric fast path).
pub trait Coefficient: Clone + PartialEq + Debug + Zero + One + Send + Sync + 'static {
    fn from_scalar(s: GaussianRational) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, s: &GaussianRational) -> Self;
    fn negated(&self) -> Self;
    /// Fully expanded `(scalar, parameter monomial)` pairs, in display order.
    fn expanded_terms(&self) -> Vec<(GaussianRational, ParamMonomial)>;
    fn evaluate(&self, params: &ParamAssignment) -> Result<GaussianRational>;
    /// The same value viewed as a parameter polynomial.
    fn to_param(&self) -> ParamPolynomial;
    /// A bare parameter symbol, if this ring can represent one.
    fn from_symbol(sym: Symbol) -> Option<Self>;
    fn as_scalar(&self) -> Option<GaussianRational>;
}

impl Coefficient for GaussianRational {
    fn from_scalar(s: GaussianRational) -> Self {
        s
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &GaussianRational) -> Self {
        self * s
    }
    fn negated(&self) -> Self {
        -self
    }
    fn expanded_terms(&self) -> Vec<(GaussianRational, ParamMonomial)> {
        if Zero::is_zero(self) {
            Vec::new()
        } else {
            vec![(self.clone(), ParamMonomial::one())]
        }
    }
    fn evaluate(&self, _params: &ParamAssignment) -> Result<GaussianRational> {
        Ok(self.clone())
    }
    fn to_param(&self) -> ParamPolynomial {
        ParamPolynomial::constant(self.clone())
    }
    fn from_symbol(_sym: Symbol) -> Option<Self> {
        None
    }
    fn as_scalar(&self) -> Option<GaussianRational> {
        Some(self.clone())
    }
}

/// Total or partial degree of a polynomial. The zero polynomial has degree
/// [`Degree::NegInfinity`], which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}
