//! The quantum Hamiltonian `Ĥ_N`, the angular momentum `Ĉ` and the quantum
//! integral `Î_N` for `N ≤ 4`.
//!
//! `Î_N` is the closed form known for `N = 4`; lower orders drop the γ-blocks
//! with index above `N`. The partner integral is
//! `Î′_N = swap(Î_N) + (γ2 − 4γ4)Ĉ²`, which is the swap of the `Ĉ²`-free
//! form of `Î_N` and is what makes the algebraic relation
//! `Ĥ_4 = Î_4 + Î′_4 − 4γ4Ĉ² + γ4Ĉ⁴` hold.

use crate::error::{Error, Result};
use crate::integrals::IdentityCheck;
use crate::param::{ParamPolynomial, Symbol};
use crate::phase::PhaseMonomial;
use crate::ring::ParamAssignment;
use crate::scalar::GaussianRational;
use crate::system::{SystemSpec, MAX_ORDER};
use crate::weyl::OperatorPolynomial;

/// Highest order with a known quantum integral.
pub const MAX_QUANTUM_ORDER: usize = 4;

const INTEGRAL_4: &str = "P2^2 + g1*Q2*P2 \
    + g2*((Q1^2+Q2^2)*P2^2 - (Q1*P2-Q2*P1)^2) \
    + g3*(Q2^3*P2^3 - Q2^3*P1^2*P2 + Q1^3*P1*P2^2 + 3*Q1*Q2^2*P1*P2^2 \
        - 3*i*Q2^2*P2^2 - 3*i*Q1*Q2*P1*P2 - Q2*P2) \
    + g4*(Q2^4*P2^4 - Q2^4*P1^2*P2^2 - Q1^4*P2^4 + Q1^4*P1^2*P2^2 \
        + 4*Q1^3*Q2*P1*P2^3 + 4*Q1*Q2^3*P1*P2^3 \
        - 6*i*Q2^3*P2^3 - 6*i*Q1^2*Q2*P2^3 - 6*i*Q1^3*P1*P2^2 - 6*i*Q1*Q2^2*P1*P2^2 \
        - 4*Q1^2*P2^2 - 4*Q2^2*P2^2 + 4*(Q1*P2-Q2*P1)^2)";

fn check_quantum_order(spec: &SystemSpec) -> Result<()> {
    if spec.order() > MAX_QUANTUM_ORDER {
        Err(Error::UnsupportedOrder(spec.order()))
    } else {
        Ok(())
    }
}

/// Sets γ_j to zero for `j > N` and, for numeric specs, substitutes the values.
fn specialize_to(spec: &SystemSpec, op: &OperatorPolynomial) -> OperatorPolynomial {
    let assignment: ParamAssignment = match spec.assignment() {
        Some(a) => a,
        None => (spec.order() + 1..=MAX_ORDER)
            .map(|j| (Symbol::gamma(j), GaussianRational::from_integer(0)))
            .collect(),
    };
    op.partial_evaluate(&assignment)
}

/// `Q1 P1 + Q2 P2`.
pub fn quantum_dilation() -> OperatorPolynomial {
    OperatorPolynomial::monomial(PhaseMonomial::new(1, 0, 1, 0), ParamPolynomial::one())
        + OperatorPolynomial::monomial(PhaseMonomial::new(0, 1, 0, 1), ParamPolynomial::one())
}

/// `Ĥ_N = P1² + P2² + Σ γ_n (Q1P1 + Q2P2)^n`, the powers taken as written.
pub fn build_quantum_hamiltonian(spec: &SystemSpec) -> OperatorPolynomial {
    let mut h = OperatorPolynomial::monomial(PhaseMonomial::new(0, 0, 2, 0), ParamPolynomial::one())
        + OperatorPolynomial::monomial(PhaseMonomial::new(0, 0, 0, 2), ParamPolynomial::one());
    let d = quantum_dilation();
    let mut power = OperatorPolynomial::one();
    for n in 1..=spec.order() {
        power = power.op_mul(&d);
        h = &h + &power.scale_by(&spec.gamma(n));
    }
    h
}

/// `Ĉ = Q1 P2 − Q2 P1`.
pub fn build_quantum_angular_momentum() -> OperatorPolynomial {
    OperatorPolynomial::monomial(PhaseMonomial::new(1, 0, 0, 1), ParamPolynomial::one())
        - OperatorPolynomial::monomial(PhaseMonomial::new(0, 1, 1, 0), ParamPolynomial::one())
}

/// `Î_N` for `N ≤ 4`.
pub fn build_quantum_integral(spec: &SystemSpec) -> Result<OperatorPolynomial> {
    check_quantum_order(spec)?;
    let full: OperatorPolynomial = INTEGRAL_4.parse()?;
    Ok(specialize_to(spec, &full))
}

/// The 1↔2 swap of `Î_N`, which also commutes with `Ĥ_N`.
pub fn swapped_quantum_integral(spec: &SystemSpec) -> Result<OperatorPolynomial> {
    Ok(build_quantum_integral(spec)?.swap_indices())
}

/// `Î′_N = swap(Î_N) + (γ2 − 4γ4)Ĉ²`.
pub fn quantum_partner_integral(spec: &SystemSpec) -> Result<OperatorPolynomial> {
    let c2 = build_quantum_angular_momentum().pow(2);
    let shift = &spec.gamma(2) - &spec.gamma(4).scale(&GaussianRational::from_integer(4));
    Ok(&swapped_quantum_integral(spec)? + &c2.scale_by(&shift))
}

/// Residual of `Ĥ_N − Î_N − Î′_N + 4γ4Ĉ² − γ4Ĉ⁴`.
pub fn verify_quantum_relation(spec: &SystemSpec) -> Result<IdentityCheck<OperatorPolynomial>> {
    let h = build_quantum_hamiltonian(spec);
    let i = build_quantum_integral(spec)?;
    let ip = quantum_partner_integral(spec)?;
    let c2 = build_quantum_angular_momentum().pow(2);
    let g4 = spec.gamma(4);
    let rhs = &(&(&i + &ip) - &c2.scale_by(&g4.scale(&GaussianRational::from_integer(4))))
        + &c2.op_mul(&c2).scale_by(&g4);
    Ok(IdentityCheck {
        residual: &h - &rhs,
    })
}

impl IdentityCheck<OperatorPolynomial> {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}
