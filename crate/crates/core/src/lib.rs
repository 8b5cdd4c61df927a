//! Exact symbolic engine and numerical harness for the generalized classical
//! and quantum Zernike Hamiltonians
//!
//! ```text
//! H_N = p1² + p2² + Σ_{n=1..N} γ_n (q1 p1 + q2 p2)^n
//! ```
//!
//! The crate derives the higher-order integrals of motion, certifies the
//! polynomial Higgs-type symmetry algebras, computes the algebraic spectra of
//! the quantum systems and integrates the classical flow numerically.
//!
//! Layout:
//! - [`scalar`], [`param`], [`phase`]: exact coefficient arithmetic and the
//!   commutative phase-space ring with its Poisson bracket.
//! - [`integrals`]: `H_N`, `C`, the integral `I_N` from a linear ansatz.
//! - [`symmetry`]: the classical Higgs-type algebra.
//! - [`weyl`], [`quantum`]: normal-ordered operators and the quantum integrals.
//! - [`spectra`]: ladder operators, structure functions, spectra.
//! - [`dynamics`]: Hamiltonian flows, drift and orbit closure.
//! - [`verify`], [`cli`]: identity suites and the `zernike` command line.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod integrals;
pub mod linsolve;
pub mod param;
pub mod phase;
pub mod quantum;
pub mod ring;
pub mod scalar;
pub mod spectra;
pub mod symmetry;
pub mod system;
pub mod text;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use param::{ParamMonomial, ParamPolynomial, Symbol};
pub use phase::{NumericPhasePolynomial, PhaseMonomial, PhasePoint, PhasePolynomial, PhaseVar};
pub use ring::{Coefficient, Degree, ParamAssignment};
pub use scalar::GaussianRational;
pub use system::{phi, GammaMode, SystemSpec, MAX_ORDER};
pub use weyl::{NumericOperatorPolynomial, OperatorPolynomial};
