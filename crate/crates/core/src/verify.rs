//! Identity suites for the classical and quantum systems.

use std::time::Instant;

use log::info;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrals::{
    build_angular_momentum, build_hamiltonian, check_relation, random_phase_point, solve_integral_ansatz,
    survey_rank, swap_integral, IntegralSolution,
};
use crate::phase::PhasePolynomial;
use crate::quantum::{
    build_quantum_angular_momentum, build_quantum_hamiltonian, build_quantum_integral,
    quantum_partner_integral, swapped_quantum_integral, verify_quantum_relation,
};
use crate::spectra::{build_ladder_basis, build_structure_operator, check_ladder_commutator, DeformedOscillator};
use crate::symmetry::{build_generators, higgs_order, structure_functions, verify_prop2};
use crate::system::SystemSpec;
use crate::weyl::OperatorPolynomial;

/// Random points used for numeric-γ spot checks.
pub const NUMERIC_SAMPLE_POINTS: usize = 20;
/// Random points for the Jacobian rank survey.
pub const RANK_SAMPLE_POINTS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_text: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Pass,
            residual_text: None,
        }
    }

    pub fn fail(name: impl Into<String>, residual: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Fail,
            residual_text: Some(residual.into()),
        }
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Skipped,
            residual_text: Some(why.into()),
        }
    }

    /// Pass iff `residual` is the zero polynomial.
    pub fn zero(name: impl Into<String>, residual: &impl ResidualLike) -> Self {
        if residual.is_zero_residual() {
            CheckResult::pass(name)
        } else {
            CheckResult::fail(name, residual.residual_string())
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Polynomials whose vanishing certifies an identity.
pub trait ResidualLike {
    fn is_zero_residual(&self) -> bool;
    fn residual_string(&self) -> String;
}

impl ResidualLike for PhasePolynomial {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn residual_string(&self) -> String {
        self.to_string()
    }
}

impl ResidualLike for OperatorPolynomial {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn residual_string(&self) -> String {
        self.to_string()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalSummary {
    #[serde(rename = "N")]
    pub order: usize,
    pub brackets_checked: usize,
    pub residual_zero: bool,
    pub higgs_order: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ClassicalSuite {
    pub checks: Vec<CheckResult>,
    pub summary: ClassicalSummary,
    pub solution: IntegralSolution,
}

impl ClassicalSuite {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// Runs every classical identity for `spec`. The integral is derived with
/// symbolic γ; a numeric spec is then checked both symbolically and at
/// random points with its values substituted.
pub fn verify_classical(spec: &SystemSpec, seed: u64) -> Result<ClassicalSuite> {
    let started = Instant::now();
    let symbolic = spec.to_symbolic();
    let mut checks = Vec::new();
    let h = build_hamiltonian(&symbolic);
    let c = build_angular_momentum();
    checks.push(CheckResult::zero("{H, C} = 0", &h.poisson_bracket(&c)));

    let solution = solve_integral_ansatz(&symbolic)?;
    if solution.is_underdetermined() {
        info!(
            "{} free ansatz parameters set to zero",
            solution.free_parameters.len()
        );
    }
    let hi = h.poisson_bracket(&solution.integral);
    checks.push(CheckResult::zero("{H, I} = 0", &hi));
    let hip = h.poisson_bracket(&swap_integral(&solution));
    checks.push(CheckResult::zero("{H, I'} = 0", &hip));
    let relation = check_relation(&symbolic, &solution);
    checks.push(CheckResult::zero(
        "H = I + I' + sum (-1)^k g_2k C^2k",
        &relation.residual,
    ));

    let gens = match build_generators(&solution) {
        Ok(g) => {
            checks.push(CheckResult::pass("{L1, L3} = -L2"));
            Some(g)
        }
        Err(Error::BracketClosure(r)) => {
            checks.push(CheckResult::fail("{L1, L3} = -L2", r));
            None
        }
        Err(e) => return Err(e),
    };
    let mut prop2_residual = None;
    if let Some(g) = &gens {
        for (k, b) in g.hamiltonian_brackets(&symbolic).iter().enumerate() {
            checks.push(CheckResult::zero(format!("{{H, L{}}} = 0", k + 1), b));
        }
        let table = structure_functions(&symbolic);
        let r = verify_prop2(&symbolic, g, &table).residual;
        checks.push(CheckResult::zero("{L2, L3} = -sum n Phi_n (2 L1)^(2n-1)", &r));
        prop2_residual = Some(r);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let survey = survey_rank(
        &[h.clone(), c.clone(), solution.integral.clone()],
        symbolic.order(),
        RANK_SAMPLE_POINTS,
        &mut rng,
    )?;
    let full = survey.count_at(3);
    let name = "rank d(H, C, I) = 3 at >= 9/10 random points";
    if full * 10 >= 9 * RANK_SAMPLE_POINTS {
        checks.push(CheckResult::pass(name));
    } else {
        checks.push(CheckResult::fail(
            name,
            format!("rank 3 at {full}/{RANK_SAMPLE_POINTS} points: {:?}", survey.ranks),
        ));
    }

    if let Some(params) = spec.assignment() {
        let mut residuals: Vec<&PhasePolynomial> = vec![&hi, &hip, &relation.residual];
        if let Some(r) = &prop2_residual {
            residuals.push(r);
        }
        let mut bad = None;
        'points: for _ in 0..NUMERIC_SAMPLE_POINTS {
            let pt = random_phase_point(&mut rng);
            for r in &residuals {
                let v = r.evaluate(&pt, &params)?;
                if !num_traits::Zero::is_zero(&v) {
                    bad = Some(format!("nonzero value {v} at {pt:?}"));
                    break 'points;
                }
            }
        }
        let name = format!("numeric gamma identities at {NUMERIC_SAMPLE_POINTS} random points");
        checks.push(match bad {
            None => CheckResult::pass(name),
            Some(msg) => CheckResult::fail(name, msg),
        });
    }

    let table = structure_functions(spec);
    let residual_zero = checks.iter().all(CheckResult::passed);
    info!("classical suite for N = {} in {:.2?}", spec.order(), started.elapsed());
    Ok(ClassicalSuite {
        summary: ClassicalSummary {
            order: spec.order(),
            brackets_checked: checks.len(),
            residual_zero,
            higgs_order: higgs_order(&table),
        },
        checks,
        solution,
    })
}

#[derive(Clone, Debug)]
pub struct QuantumSuite {
    pub checks: Vec<CheckResult>,
}

impl QuantumSuite {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// Runs the quantum identities for `spec` (`N ≤ 4`).
pub fn verify_quantum(spec: &SystemSpec) -> Result<QuantumSuite> {
    let started = Instant::now();
    let mut checks = Vec::new();
    let h = build_quantum_hamiltonian(spec);
    let c = build_quantum_angular_momentum();
    let i = build_quantum_integral(spec)?;
    checks.push(CheckResult::zero("[H, C] = 0", &h.commutator(&c)));
    checks.push(CheckResult::zero("[H, I] = 0", &h.commutator(&i)));
    checks.push(CheckResult::zero("[H, swap(I)] = 0", &h.commutator(&swapped_quantum_integral(spec)?)));
    checks.push(CheckResult::zero("[H, I'] = 0", &h.commutator(&quantum_partner_integral(spec)?)));
    checks.push(CheckResult::zero(
        "H = I + I' - 4 g4 C^2 + g4 C^4",
        &verify_quantum_relation(spec)?.residual,
    ));
    match build_ladder_basis(spec) {
        Ok(basis) => {
            checks.push(CheckResult::pass("[K, K+-] = +-K+-"));
            match build_structure_operator(spec, &basis) {
                Ok(so) => {
                    checks.push(CheckResult::pass("K+ K- = Phi1 Phi2"));
                    checks.push(CheckResult::zero(
                        "[K-, K+] = Phi(H, K+1) - Phi(H, K)",
                        &check_ladder_commutator(spec, &basis, &so).residual,
                    ));
                    let osc = DeformedOscillator::new(&basis).verify(spec, &so);
                    checks.push(CheckResult::zero("[B, b+] = b+", &osc.raise.residual));
                    checks.push(CheckResult::zero("[B, b-] = -b-", &osc.lower.residual));
                    checks.push(CheckResult::zero(
                        "[b-, b+] = Phi(H, B+u+1) - Phi(H, B+u)",
                        &osc.closure.residual,
                    ));
                }
                Err(Error::IdentityFailure { name, residual }) => checks.push(CheckResult::fail(name, residual)),
                Err(e) => return Err(e),
            }
        }
        Err(Error::LadderClosure(r)) => checks.push(CheckResult::fail("[K, K+-] = +-K+-", r)),
        Err(e) => return Err(e),
    }
    info!("quantum suite for N = {} in {:.2?}", spec.order(), started.elapsed());
    Ok(QuantumSuite { checks })
}
