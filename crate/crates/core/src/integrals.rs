//! The Hamiltonian `H_N`, the angular momentum `C`, and the higher-order
//! integral `I_N` obtained from a linear ansatz.
//!
//! The ansatz is
//!
//! ```text
//! I_N = p2² + Σ_{n=1..N} γ_n Σ_{j=0..φ(n)} p2^{n−j} p1^j Q^{(n−j,j)}(q1, q2)
//! ```
//!
//! with every `Q^{(n−j,j)}` a homogeneous polynomial of degree `n` whose
//! coefficients are unknown. Expanding `{H_N, I_N}` and collecting the
//! coefficient of every monomial in (q, p, γ) gives a linear system which is
//! solved exactly.

use log::{debug, warn};
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linsolve::{self, Equation};
use crate::param::{ParamMonomial, ParamPolynomial, Symbol};
use crate::phase::{PhaseMonomial, PhasePoint, PhasePolynomial, PhaseVar};
use crate::ring::ParamAssignment;
use crate::scalar::GaussianRational;
use crate::system::{phi, SystemSpec};

/// `q1 p1 + q2 p2`.
pub fn dilation() -> PhasePolynomial {
    PhasePolynomial::monomial(PhaseMonomial::new(1, 0, 1, 0), ParamPolynomial::one())
        + PhasePolynomial::monomial(PhaseMonomial::new(0, 1, 0, 1), ParamPolynomial::one())
}

/// `H_N = p1² + p2² + Σ γ_n (q1 p1 + q2 p2)^n`.
pub fn build_hamiltonian(spec: &SystemSpec) -> PhasePolynomial {
    let mut h = PhasePolynomial::monomial(PhaseMonomial::new(0, 0, 2, 0), ParamPolynomial::one())
        + PhasePolynomial::monomial(PhaseMonomial::new(0, 0, 0, 2), ParamPolynomial::one());
    let d = dilation();
    let mut power = PhasePolynomial::one();
    for n in 1..=spec.order() {
        power = &power * &d;
        h = &h + &power.scale_by(&spec.gamma(n));
    }
    h
}

/// `C = q1 p2 − q2 p1`.
pub fn build_angular_momentum() -> PhasePolynomial {
    PhasePolynomial::monomial(PhaseMonomial::new(1, 0, 0, 1), ParamPolynomial::one())
        - PhasePolynomial::monomial(PhaseMonomial::new(0, 1, 1, 0), ParamPolynomial::one())
}

/// One unknown coefficient of the ansatz: the coefficient of
/// `q1^a q2^(n−a)` inside `Q^{(n−j,j)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnsatzUnknown {
    pub n: usize,
    pub j: usize,
    pub q1_power: usize,
}

impl AnsatzUnknown {
    /// The phase-space monomial `p2^{n−j} p1^j q1^a q2^{n−a}` it multiplies.
    pub fn monomial(&self) -> PhaseMonomial {
        let n = self.n as u16;
        let j = self.j as u16;
        let a = self.q1_power as u16;
        PhaseMonomial::new(a, n - a, j, n - j)
    }

    pub fn label(&self) -> String {
        format!(
            "Q^({},{})[q1^{} q2^{}]",
            self.n - self.j,
            self.j,
            self.q1_power,
            self.n - self.q1_power
        )
    }
}

/// The unknowns of the order-`N` ansatz, in a fixed order.
#[derive(Clone, Debug)]
pub struct IntegralAnsatz {
    pub order: usize,
    pub unknowns: Vec<AnsatzUnknown>,
}

impl IntegralAnsatz {
    pub fn new(order: usize) -> Self {
        let mut unknowns = Vec::new();
        for n in 1..=order {
            for j in 0..=phi(n) {
                for a in 0..=n {
                    unknowns.push(AnsatzUnknown { n, j, q1_power: a });
                }
            }
        }
        IntegralAnsatz { order, unknowns }
    }

    /// `γ_n · p2^{n−j} p1^j q1^a q2^{n−a}` for unknown `k`.
    fn basis(&self, k: usize) -> PhasePolynomial {
        let u = &self.unknowns[k];
        PhasePolynomial::monomial(u.monomial(), ParamPolynomial::gamma(u.n))
    }
}

/// A resolved `Q^{(n−j,j)}(q1, q2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QPolynomial {
    pub n: usize,
    pub j: usize,
    pub polynomial: PhasePolynomial,
}

impl QPolynomial {
    pub fn label(&self) -> String {
        format!("Q^({},{})", self.n - self.j, self.j)
    }
}

#[derive(Clone, Debug)]
pub struct IntegralSolution {
    pub order: usize,
    pub integral: PhasePolynomial,
    pub q_table: Vec<QPolynomial>,
    /// Unknowns the equations left undetermined (set to zero).
    pub free_parameters: Vec<AnsatzUnknown>,
}

impl IntegralSolution {
    pub fn is_underdetermined(&self) -> bool {
        !self.free_parameters.is_empty()
    }
}

/// Collects `Σ_k x_k·columns[k] + constant = 0` monomial by monomial, over
/// every (phase monomial, parameter monomial) pair.
fn collect_equations(columns: &[PhasePolynomial], constant: &PhasePolynomial) -> Vec<Equation> {
    use std::collections::BTreeMap;
    let mut rows: BTreeMap<(PhaseMonomial, ParamMonomial), Equation> = BTreeMap::new();
    for (k, col) in columns.iter().enumerate() {
        for (pm, coef) in col.terms() {
            for (gm, c) in coef.terms() {
                let e = rows.entry((*pm, *gm)).or_default();
                e.coefficients.insert(k, c.clone());
            }
        }
    }
    for (pm, coef) in constant.terms() {
        for (gm, c) in coef.terms() {
            let e = rows.entry((*pm, *gm)).or_default();
            e.rhs = -c;
        }
    }
    rows.into_values().collect()
}

/// Solves the linear ansatz for `I_N` with fully symbolic γ.
///
/// Normalisation: the γ-free part is exactly `p2²` and no ansatz monomial is
/// free of q, both by construction; any unknowns the equations leave free
/// are set to zero and reported in [`IntegralSolution::free_parameters`].
pub fn solve_integral_ansatz(spec: &SystemSpec) -> Result<IntegralSolution> {
    if !spec.is_symbolic() {
        return Err(Error::SymbolicRequired);
    }
    let n_max = spec.order();
    let ansatz = IntegralAnsatz::new(n_max);
    let h = build_hamiltonian(spec);
    let lead = PhasePolynomial::monomial(PhaseMonomial::new(0, 0, 0, 2), ParamPolynomial::one());
    let columns: Vec<PhasePolynomial> = (0..ansatz.unknowns.len())
        .map(|k| h.poisson_bracket(&ansatz.basis(k)))
        .collect();
    let constant = h.poisson_bracket(&lead);
    let equations = collect_equations(&columns, &constant);
    debug!(
        "N = {n_max}: {} unknowns, {} equations",
        ansatz.unknowns.len(),
        equations.len()
    );
    let sol = linsolve::solve(ansatz.unknowns.len(), &equations)?;

    let mut integral = lead;
    let mut q_table: Vec<QPolynomial> = Vec::new();
    for (k, u) in ansatz.unknowns.iter().enumerate() {
        let v = &sol.values[k];
        if !v.is_zero() {
            integral = &integral + &ansatz.basis(k).scale(v);
        }
        let qm = PhaseMonomial::new(u.q1_power as u16, (u.n - u.q1_power) as u16, 0, 0);
        let term = PhasePolynomial::monomial(qm, ParamPolynomial::constant(v.clone()));
        match q_table.last_mut() {
            Some(q) if q.n == u.n && q.j == u.j => q.polynomial = &q.polynomial + &term,
            _ => q_table.push(QPolynomial {
                n: u.n,
                j: u.j,
                polynomial: term,
            }),
        }
    }
    let free_parameters: Vec<AnsatzUnknown> = sol.free.iter().map(|&k| ansatz.unknowns[k]).collect();
    if !free_parameters.is_empty() {
        warn!(
            "ansatz for N = {n_max} left {} free parameters; set to zero",
            free_parameters.len()
        );
    }
    let residual = h.poisson_bracket(&integral);
    if !residual.is_zero() {
        return Err(Error::NoSolution(format!("{{H, I}} = {residual}")));
    }
    Ok(IntegralSolution {
        order: n_max,
        integral,
        q_table,
        free_parameters,
    })
}

/// `I′_N = I_N(q2, p2, q1, p1)`.
pub fn swap_integral(solution: &IntegralSolution) -> PhasePolynomial {
    solution.integral.swap_indices()
}

/// Outcome of an exact identity check: holds iff the residual is zero.
#[derive(Clone, Debug)]
pub struct IdentityCheck<P> {
    pub residual: P,
}

impl<P: std::fmt::Display> IdentityCheck<P> {
    pub fn residual_text(&self) -> String {
        self.residual.to_string()
    }
}

impl IdentityCheck<PhasePolynomial> {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `Σ_{k=1}^{φ(N+1)/2} (−1)^k γ_{2k} C^{2k}`.
pub fn casimir_correction(spec: &SystemSpec) -> PhasePolynomial {
    let c2 = build_angular_momentum().pow(2);
    let mut acc = PhasePolynomial::zero();
    let mut power = PhasePolynomial::one();
    for k in 1..=phi(spec.order() + 1) / 2 {
        power = &power * &c2;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        acc = &acc + &power.scale_by(&spec.gamma(2 * k).scale(&GaussianRational::from_integer(sign)));
    }
    acc
}

/// Residual of `H_N − I_N − I′_N − Σ (−1)^k γ_{2k} C^{2k}`.
pub fn check_relation(spec: &SystemSpec, solution: &IntegralSolution) -> IdentityCheck<PhasePolynomial> {
    let h = build_hamiltonian(spec);
    let residual = &(&(&h - &solution.integral) - &swap_integral(solution)) - &casimir_correction(spec);
    IdentityCheck { residual }
}

/// Exact rank of the Jacobian of `fns` with respect to (q1, q2, p1, p2) at
/// `point`, with parameters taken from `params`.
pub fn functional_independence_rank(
    fns: &[PhasePolynomial],
    point: &PhasePoint,
    params: &ParamAssignment,
) -> Result<usize> {
    if fns.is_empty() {
        return Err(Error::InvalidConfig("empty function list".into()));
    }
    let mut rows = Vec::with_capacity(fns.len());
    for f in fns {
        let mut row = Vec::with_capacity(4);
        for v in PhaseVar::ALL {
            row.push(f.partial_derivative(v).evaluate(point, params)?);
        }
        rows.push(row);
    }
    Ok(linsolve::rank(&rows))
}

/// A random rational with numerator in `[-97, 97]` and denominator in `[1, 97]`.
pub fn random_rational<R: Rng>(rng: &mut R, nonzero: bool) -> GaussianRational {
    loop {
        let num = rng.gen_range(-97i64..=97);
        if nonzero && num == 0 {
            continue;
        }
        return GaussianRational::from_ratio(num, rng.gen_range(1i64..=97));
    }
}

pub fn random_phase_point<R: Rng>(rng: &mut R) -> PhasePoint {
    std::array::from_fn(|_| random_rational(rng, false))
}

/// Ranks observed over a batch of random points.
#[derive(Clone, Debug)]
pub struct RankSurvey {
    pub ranks: Vec<usize>,
    /// The largest rank seen, taken as the generic value.
    pub generic: usize,
    /// Set when 5 consecutive points fell below the generic rank.
    pub degenerate_warning: bool,
}

impl RankSurvey {
    pub fn count_at(&self, rank: usize) -> usize {
        self.ranks.iter().filter(|&&r| r == rank).count()
    }
}

/// Jacobian ranks of `fns` at `samples` random rational points, each with
/// fresh nonzero random γ values.
pub fn survey_rank<R: Rng>(
    fns: &[PhasePolynomial],
    order: usize,
    samples: usize,
    rng: &mut R,
) -> Result<RankSurvey> {
    let mut ranks = Vec::with_capacity(samples);
    for _ in 0..samples {
        let params: ParamAssignment = (1..=order)
            .map(|j| (Symbol::gamma(j), random_rational(rng, true)))
            .collect();
        let point = random_phase_point(rng);
        ranks.push(functional_independence_rank(fns, &point, &params)?);
    }
    let generic = ranks.iter().copied().max().unwrap_or(0);
    let mut run = 0;
    let mut degenerate_warning = false;
    for &r in &ranks {
        run = if r < generic { run + 1 } else { 0 };
        if run >= 5 {
            degenerate_warning = true;
        }
    }
    if degenerate_warning {
        warn!("Jacobian rank below {generic} at 5 consecutive sample points");
    }
    Ok(RankSurvey {
        ranks,
        generic,
        degenerate_warning,
    })
}

/// Convenience used by the numeric fast path: `I_N` with the γ values of a
/// numeric spec substituted (the ansatz itself is always solved symbolically).
pub fn integral_for(spec: &SystemSpec) -> Result<PhasePolynomial> {
    let sol = solve_integral_ansatz(&spec.to_symbolic())?;
    Ok(match spec.assignment() {
        Some(a) => sol.integral.partial_evaluate(&a),
        None => sol.integral,
    })
}
