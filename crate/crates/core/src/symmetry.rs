//! The classical polynomial Higgs-type algebra generated by
//! `L1 = C/2`, `L2 = (I′_N − I_N)/2`, `L3 = {L1, L2}`:
//!
//! ```text
//! {L1, L2} = L3,   {L1, L3} = −L2,   {L2, L3} = −Σ_n n Φ_{N,n}(H_N) (2L1)^(2n−1)
//! ```
//!
//! with structure functions
//! `Φ_{N,n}(H) = γn²/2 − (−1)^n γ_{2n} H + Σ_s (−1)^s γ_{n−s} γ_{n+s}`.

use log::debug;
use rand::Rng;

use crate::error::{Error, Result};
use crate::integrals::{
    build_angular_momentum, build_hamiltonian, random_phase_point, random_rational, swap_integral,
    IdentityCheck, IntegralSolution,
};
use crate::param::{ParamPolynomial, Symbol};
use crate::phase::PhasePolynomial;
use crate::ring::ParamAssignment;
use crate::scalar::GaussianRational;
use crate::system::SystemSpec;

#[derive(Clone, Debug)]
pub struct SymmetryGenerators {
    pub l1: PhasePolynomial,
    pub l2: PhasePolynomial,
    pub l3: PhasePolynomial,
}

/// Builds `L1, L2, L3` and checks `{L1, L3} = −L2`.
pub fn build_generators(solution: &IntegralSolution) -> Result<SymmetryGenerators> {
    let half = GaussianRational::from_ratio(1, 2);
    let l1 = build_angular_momentum().scale(&half);
    let l2 = (&swap_integral(solution) - &solution.integral).scale(&half);
    let l3 = l1.poisson_bracket(&l2);
    let closure = &l1.poisson_bracket(&l3) + &l2;
    if !closure.is_zero() {
        return Err(Error::BracketClosure(format!("{{L1, L3}} + L2 = {closure}")));
    }
    Ok(SymmetryGenerators { l1, l2, l3 })
}

impl SymmetryGenerators {
    /// `{H_N, L_k}` for `k = 1, 2, 3`.
    pub fn hamiltonian_brackets(&self, spec: &SystemSpec) -> [PhasePolynomial; 3] {
        let h = build_hamiltonian(spec);
        [
            h.poisson_bracket(&self.l1),
            h.poisson_bracket(&self.l2),
            h.poisson_bracket(&self.l3),
        ]
    }
}

/// `Φ_{N,1}, …, Φ_{N,N}` as polynomials in the formal energy `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureFunctionTable {
    pub order: usize,
    pub entries: Vec<ParamPolynomial>,
}

impl StructureFunctionTable {
    /// `Φ_{N,n}`, for `1 ≤ n ≤ N`.
    pub fn get(&self, n: usize) -> &ParamPolynomial {
        &self.entries[n - 1]
    }
}

fn sign(k: usize) -> GaussianRational {
    GaussianRational::from_integer(if k % 2 == 0 { 1 } else { -1 })
}

/// Evaluates the structure functions for the order of `spec`; γ_m with
/// `m > N` are zero.
pub fn structure_functions(spec: &SystemSpec) -> StructureFunctionTable {
    let n_max = spec.order();
    let h = ParamPolynomial::symbol(Symbol::Energy);
    let entries = (1..=n_max)
        .map(|n| {
            let mut phi = spec.gamma(n).pow(2).scale(&GaussianRational::from_ratio(1, 2));
            phi = &phi - &(&spec.gamma(2 * n) * &h).scale(&sign(n));
            for s in 1..=(n - 1).min(n_max - n) {
                phi = &phi + &(&spec.gamma(n - s) * &spec.gamma(n + s)).scale(&sign(s));
            }
            phi
        })
        .collect();
    StructureFunctionTable { order: n_max, entries }
}

/// `Σ_n n Φ_{N,n}(H_N) (2L1)^(2n−1)` with `H_N` substituted.
pub fn prop2_right_side(spec: &SystemSpec, gens: &SymmetryGenerators, table: &StructureFunctionTable) -> PhasePolynomial {
    let h = build_hamiltonian(spec);
    let two_l1 = gens.l1.scale(&GaussianRational::from_integer(2));
    let sq = two_l1.pow(2);
    let mut power = two_l1;
    let mut acc = PhasePolynomial::zero();
    for n in 1..=table.order {
        if n > 1 {
            power = &power * &sq;
        }
        let phi = PhasePolynomial::constant(table.get(n).scale(&GaussianRational::from_integer(n as i64)))
            .substitute_symbol_with(Symbol::Energy, &h);
        acc = &acc + &(&phi * &power);
    }
    acc
}

/// Residual of `{L2, L3} + Σ_n n Φ_{N,n}(H_N) (2L1)^(2n−1)`.
pub fn verify_prop2(
    spec: &SystemSpec,
    gens: &SymmetryGenerators,
    table: &StructureFunctionTable,
) -> IdentityCheck<PhasePolynomial> {
    let lhs = gens.l2.poisson_bracket(&gens.l3);
    let rhs = prop2_right_side(spec, gens, table);
    debug!("{{L2, L3}} has {} terms", lhs.len());
    IdentityCheck {
        residual: &lhs + &rhs,
    }
}

/// Order of the algebra: the largest odd power `2n − 1` of `2L1` with a
/// nonzero structure function.
pub fn higgs_order(table: &StructureFunctionTable) -> Option<usize> {
    (1..=table.order)
        .rev()
        .find(|&n| !table.get(n).is_zero())
        .map(|n| 2 * n - 1)
}

/// Randomised check of the same identity at `points` random rational
/// phase points and γ values. Fast, but not a proof.
pub fn verify_prop2_randomized<R: Rng>(
    spec: &SystemSpec,
    gens: &SymmetryGenerators,
    table: &StructureFunctionTable,
    points: usize,
    rng: &mut R,
) -> Result<bool> {
    let lhs = gens.l2.poisson_bracket(&gens.l3);
    let rhs = prop2_right_side(spec, gens, table);
    for _ in 0..points {
        let params: ParamAssignment = (1..=spec.order())
            .map(|j| (Symbol::gamma(j), random_rational(rng, true)))
            .collect();
        let pt = random_phase_point(rng);
        let v = &lhs.evaluate(&pt, &params)? + &rhs.evaluate(&pt, &params)?;
        if !num_traits::Zero::is_zero(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrals::solve_integral_ansatz;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> ParamPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn table_entries() {
        let t4 = structure_functions(&SystemSpec::symbolic(4).unwrap());
        assert_eq!(t4.get(1), &p("(1/2)*g1^2 + g2*H"));
        assert_eq!(t4.get(2), &p("(1/2)*g2^2 - g1*g3 - g4*H"));
        assert_eq!(t4.get(3), &p("(1/2)*g3^2 - g2*g4"));
        assert_eq!(t4.get(4), &p("(1/2)*g4^2"));
        let t2 = structure_functions(&SystemSpec::symbolic(2).unwrap());
        assert_eq!(t2.get(2), &p("(1/2)*g2^2"));
        assert_eq!(higgs_order(&t4), Some(7));
        let free = SystemSpec::numeric(vec![GaussianRational::from_integer(0)]).unwrap();
        assert_eq!(higgs_order(&structure_functions(&free)), None);
    }

    #[test]
    fn low_order_algebra() {
        for n in 1..=3 {
            let spec = SystemSpec::symbolic(n).unwrap();
            let sol = solve_integral_ansatz(&spec).unwrap();
            let gens = build_generators(&sol).unwrap();
            for b in gens.hamiltonian_brackets(&spec) {
                assert!(b.is_zero());
            }
            let table = structure_functions(&spec);
            assert!(verify_prop2(&spec, &gens, &table).holds(), "N = {n}");
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            assert!(verify_prop2_randomized(&spec, &gens, &table, 30, &mut rng).unwrap());
        }
    }

    #[test]
    fn order_two_cubic() {
        let spec = SystemSpec::symbolic(2).unwrap();
        let sol = solve_integral_ansatz(&spec).unwrap();
        let gens = build_generators(&sol).unwrap();
        let h = build_hamiltonian(&spec);
        let two_l1 = gens.l1.scale(&GaussianRational::from_integer(2));
        let phi1 = &(&crate::phase::vars::gamma(1).pow(2)).scale(&GaussianRational::from_ratio(1, 2))
            + &(&crate::phase::vars::gamma(2) * &h);
        let expected = -(&(&phi1 * &two_l1) + &(&crate::phase::vars::gamma(2).pow(2) * &two_l1.pow(3)));
        assert_eq!(gens.l2.poisson_bracket(&gens.l3), expected);
    }

    #[test]
    fn free_motion_generators() {
        let spec = SystemSpec::numeric(vec![GaussianRational::from_integer(0)]).unwrap();
        let sol = IntegralSolution {
            order: 1,
            integral: "p2^2".parse().unwrap(),
            q_table: Vec::new(),
            free_parameters: Vec::new(),
        };
        let gens = build_generators(&sol).unwrap();
        assert_eq!(gens.l2, "(1/2)*p1^2 - (1/2)*p2^2".parse().unwrap());
        assert_eq!(gens.l3, "p1*p2".parse::<PhasePolynomial>().unwrap());
        assert!(gens.l2.poisson_bracket(&gens.l3).is_zero());
        assert!(verify_prop2(&spec, &gens, &structure_functions(&spec)).holds());
    }
}
