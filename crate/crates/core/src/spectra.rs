//! Ladder operators, the factorised structure operator and the algebraic
//! spectrum of the quantum systems with `N ≤ 4`.
//!
//! From `K̂1 = Ĉ`, `K̂2 = (Î′ − Î)/2`, `K̂3 = [K̂1, K̂2]` the change of basis
//!
//! ```text
//! K̂ = K̂1/2,   K̂± = K̂2 ± K̂3/2 − (γ2/2 − 2γ4)K̂1²
//! ```
//!
//! gives `[K̂, K̂±] = ±K̂±` and `K̂+K̂− = Φ1(Ĥ, K̂)·Φ2(Ĥ, K̂)`. The factors are
//! kept as formal polynomials in the energy `H` and the ladder variable `k`.
//! Finite-dimensional representations of the shifted algebra (`B̂ = K̂ − u`)
//! then fix `u(n)` and `E(n)`.

use std::collections::BTreeMap;
use std::fmt;

use log::debug;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::integrals::IdentityCheck;
use crate::param::{ParamPolynomial, Symbol};
use crate::quantum::{
    build_quantum_angular_momentum, build_quantum_hamiltonian, build_quantum_integral,
    quantum_partner_integral, MAX_QUANTUM_ORDER,
};
use crate::ring::{Degree, ParamAssignment};
use crate::scalar::GaussianRational;
use crate::system::{SystemSpec, MAX_ORDER};
use crate::weyl::OperatorPolynomial;

fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::from_ratio(n, d)
}

fn sym(s: Symbol) -> ParamPolynomial {
    ParamPolynomial::symbol(s)
}

#[derive(Clone, Debug)]
pub struct LadderBasis {
    pub k1: OperatorPolynomial,
    pub k2: OperatorPolynomial,
    pub k3: OperatorPolynomial,
    pub k: OperatorPolynomial,
    pub k_plus: OperatorPolynomial,
    pub k_minus: OperatorPolynomial,
    /// The coefficient `γ2/2 − 2γ4` of `K̂1²` subtracted from both ladder
    /// operators.
    pub change_of_basis: ParamPolynomial,
}

/// Builds the ladder basis and checks `[K̂, K̂±] = ±K̂±`.
pub fn build_ladder_basis(spec: &SystemSpec) -> Result<LadderBasis> {
    let i = build_quantum_integral(spec)?;
    let ip = quantum_partner_integral(spec)?;
    let half = q(1, 2);
    let k1 = build_quantum_angular_momentum();
    let k2 = (&ip - &i).scale(&half);
    let k3 = k1.commutator(&k2);
    let k = k1.scale(&half);
    let change_of_basis = &spec.gamma(2).scale(&half) - &spec.gamma(4).scale(&q(2, 1));
    let shift = k1.pow(2).scale_by(&change_of_basis);
    let half_k3 = k3.scale(&half);
    let k_plus = &(&k2 + &half_k3) - &shift;
    let k_minus = &(&k2 - &half_k3) - &shift;
    if k.commutator(&k_plus) != k_plus {
        return Err(Error::LadderClosure(format!(
            "[K, K+] - K+ = {}",
            &k.commutator(&k_plus) - &k_plus
        )));
    }
    if k.commutator(&k_minus) != -&k_minus {
        return Err(Error::LadderClosure(format!(
            "[K, K-] + K- = {}",
            &k.commutator(&k_minus) + &k_minus
        )));
    }
    Ok(LadderBasis {
        k1,
        k2,
        k3,
        k,
        k_plus,
        k_minus,
        change_of_basis,
    })
}

/// `f(k) = −2iγ1k + 4γ2k² + 8iγ3k³ − 16γ4k⁴`, truncated at order `N`.
fn ladder_polynomial(spec: &SystemSpec, k: &ParamPolynomial) -> ParamPolynomial {
    let weights = [
        GaussianRational::from_parts(0, 1, -2, 1),
        GaussianRational::from_integer(4),
        GaussianRational::from_parts(0, 1, 8, 1),
        GaussianRational::from_integer(-16),
    ];
    let mut acc = ParamPolynomial::zero();
    for (j, w) in weights.iter().enumerate() {
        acc = &acc + &(&k.pow(j as u32 + 1) * &spec.gamma(j + 1)).scale(w);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Phi1,
    Phi2,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Phi1 => f.write_str("Phi1"),
            Factor::Phi2 => f.write_str("Phi2"),
        }
    }
}

/// The two factors of `K̂+K̂−`, as polynomials in the formal energy `H`, the
/// ladder variable `k` and the γ's.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureOperator {
    pub phi1: ParamPolynomial,
    pub phi2: ParamPolynomial,
}

impl StructureOperator {
    /// `Φ1 = (H + f(k))/4`, `Φ2 = H + f(1 − k)`.
    pub fn formal(spec: &SystemSpec) -> Self {
        let h = sym(Symbol::Energy);
        let k = sym(Symbol::Ladder);
        let phi1 = (&h + &ladder_polynomial(spec, &k)).scale(&q(1, 4));
        let one_minus_k = &ParamPolynomial::one() - &k;
        let phi2 = &h + &ladder_polynomial(spec, &one_minus_k);
        StructureOperator { phi1, phi2 }
    }

    pub fn factor(&self, which: Factor) -> &ParamPolynomial {
        match which {
            Factor::Phi1 => &self.phi1,
            Factor::Phi2 => &self.phi2,
        }
    }

    pub fn product(&self) -> ParamPolynomial {
        &self.phi1 * &self.phi2
    }

    /// `Φ(B, E, u) = Φ1(E, B + u)·Φ2(E, B + u)` with `B`, `E`, `u` given as
    /// polynomials.
    pub fn at(&self, b: &ParamPolynomial, energy: &ParamPolynomial, u: &ParamPolynomial) -> ParamPolynomial {
        let k = b + u;
        self.product()
            .substitute(Symbol::Ladder, &k)
            .substitute(Symbol::Energy, energy)
    }
}

/// Replaces the formal `H` and `k` of `poly` by the commuting operators `h`
/// and `k`.
pub fn substitute_operators(
    poly: &ParamPolynomial,
    h: &OperatorPolynomial,
    k: &OperatorPolynomial,
) -> OperatorPolynomial {
    let mut cache: BTreeMap<(u8, u8), OperatorPolynomial> = BTreeMap::new();
    let mut h_pows = vec![OperatorPolynomial::one()];
    let mut k_pows = vec![OperatorPolynomial::one()];
    let mut out = OperatorPolynomial::zero();
    for (m, c) in poly.terms() {
        let a = m.exponent(Symbol::Energy);
        let b = m.exponent(Symbol::Ladder);
        while h_pows.len() <= a as usize {
            let next = h_pows.last().unwrap().op_mul(h);
            h_pows.push(next);
        }
        while k_pows.len() <= b as usize {
            let next = k_pows.last().unwrap().op_mul(k);
            k_pows.push(next);
        }
        let op = cache
            .entry((a, b))
            .or_insert_with(|| h_pows[a as usize].op_mul(&k_pows[b as usize]));
        let rest = m.with_exponent(Symbol::Energy, 0).with_exponent(Symbol::Ladder, 0);
        out = &out + &op.scale_by(&ParamPolynomial::monomial(rest, c.clone()));
    }
    out
}

/// Builds `Φ1, Φ2` and certifies `K̂+K̂− = Φ1(Ĥ, K̂)·Φ2(Ĥ, K̂)` exactly.
pub fn build_structure_operator(spec: &SystemSpec, basis: &LadderBasis) -> Result<StructureOperator> {
    let so = StructureOperator::formal(spec);
    let h = build_quantum_hamiltonian(spec);
    let lhs = basis.k_plus.op_mul(&basis.k_minus);
    let rhs = substitute_operators(&so.product(), &h, &basis.k);
    let residual = &lhs - &rhs;
    if !residual.is_zero() {
        return Err(Error::IdentityFailure {
            name: "K+K- = Phi1*Phi2".into(),
            residual: residual.to_string(),
        });
    }
    Ok(so)
}

/// Residual of `[K̂−, K̂+] − (Φ(Ĥ, K̂ + 1) − Φ(Ĥ, K̂))`.
pub fn check_ladder_commutator(
    spec: &SystemSpec,
    basis: &LadderBasis,
    so: &StructureOperator,
) -> IdentityCheck<OperatorPolynomial> {
    let h = build_quantum_hamiltonian(spec);
    let phi = so.product();
    let k_next = &basis.k + &OperatorPolynomial::one();
    let rhs = &substitute_operators(&phi, &h, &k_next) - &substitute_operators(&phi, &h, &basis.k);
    IdentityCheck {
        residual: &basis.k_minus.commutator(&basis.k_plus) - &rhs,
    }
}

/// `B̂ = K̂ − u`, `b̂− = K̂−`, `b̂+ = K̂+` with `u` the formal symbol
/// [`Symbol::Shift`].
#[derive(Clone, Debug)]
pub struct DeformedOscillator {
    pub number: OperatorPolynomial,
    pub lower: OperatorPolynomial,
    pub raise: OperatorPolynomial,
}

/// Residuals of the three defining commutators of the shifted algebra.
#[derive(Clone, Debug)]
pub struct OscillatorChecks {
    pub raise: IdentityCheck<OperatorPolynomial>,
    pub lower: IdentityCheck<OperatorPolynomial>,
    pub closure: IdentityCheck<OperatorPolynomial>,
}

impl OscillatorChecks {
    pub fn all_hold(&self) -> bool {
        self.raise.holds() && self.lower.holds() && self.closure.holds()
    }
}

impl DeformedOscillator {
    pub fn new(basis: &LadderBasis) -> Self {
        let u = OperatorPolynomial::constant(sym(Symbol::Shift));
        DeformedOscillator {
            number: &basis.k - &u,
            lower: basis.k_minus.clone(),
            raise: basis.k_plus.clone(),
        }
    }

    /// `[B̂, b̂±] = ±b̂±` and
    /// `[b̂−, b̂+] = Φ(Ĥ, B̂ + (u+1)) − Φ(Ĥ, B̂ + u)`, all formal in `u`.
    pub fn verify(&self, spec: &SystemSpec, so: &StructureOperator) -> OscillatorChecks {
        let h = build_quantum_hamiltonian(spec);
        let u = OperatorPolynomial::constant(sym(Symbol::Shift));
        let one = OperatorPolynomial::one();
        let phi = so.product();
        let at_u = &self.number + &u;
        let at_u1 = &at_u + &one;
        let rhs = &substitute_operators(&phi, &h, &at_u1) - &substitute_operators(&phi, &h, &at_u);
        OscillatorChecks {
            raise: IdentityCheck {
                residual: &self.number.commutator(&self.raise) - &self.raise,
            },
            lower: IdentityCheck {
                residual: &self.number.commutator(&self.lower) + &self.lower,
            },
            closure: IdentityCheck {
                residual: &self.lower.commutator(&self.raise) - &rhs,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FamilyType {
    I,
    II,
    /// A consistent family beyond the two expected ones.
    Extra(usize),
}

impl fmt::Display for FamilyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyType::I => f.write_str("I"),
            FamilyType::II => f.write_str("II"),
            FamilyType::Extra(k) => write!(f, "extra-{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumFamily {
    pub label: FamilyType,
    /// The factor vanishing at `B = 0`.
    pub bottom: Factor,
    /// The factor vanishing at `B = n + 1`.
    pub top: Factor,
    /// `u(n)`, a polynomial in the level symbol `n`.
    pub u: ParamPolynomial,
    /// `E(n)`, a polynomial in `n` and the parameters.
    pub energy: ParamPolynomial,
}

impl SpectrumFamily {
    /// `E(n)` at a concrete level with the given parameter values.
    pub fn level(&self, n: u64, params: &ParamAssignment) -> Result<GaussianRational> {
        let mut p = params.clone();
        p.insert(Symbol::Level, GaussianRational::from_integer(n as i64));
        self.energy.evaluate(&p)
    }

    pub fn levels(&self, n_max: u64, params: &ParamAssignment) -> Result<Vec<GaussianRational>> {
        (0..=n_max).map(|n| self.level(n, params)).collect()
    }

    /// The family with every coefficient mapped through `f`.
    pub fn map_energy(&self, f: impl Fn(&ParamPolynomial) -> ParamPolynomial) -> SpectrumFamily {
        SpectrumFamily {
            energy: f(&self.energy),
            ..self.clone()
        }
    }
}

fn gamma_symbols() -> Vec<Symbol> {
    (1..=MAX_ORDER).map(Symbol::gamma).collect()
}

/// Solves one assignment of the factors to the two boundary conditions.
/// Returns `None` when the two conditions cannot hold together.
fn solve_assignment(
    so: &StructureOperator,
    bottom: Factor,
    top: Factor,
) -> Option<(ParamPolynomial, ParamPolynomial)> {
    let n = sym(Symbol::Level);
    let u = sym(Symbol::Shift);
    // bottom factor at k = u, linear in E
    let low = so.factor(bottom).substitute(Symbol::Ladder, &u);
    let e_coef = low.coefficient_of(Symbol::Energy, 1).as_constant()?;
    if e_coef.is_zero() || low.degree_in(Symbol::Energy) != Degree::Finite(1) {
        return None;
    }
    let rest = low.coefficient_of(Symbol::Energy, 0);
    let energy_u = rest.scale(&(-e_coef.checked_inv()?));
    // top factor at k = n + 1 + u
    let k_top = &(&n + &ParamPolynomial::one()) + &u;
    let high = so
        .factor(top)
        .substitute(Symbol::Ladder, &k_top)
        .substitute(Symbol::Energy, &energy_u);
    let groups = high.split_by(&gamma_symbols());
    let mut u_of_n: Option<ParamPolynomial> = None;
    for g in groups.values() {
        match g.degree_in(Symbol::Shift) {
            Degree::Finite(0) => {
                debug!("{bottom}/{top}: u-free obstruction {g}");
                return None;
            }
            Degree::Finite(1) if u_of_n.is_none() => {
                let a = g.coefficient_of(Symbol::Shift, 1);
                if let Some(a) = a.as_constant() {
                    let b = g.coefficient_of(Symbol::Shift, 0);
                    u_of_n = Some(b.scale(&(-a.checked_inv()?)));
                }
            }
            _ => {}
        }
    }
    let u_of_n = match u_of_n {
        Some(v) => v,
        // no γ-group fixes u: only the fully degenerate case remains
        None if groups.is_empty() => ParamPolynomial::zero(),
        None => {
            debug!("{bottom}/{top}: no group linear in u");
            return None;
        }
    };
    if !high.substitute(Symbol::Shift, &u_of_n).is_zero() {
        debug!("{bottom}/{top}: u = {u_of_n} does not annihilate every group");
        return None;
    }
    Some((u_of_n.clone(), energy_u.substitute(Symbol::Shift, &u_of_n)))
}

/// Enumerates the four assignments of `Φ1, Φ2` to `Φ(0) = 0`,
/// `Φ(n + 1) = 0` and returns the distinct consistent families.
///
/// Parameters are kept symbolic during the solve; numeric specs have their
/// values substituted into `E(n)` afterwards.
pub fn solve_spectrum(spec: &SystemSpec) -> Result<Vec<SpectrumFamily>> {
    if spec.order() > MAX_QUANTUM_ORDER {
        return Err(Error::UnsupportedOrder(spec.order()));
    }
    let so = StructureOperator::formal(&spec.to_symbolic());
    let mut found: Vec<SpectrumFamily> = Vec::new();
    let mut extras = 0;
    for (bottom, top) in [
        (Factor::Phi1, Factor::Phi2),
        (Factor::Phi2, Factor::Phi1),
        (Factor::Phi1, Factor::Phi1),
        (Factor::Phi2, Factor::Phi2),
    ] {
        let Some((u, energy)) = solve_assignment(&so, bottom, top) else {
            log::info!("assignment {bottom} at B=0, {top} at B=n+1 is inconsistent; dropped");
            continue;
        };
        let energy = match spec.assignment() {
            Some(a) => energy.partial_evaluate(&a),
            None => energy,
        };
        if found.iter().any(|f| f.u == u && f.energy == energy) {
            continue;
        }
        let label = match (bottom, top) {
            (Factor::Phi1, Factor::Phi2) => FamilyType::I,
            (Factor::Phi2, Factor::Phi1) => FamilyType::II,
            _ => {
                extras += 1;
                FamilyType::Extra(extras)
            }
        };
        found.push(SpectrumFamily {
            label,
            bottom,
            top,
            u,
            energy,
        });
    }
    if found.is_empty() {
        return Err(Error::NoSpectrum);
    }
    Ok(found)
}

/// Checks `Φ(0, E(n), u(n)) = 0` and `Φ(n + 1, E(n), u(n)) = 0` as
/// polynomial identities in `n`.
pub fn boundary_conditions_hold(so: &StructureOperator, family: &SpectrumFamily) -> bool {
    let n = sym(Symbol::Level);
    let top = &n + &ParamPolynomial::one();
    so.at(&ParamPolynomial::zero(), &family.energy, &family.u).is_zero()
        && so.at(&top, &family.energy, &family.u).is_zero()
}

/// `Φ(B, E(n), u(n))` is not identically zero for `1 ≤ B ≤ n` and every
/// sampled `n`.
pub fn interior_nondegenerate(so: &StructureOperator, family: &SpectrumFamily, samples: u64) -> bool {
    (1..=samples).all(|n| {
        let at_n: ParamAssignment = [(Symbol::Level, GaussianRational::from_integer(n as i64))].into_iter().collect();
        let e = family.energy.partial_evaluate(&at_n);
        let u = family.u.partial_evaluate(&at_n);
        (1..=n).all(|b| !so.at(&ParamPolynomial::integer(b as i64), &e, &u).is_zero())
    })
}

/// `γ1 = −iβ, γ2 = α, γ3 = iμ, γ4 = −ν`.
pub fn real_parameter_form(p: &ParamPolynomial) -> ParamPolynomial {
    let i = GaussianRational::i();
    p.substitute(Symbol::gamma(1), &sym(Symbol::Beta).scale(&-&i))
        .substitute(Symbol::gamma(2), &sym(Symbol::Alpha))
        .substitute(Symbol::gamma(3), &sym(Symbol::Mu).scale(&i))
        .substitute(Symbol::gamma(4), &sym(Symbol::Nu).scale(&q(-1, 1)))
}

/// Whether `E(n)` has only real coefficients in the real parameter form.
pub fn realness_certificate(family: &SpectrumFamily) -> bool {
    real_parameter_form(&family.energy).is_real()
}

/// The (β, α, μ, ν) assignment.
pub fn real_parameters(beta: GaussianRational, alpha: GaussianRational, mu: GaussianRational, nu: GaussianRational) -> ParamAssignment {
    [
        (Symbol::Beta, beta),
        (Symbol::Alpha, alpha),
        (Symbol::Mu, mu),
        (Symbol::Nu, nu),
    ]
    .into_iter()
    .collect()
}

/// The two spectra at `α = −1, β = −2`, as polynomials in `n`:
/// `(E_I, E_II)`.
pub fn zernike_specialization(
    mu: GaussianRational,
    nu: GaussianRational,
) -> Result<(ParamPolynomial, ParamPolynomial)> {
    let families = solve_spectrum(&SystemSpec::symbolic(4)?)?;
    let params = real_parameters(q(-2, 1), q(-1, 1), mu, nu);
    let pick = |t: FamilyType| -> Result<ParamPolynomial> {
        let f = families
            .iter()
            .find(|f| f.label == t)
            .ok_or(Error::NoSpectrum)?;
        Ok(real_parameter_form(&f.energy).partial_evaluate(&params))
    };
    Ok((pick(FamilyType::I)?, pick(FamilyType::II)?))
}

/// `Φ(B, E(n), u(n))` at the Zernike point `α = −1, β = −2, μ = ν = 0` is
/// real and nonnegative for `1 ≤ B ≤ n ≤ n_max`.
pub fn zernike_positivity(n_max: u64) -> Result<bool> {
    let families = solve_spectrum(&SystemSpec::symbolic(4)?)?;
    let so = StructureOperator::formal(&SystemSpec::symbolic(4)?);
    let zero = GaussianRational::from_integer(0);
    let params = real_parameters(q(-2, 1), q(-1, 1), zero.clone(), zero);
    let phi = real_parameter_form(&so.product()).partial_evaluate(&params);
    let so_real = StructureOperator {
        phi1: phi,
        phi2: ParamPolynomial::one(),
    };
    for f in &families {
        let e = real_parameter_form(&f.energy).partial_evaluate(&params);
        for n in 0..=n_max {
            let at_n: ParamAssignment = [(Symbol::Level, GaussianRational::from_integer(n as i64))].into_iter().collect();
            let e_n = e.partial_evaluate(&at_n);
            let u_n = f.u.partial_evaluate(&at_n);
            for b in 1..=n {
                let v = so_real.at(&ParamPolynomial::integer(b as i64), &e_n, &u_n);
                let Some(c) = v.as_constant() else {
                    return Ok(false);
                };
                if !c.is_real() || c.re() < &num_rational::BigRational::zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ParamPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn formal_factors_order_four() {
        let so = StructureOperator::formal(&SystemSpec::symbolic(4).unwrap());
        assert_eq!(
            so.phi1,
            p("(1/4)*(H - 2*i*g1*k + 4*g2*k^2 + 8*i*g3*k^3 - 16*g4*k^4)")
        );
        assert_eq!(
            so.phi2,
            p("H + 2*i*g1*(k-1) + 4*g2*(k-1)^2 - 8*i*g3*(k-1)^3 - 16*g4*(k-1)^4")
        );
        let so2 = StructureOperator::formal(&SystemSpec::symbolic(2).unwrap());
        assert_eq!(so2.phi1, p("(1/4)*(H - 2*i*g1*k + 4*g2*k^2)"));
    }

    #[test]
    fn ladder_order_two() {
        let spec = SystemSpec::symbolic(2).unwrap();
        let basis = build_ladder_basis(&spec).unwrap();
        assert_eq!(basis.change_of_basis, p("(1/2)*g2"));
        let so = build_structure_operator(&spec, &basis).unwrap();
        assert!(check_ladder_commutator(&spec, &basis, &so).holds());
        let osc = DeformedOscillator::new(&basis);
        assert!(osc.verify(&spec, &so).all_hold());
    }

    #[test]
    fn free_ladder() {
        let spec = SystemSpec::numeric(vec![GaussianRational::from_integer(0)]).unwrap();
        let basis = build_ladder_basis(&spec).unwrap();
        assert_eq!(basis.k.commutator(&basis.k_plus), basis.k_plus);
        assert!(build_structure_operator(&spec, &basis).is_ok());
    }

    #[test]
    fn spectrum_order_four_symbolic() {
        let spec = SystemSpec::symbolic(4).unwrap();
        let fams = solve_spectrum(&spec).unwrap();
        assert_eq!(fams.len(), 2);
        let so = StructureOperator::formal(&spec);
        for f in &fams {
            assert_eq!(f.u, p("-(1/2)*n"));
            assert!(boundary_conditions_hold(&so, f));
            assert!(interior_nondegenerate(&so, f, 10));
            assert!(realness_certificate(f));
        }
        assert_eq!(fams[0].label, FamilyType::I);
        assert_eq!(
            real_parameter_form(&fams[0].energy),
            p("-(beta*n + alpha*n^2 + mu*n^3 + nu*n^4)")
        );
        assert_eq!(
            real_parameter_form(&fams[1].energy),
            p("beta*(n+2) - alpha*(n+2)^2 + mu*(n+2)^3 - nu*(n+2)^4")
        );
    }

    #[test]
    fn truncation_consistency() {
        let f2 = solve_spectrum(&SystemSpec::symbolic(2).unwrap()).unwrap();
        let f4 = solve_spectrum(&SystemSpec::symbolic(4).unwrap()).unwrap();
        let drop: ParamAssignment = [
            (Symbol::gamma(3), GaussianRational::from_integer(0)),
            (Symbol::gamma(4), GaussianRational::from_integer(0)),
        ]
        .into_iter()
        .collect();
        assert_eq!(f2.len(), f4.len());
        for (a, b) in f2.iter().zip(&f4) {
            assert_eq!(a.energy, b.energy.partial_evaluate(&drop));
            assert_eq!(a.u, b.u);
        }
    }

    #[test]
    fn zernike_levels() {
        let zero = GaussianRational::from_integer(0);
        let (ei, eii) = zernike_specialization(zero.clone(), zero).unwrap();
        assert_eq!(ei, p("n*(n+2)"));
        assert_eq!(eii, p("n*(n+2)"));
        let (ei, eii) = zernike_specialization(q(1, 3), q(2, 5)).unwrap();
        assert_eq!(ei, p("n*(n+2) - (1/3)*n^3 - (2/5)*n^4"));
        assert_eq!(eii, p("n*(n+2) + (1/3)*(n+2)^3 - (2/5)*(n+2)^4"));
        assert!(zernike_positivity(6).unwrap());
    }

    #[test]
    fn numeric_levels() {
        let spec = SystemSpec::numeric(vec![
            GaussianRational::from_parts(0, 1, 2, 1),
            GaussianRational::from_integer(-1),
        ])
        .unwrap();
        let fams = solve_spectrum(&spec).unwrap();
        let levels = fams[0].levels(4, &ParamAssignment::new()).unwrap();
        let want: Vec<GaussianRational> = [0, 3, 8, 15, 24].iter().map(|&v| GaussianRational::from_integer(v)).collect();
        assert_eq!(levels, want);
    }
}
