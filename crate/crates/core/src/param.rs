//! Polynomials in the central parameters.
//!
//! Besides γ1..γ8 the symbol set carries the real parameters β, α, μ, ν of
//! the spectrum display and the formal variables used by the quantum
//! spectrum machinery: the energy `H`, the ladder eigenvalue `k`, the
//! representation size `n` and the shift `u`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Coefficient, Degree, ParamAssignment};
use crate::scalar::GaussianRational;
use crate::text;

pub const PARAM_SLOTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// γ_j for `j` in 1..=8.
    Gamma(u8),
    Beta,
    Alpha,
    Mu,
    Nu,
    /// The Hamiltonian (or its eigenvalue) as a formal central variable.
    Energy,
    /// Eigenvalue variable of the number operator K̂.
    Ladder,
    /// Representation size n.
    Level,
    /// Shift constant u of the deformed oscillator.
    Shift,
}

impl Symbol {
    pub fn gamma(j: usize) -> Symbol {
        assert!((1..=8).contains(&j), "gamma index {j} out of range");
        Symbol::Gamma(j as u8)
    }

    pub fn slot(self) -> usize {
        match self {
            Symbol::Gamma(j) => j as usize - 1,
            Symbol::Beta => 8,
            Symbol::Alpha => 9,
            Symbol::Mu => 10,
            Symbol::Nu => 11,
            Symbol::Energy => 12,
            Symbol::Ladder => 13,
            Symbol::Level => 14,
            Symbol::Shift => 15,
        }
    }

    pub fn from_slot(slot: usize) -> Symbol {
        match slot {
            0..=7 => Symbol::Gamma(slot as u8 + 1),
            8 => Symbol::Beta,
            9 => Symbol::Alpha,
            10 => Symbol::Mu,
            11 => Symbol::Nu,
            12 => Symbol::Energy,
            13 => Symbol::Ladder,
            14 => Symbol::Level,
            15 => Symbol::Shift,
            _ => panic!("parameter slot {slot} out of range"),
        }
    }

    pub fn name(self) -> String {
        match self {
            Symbol::Gamma(j) => format!("g{j}"),
            Symbol::Beta => "beta".into(),
            Symbol::Alpha => "alpha".into(),
            Symbol::Mu => "mu".into(),
            Symbol::Nu => "nu".into(),
            Symbol::Energy => "H".into(),
            Symbol::Ladder => "k".into(),
            Symbol::Level => "n".into(),
            Symbol::Shift => "u".into(),
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Some(match name {
            "beta" => Symbol::Beta,
            "alpha" => Symbol::Alpha,
            "mu" => Symbol::Mu,
            "nu" => Symbol::Nu,
            "H" | "E" => Symbol::Energy,
            "k" => Symbol::Ladder,
            "n" => Symbol::Level,
            "u" => Symbol::Shift,
            _ => {
                let j: u8 = name.strip_prefix('g')?.parse().ok()?;
                if !(1..=8).contains(&j) {
                    return None;
                }
                Symbol::Gamma(j)
            }
        })
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Dense exponent vector over all parameter symbols.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared slot by slot with γ1 most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ParamMonomial([u8; PARAM_SLOTS]);

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial([0; PARAM_SLOTS])
    }

    pub fn var(sym: Symbol, exp: u8) -> Self {
        let mut e = [0; PARAM_SLOTS];
        e[sym.slot()] = exp;
        ParamMonomial(e)
    }

    pub fn exponent(&self, sym: Symbol) -> u8 {
        self.0[sym.slot()]
    }

    pub fn with_exponent(mut self, sym: Symbol, exp: u8) -> Self {
        self.0[sym.slot()] = exp;
        self
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = [0u8; PARAM_SLOTS];
        for (k, slot) in e.iter_mut().enumerate() {
            *slot = self.0[k]
                .checked_add(other.0[k])
                .expect("parameter exponent overflow");
        }
        ParamMonomial(e)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (Symbol, u8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| (Symbol::from_slot(k), e))
    }

    /// Factor strings such as `g1^2`, `H`, in slot order.
    pub fn factors(&self) -> Vec<String> {
        self.symbols()
            .map(|(s, e)| {
                if e == 1 {
                    s.name()
                } else {
                    format!("{}^{e}", s.name())
                }
            })
            .collect()
    }
}

impl Ord for ParamMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ParamMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs = self.factors();
        if fs.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", fs.join("*"))
        }
    }
}

/// Sparse polynomial over [`GaussianRational`] in the parameter symbols.
/// No zero coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPolynomial {
    terms: BTreeMap<ParamMonomial, GaussianRational>,
}

impl ParamPolynomial {
    pub fn zero() -> Self {
        ParamPolynomial::default()
    }

    pub fn one() -> Self {
        ParamPolynomial::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        ParamPolynomial::monomial(ParamMonomial::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        ParamPolynomial::constant(GaussianRational::from_integer(n))
    }

    pub fn symbol(sym: Symbol) -> Self {
        ParamPolynomial::monomial(ParamMonomial::var(sym, 1), GaussianRational::one())
    }

    pub fn gamma(j: usize) -> Self {
        ParamPolynomial::symbol(Symbol::gamma(j))
    }

    pub fn monomial(m: ParamMonomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPolynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ParamMonomial, GaussianRational)>) -> Self {
        let mut p = ParamPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ParamMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ParamMonomial::is_one)
    }

    /// The value if the polynomial has no symbols (zero included).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.terms
            .get(&ParamMonomial::one())
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Whether every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    pub fn add_term(&mut self, m: ParamMonomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        if s.is_zero() {
            return ParamPolynomial::zero();
        }
        ParamPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ParamPolynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_in(&self, sym: Symbol) -> Degree {
        self.terms
            .keys()
            .map(|m| m.exponent(sym) as u32)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.symbols().map(|(s, _)| s).collect::<Vec<_>>())
            .collect()
    }

    /// Coefficient of `sym^power`, with `sym` removed from the result.
    pub fn coefficient_of(&self, sym: Symbol, power: u8) -> Self {
        ParamPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(sym) == power)
                .map(|(m, c)| (m.with_exponent(sym, 0), c.clone()))
                .collect(),
        }
    }

    /// Groups terms by their exponents in `keep`; each group's value is the
    /// polynomial in the remaining symbols.
    pub fn split_by(&self, keep: &[Symbol]) -> BTreeMap<ParamMonomial, ParamPolynomial> {
        let mut out: BTreeMap<ParamMonomial, ParamPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut key = ParamMonomial::one();
            let mut rest = *m;
            for &s in keep {
                key = key.with_exponent(s, m.exponent(s));
                rest = rest.with_exponent(s, 0);
            }
            out.entry(key).or_default().add_term(rest, c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Replaces `sym` by `value` everywhere.
    pub fn substitute(&self, sym: Symbol, value: &ParamPolynomial) -> Self {
        let mut powers: Vec<ParamPolynomial> = vec![ParamPolynomial::one()];
        let mut out = ParamPolynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(sym) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = ParamPolynomial::monomial(m.with_exponent(sym, 0), c.clone());
            out = &out + &(&rest * &powers[e]);
        }
        out
    }

    /// Substitutes every symbol that has a value in `params`, leaving the
    /// others symbolic.
    pub fn partial_evaluate(&self, params: &ParamAssignment) -> Self {
        let mut out = ParamPolynomial::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = *m;
            for (s, e) in m.symbols() {
                if let Some(v) = params.get(&s) {
                    coef = &coef * &v.pow(e as u32);
                    rest = rest.with_exponent(s, 0);
                }
            }
            out.add_term(rest, &coef);
        }
        out
    }

    pub fn evaluate(&self, params: &ParamAssignment) -> Result<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m.symbols() {
                let v = params
                    .get(&s)
                    .ok_or_else(|| Error::MissingVariable(s.name()))?;
                t = &t * &v.pow(e as u32);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Terms in canonical display order (descending monomial order).
    pub fn display_terms(&self) -> impl Iterator<Item = (&ParamMonomial, &GaussianRational)> {
        self.terms.iter().rev()
    }
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .display_terms()
            .map(|(m, c)| (c.clone(), m.factors()));
        f.write_str(&text::format_terms(terms))
    }
}

impl fmt::Debug for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a ParamPolynomial> for &'a ParamPolynomial {
    type Output = ParamPolynomial;
    fn add(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a ParamPolynomial> for &'a ParamPolynomial {
    type Output = ParamPolynomial;
    fn sub(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a ParamPolynomial> for &'a ParamPolynomial {
    type Output = ParamPolynomial;
    fn mul(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = ParamPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Add for ParamPolynomial {
    type Output = ParamPolynomial;
    fn add(self, rhs: ParamPolynomial) -> ParamPolynomial {
        &self + &rhs
    }
}

impl Sub for ParamPolynomial {
    type Output = ParamPolynomial;
    fn sub(self, rhs: ParamPolynomial) -> ParamPolynomial {
        &self - &rhs
    }
}

impl Mul for ParamPolynomial {
    type Output = ParamPolynomial;
    fn mul(self, rhs: ParamPolynomial) -> ParamPolynomial {
        &self * &rhs
    }
}

impl Neg for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn neg(self) -> ParamPolynomial {
        ParamPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for ParamPolynomial {
    type Output = ParamPolynomial;
    fn neg(self) -> ParamPolynomial {
        -&self
    }
}

impl From<GaussianRational> for ParamPolynomial {
    fn from(c: GaussianRational) -> Self {
        ParamPolynomial::constant(c)
    }
}

impl Zero for ParamPolynomial {
    fn zero() -> Self {
        ParamPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamPolynomial {
    fn one() -> Self {
        ParamPolynomial::one()
    }
}

impl Coefficient for ParamPolynomial {
    fn from_scalar(s: GaussianRational) -> Self {
        ParamPolynomial::constant(s)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &GaussianRational) -> Self {
        ParamPolynomial::scale(self, s)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn expanded_terms(&self) -> Vec<(GaussianRational, ParamMonomial)> {
        self.display_terms().map(|(m, c)| (c.clone(), *m)).collect()
    }
    fn evaluate(&self, params: &ParamAssignment) -> Result<GaussianRational> {
        ParamPolynomial::evaluate(self, params)
    }
    fn to_param(&self) -> ParamPolynomial {
        self.clone()
    }
    fn from_symbol(sym: Symbol) -> Option<Self> {
        Some(ParamPolynomial::symbol(sym))
    }
    fn as_scalar(&self) -> Option<GaussianRational> {
        self.as_constant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(j: usize) -> ParamPolynomial {
        ParamPolynomial::gamma(j)
    }

    #[test]
    fn display_order_and_format() {
        let half = GaussianRational::from_ratio(1, 2);
        let p = &(&g(1) * &g(1)).scale(&half) + &g(2);
        assert_eq!(p.to_string(), "(1/2)*g1^2 + g2");
        let q = &g(3) - &ParamPolynomial::integer(2);
        assert_eq!(q.to_string(), "g3 - 2");
        assert_eq!(ParamPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn substitution_and_evaluation() {
        // (g1 + g2)^2 with g1 -> 2*beta
        let p = (&g(1) + &g(2)).pow(2);
        let beta2 = ParamPolynomial::symbol(Symbol::Beta).scale(&GaussianRational::from_integer(2));
        let s = p.substitute(Symbol::gamma(1), &beta2);
        let mut at = ParamAssignment::new();
        at.insert(Symbol::Beta, GaussianRational::from_integer(3));
        at.insert(Symbol::gamma(2), GaussianRational::from_integer(-1));
        assert_eq!(s.evaluate(&at).unwrap(), GaussianRational::from_integer(25));
        at.remove(&Symbol::Beta);
        assert!(matches!(s.evaluate(&at), Err(Error::MissingVariable(_))));
    }

    #[test]
    fn split_by_groups() {
        let n = ParamPolynomial::symbol(Symbol::Level);
        let p = &(&g(1) * &n) + &(&g(1) + &g(2));
        let groups = p.split_by(&[Symbol::gamma(1), Symbol::gamma(2)]);
        assert_eq!(groups.len(), 2);
        assert_eq!(
            groups[&ParamMonomial::var(Symbol::gamma(1), 1)],
            &n + &ParamPolynomial::one()
        );
    }

    #[test]
    fn symbol_names_roundtrip() {
        for slot in 0..PARAM_SLOTS {
            let s = Symbol::from_slot(slot);
            assert_eq!(Symbol::from_name(&s.name()), Some(s));
        }
        assert_eq!(Symbol::from_name("g9"), None);
    }
}

impl text::TextAlgebra for ParamPolynomial {
    fn from_scalar(s: GaussianRational) -> Self {
        ParamPolynomial::constant(s)
    }
    fn variable(name: &str) -> Option<Self> {
        Symbol::from_name(name).map(ParamPolynomial::symbol)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn as_scalar(&self) -> Option<GaussianRational> {
        self.as_constant()
    }
}

impl std::str::FromStr for ParamPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        text::parse(s)
    }
}
