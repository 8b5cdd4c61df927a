//! Commutative polynomials in the canonical coordinates (q1, q2, p1, p2)
//! with the Poisson bracket `{q_i, p_j} = δ_ij`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::param::{ParamPolynomial, Symbol};
use crate::ring::{Coefficient, Degree, ParamAssignment};
use crate::scalar::GaussianRational;
use crate::text::{self, TextAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhaseVar {
    Q1,
    Q2,
    P1,
    P2,
}

impl PhaseVar {
    pub const ALL: [PhaseVar; 4] = [PhaseVar::Q1, PhaseVar::Q2, PhaseVar::P1, PhaseVar::P2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["q1", "q2", "p1", "p2"][self.index()]
    }

    pub fn from_name(name: &str) -> Option<PhaseVar> {
        PhaseVar::ALL.into_iter().find(|v| v.name() == name)
    }

    /// The 1↔2 relabelling.
    pub fn swapped(self) -> PhaseVar {
        match self {
            PhaseVar::Q1 => PhaseVar::Q2,
            PhaseVar::Q2 => PhaseVar::Q1,
            PhaseVar::P1 => PhaseVar::P2,
            PhaseVar::P2 => PhaseVar::P1,
        }
    }
}

/// Exponents of `q1^a q2^b p1^c p2^d`.
///
/// Graded lexicographic order with q1 < q2 < p1 < p2: total degree first,
/// then the exponent of p2, p1, q2, q1 in turn.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PhaseMonomial(pub(crate) [u16; 4]);

impl PhaseMonomial {
    pub fn one() -> Self {
        PhaseMonomial([0; 4])
    }

    pub fn new(q1: u16, q2: u16, p1: u16, p2: u16) -> Self {
        PhaseMonomial([q1, q2, p1, p2])
    }

    pub fn var(v: PhaseVar) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        PhaseMonomial(e)
    }

    pub fn exponents(&self) -> [u16; 4] {
        self.0
    }

    pub fn exponent(&self, v: PhaseVar) -> u16 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        PhaseMonomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
            self.0[3] + other.0[3],
        ])
    }

    pub fn swapped(&self) -> Self {
        PhaseMonomial([self.0[1], self.0[0], self.0[3], self.0[2]])
    }

    pub(crate) fn factors_with(&self, names: [&str; 4]) -> Vec<String> {
        (0..4)
            .filter(|&k| self.0[k] > 0)
            .map(|k| {
                if self.0[k] == 1 {
                    names[k].to_string()
                } else {
                    format!("{}^{}", names[k], self.0[k])
                }
            })
            .collect()
    }
}

impl Ord for PhaseMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let key = |m: &PhaseMonomial| [m.0[3], m.0[2], m.0[1], m.0[0]];
            key(self).cmp(&key(other))
        })
    }
}

impl PartialOrd for PhaseMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PhaseMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs = self.factors_with(["q1", "q2", "p1", "p2"]);
        if fs.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", fs.join("*"))
        }
    }
}

/// A point of phase space, `(q1, q2, p1, p2)`.
pub type PhasePoint = [GaussianRational; 4];

/// Commutative polynomial in (q1, q2, p1, p2) over the coefficient ring `C`.
///
/// Canonical form: the term map never stores a zero coefficient, so two
/// polynomials are equal iff their maps are equal.
#[derive(Clone, PartialEq)]
pub struct PhasePoly<C: Coefficient> {
    terms: BTreeMap<PhaseMonomial, C>,
}

/// Phase-space polynomial with symbolic parameter coefficients.
pub type PhasePolynomial = PhasePoly<ParamPolynomial>;
/// Phase-space polynomial with numeric coefficients.
pub type NumericPhasePolynomial = PhasePoly<GaussianRational>;

impl<C: Coefficient> Default for PhasePoly<C> {
    fn default() -> Self {
        PhasePoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient> PhasePoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(PhaseMonomial::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(C::from_scalar(GaussianRational::from_integer(n)))
    }

    pub fn var(v: PhaseVar) -> Self {
        Self::monomial(PhaseMonomial::var(v), C::one())
    }

    pub fn monomial(m: PhaseMonomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PhaseMonomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PhaseMonomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PhaseMonomial) -> Option<&C> {
        self.terms.get(m)
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

    pub fn add_term(&mut self, m: PhaseMonomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_owned(&mut self, m: PhaseMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.scale(s))))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, k)| (*m, k.mul_ref(c))))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(PhaseMonomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_in(&self, v: PhaseVar) -> Degree {
        self.terms
            .keys()
            .map(|m| m.exponent(v) as u32)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn partial_derivative(&self, v: PhaseVar) -> Self {
        let k = v.index();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[k] -= 1;
            out.add_owned(dm, c.scale(&GaussianRational::from_integer(e as i64)));
        }
        out
    }

    /// `{self, other} = Σ_i ∂self/∂q_i ∂other/∂p_i − ∂self/∂p_i ∂other/∂q_i`.
    pub fn poisson_bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut weight = [0i64; 2];
                for (i, w) in weight.iter_mut().enumerate() {
                    let (q, p) = (i, i + 2);
                    *w = m1.0[q] as i64 * m2.0[p] as i64 - m1.0[p] as i64 * m2.0[q] as i64;
                }
                if weight == [0, 0] {
                    continue;
                }
                let prod = c1.mul_ref(c2);
                for (i, &w) in weight.iter().enumerate() {
                    if w == 0 {
                        continue;
                    }
                    let mut m = m1.mul(m2);
                    m.0[i] -= 1;
                    m.0[i + 2] -= 1;
                    out.add_owned(m, prod.scale(&GaussianRational::from_integer(w)));
                }
            }
        }
        out
    }

    /// Evaluates at a phase point; parameter symbols are looked up in `params`.
    pub fn evaluate(&self, point: &PhasePoint, params: &ParamAssignment) -> Result<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.evaluate(params)?;
            for k in 0..4 {
                if m.0[k] > 0 {
                    t = &t * &point[k].pow(m.0[k] as u32);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Applies q1↔q2, p1↔p2.
    pub fn swap_indices(&self) -> Self {
        PhasePoly {
            terms: self.terms.iter().map(|(m, c)| (m.swapped(), c.clone())).collect(),
        }
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> PhasePoly<D> {
        PhasePoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Evaluates every coefficient, producing the numeric fast-path form.
    pub fn specialize(&self, params: &ParamAssignment) -> Result<NumericPhasePolynomial> {
        let mut out = NumericPhasePolynomial::zero();
        for (m, c) in &self.terms {
            out.add_owned(*m, c.evaluate(params)?);
        }
        Ok(out)
    }

    pub fn to_symbolic(&self) -> PhasePolynomial {
        self.map_coefficients(C::to_param)
    }

    pub(crate) fn text_with(&self, names: [&str; 4]) -> String {
        let terms = self.terms.iter().rev().flat_map(|(m, c)| {
            let phase = m.factors_with(names);
            c.expanded_terms().into_iter().map(move |(s, pm)| {
                let mut fs = pm.factors();
                fs.extend(phase.iter().cloned());
                (s, fs)
            })
        });
        text::format_terms(terms)
    }
}

impl PhasePolynomial {
    /// Substitutes the given parameter values, leaving other symbols intact.
    pub fn partial_evaluate(&self, params: &ParamAssignment) -> PhasePolynomial {
        self.map_coefficients(|c| c.partial_evaluate(params))
    }

    pub fn substitute_param(&self, sym: Symbol, value: &ParamPolynomial) -> PhasePolynomial {
        self.map_coefficients(|c| c.substitute(sym, value))
    }

    /// Replaces the formal symbol `sym` in the coefficients by the phase-space
    /// polynomial `value`.
    pub fn substitute_symbol_with(&self, sym: Symbol, value: &PhasePolynomial) -> PhasePolynomial {
        let mut out = PhasePolynomial::zero();
        let mut powers = vec![PhasePolynomial::one()];
        for (m, c) in &self.terms {
            let base = PhasePolynomial::monomial(*m, ParamPolynomial::one());
            let top = match c.degree_in(sym) {
                Degree::Finite(d) => d as usize,
                Degree::NegInfinity => continue,
            };
            while powers.len() <= top {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            for (e, pw) in powers.iter().enumerate().take(top + 1) {
                let coef = c.coefficient_of(sym, e as u8);
                if coef.is_zero() {
                    continue;
                }
                out = &out + &(&base * pw).scale_by(&coef);
            }
        }
        out
    }
}

impl<C: Coefficient> fmt::Display for PhasePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text_with(["q1", "q2", "p1", "p2"]))
    }
}

impl<C: Coefficient> fmt::Debug for PhasePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a, C: Coefficient> Add<&'a PhasePoly<C>> for &'a PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn add(self, rhs: &PhasePoly<C>) -> PhasePoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a, C: Coefficient> Sub<&'a PhasePoly<C>> for &'a PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn sub(self, rhs: &PhasePoly<C>) -> PhasePoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_owned(*m, c.negated());
        }
        out
    }
}

impl<'a, C: Coefficient> Mul<&'a PhasePoly<C>> for &'a PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn mul(self, rhs: &PhasePoly<C>) -> PhasePoly<C> {
        let mut out = PhasePoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_owned(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }
}

impl<C: Coefficient> Add for PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn add(self, rhs: PhasePoly<C>) -> PhasePoly<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn sub(self, rhs: PhasePoly<C>) -> PhasePoly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn mul(self, rhs: PhasePoly<C>) -> PhasePoly<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> Neg for &PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn neg(self) -> PhasePoly<C> {
        PhasePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.negated())).collect(),
        }
    }
}

impl<C: Coefficient> Neg for PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn neg(self) -> PhasePoly<C> {
        -&self
    }
}

impl<C: Coefficient> TextAlgebra for PhasePoly<C> {
    fn from_scalar(s: GaussianRational) -> Self {
        Self::constant(C::from_scalar(s))
    }
    fn variable(name: &str) -> Option<Self> {
        if let Some(v) = PhaseVar::from_name(name) {
            return Some(Self::var(v));
        }
        Symbol::from_name(name)
            .and_then(C::from_symbol)
            .map(Self::constant)
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
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&PhaseMonomial::one()) {
                return c.as_scalar();
            }
        }
        None
    }
}

impl<C: Coefficient> std::str::FromStr for PhasePoly<C> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

/// Shorthand constructors used throughout the crate and its tests.
pub mod vars {
    use super::*;

    pub fn q1() -> PhasePolynomial {
        PhasePolynomial::var(PhaseVar::Q1)
    }
    pub fn q2() -> PhasePolynomial {
        PhasePolynomial::var(PhaseVar::Q2)
    }
    pub fn p1() -> PhasePolynomial {
        PhasePolynomial::var(PhaseVar::P1)
    }
    pub fn p2() -> PhasePolynomial {
        PhasePolynomial::var(PhaseVar::P2)
    }
    pub fn gamma(j: usize) -> PhasePolynomial {
        PhasePolynomial::constant(ParamPolynomial::gamma(j))
    }
}
