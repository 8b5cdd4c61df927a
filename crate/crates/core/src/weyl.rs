//! Operator polynomials in the Weyl algebra generated by `Q1, Q2, P1, P2`
//! with `[Q_j, P_k] = i δ_jk`.
//!
//! Every operator is stored in normal order, all positions to the left of
//! all momenta, as a map from `q1^a q2^b p1^c p2^d` to its coefficient. The
//! product of two normal-ordered monomials uses the closed reordering formula
//!
//! ```text
//! p^b q^c = Σ_k k!·C(b,k)·C(c,k)·(−i)^k q^(c−k) p^(b−k)
//! ```
//!
//! applied to each index separately. [`normal_order_word`] is an independent
//! route that rewrites a raw word one transposition at a time.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::param::{ParamPolynomial, Symbol};
use crate::phase::{PhaseMonomial, PhasePoly, PhaseVar};
use crate::ring::{Coefficient, Degree, ParamAssignment};
use crate::scalar::GaussianRational;
use crate::text::{self, TextAlgebra};

/// Display names of the generators.
pub const OPERATOR_NAMES: [&str; 4] = ["Q1", "Q2", "P1", "P2"];

/// A normal-ordered operator polynomial over the coefficient ring `C`.
#[derive(Clone, PartialEq)]
pub struct OperatorPoly<C: Coefficient> {
    inner: PhasePoly<C>,
}

/// Operators with symbolic parameter coefficients.
pub type OperatorPolynomial = OperatorPoly<ParamPolynomial>;
/// Operators with numeric coefficients.
pub type NumericOperatorPolynomial = OperatorPoly<GaussianRational>;

impl<C: Coefficient> Default for OperatorPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

/// `k!·C(b,k)·C(c,k)·(−i)^k` for `k = 0..=min(b, c)`.
fn reorder_weights(b: u16, c: u16) -> Vec<(u16, GaussianRational)> {
    let mut out = Vec::with_capacity(b.min(c) as usize + 1);
    // w_k = k!·C(b,k)·C(c,k) satisfies w_{k+1} = w_k·(b−k)(c−k)/(k+1).
    let mut w: i64 = 1;
    for k in 0..=b.min(c) {
        out.push((k, GaussianRational::from_integer(w) * GaussianRational::i_pow(-(k as i64))));
        let kk = k as i64;
        w = w * (b as i64 - kk) * (c as i64 - kk) / (kk + 1);
    }
    out
}

impl<C: Coefficient> OperatorPoly<C> {
    pub fn zero() -> Self {
        OperatorPoly {
            inner: PhasePoly::zero(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        OperatorPoly {
            inner: PhasePoly::constant(c),
        }
    }

    pub fn integer(n: i64) -> Self {
        OperatorPoly {
            inner: PhasePoly::integer(n),
        }
    }

    pub fn var(v: PhaseVar) -> Self {
        OperatorPoly {
            inner: PhasePoly::var(v),
        }
    }

    /// The normal-ordered monomial `q1^a q2^b p1^c p2^d` times `c`.
    pub fn monomial(m: PhaseMonomial, c: C) -> Self {
        OperatorPoly {
            inner: PhasePoly::monomial(m, c),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PhaseMonomial, C)>) -> Self {
        OperatorPoly {
            inner: PhasePoly::from_terms(terms),
        }
    }

    /// Reads a commutative polynomial as the operator with the same
    /// normal-ordered monomials.
    pub fn from_normal_ordered(p: &PhasePoly<C>) -> Self {
        OperatorPoly { inner: p.clone() }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PhaseMonomial, &C)> {
        self.inner.terms()
    }

    pub fn coefficient(&self, m: &PhaseMonomial) -> Option<&C> {
        self.inner.coefficient(m)
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn add_term(&mut self, m: PhaseMonomial, c: &C) {
        self.inner.add_term(m, c);
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        OperatorPoly {
            inner: self.inner.scale(s),
        }
    }

    pub fn scale_by(&self, c: &C) -> Self {
        OperatorPoly {
            inner: self.inner.scale_by(c),
        }
    }

    pub fn degree(&self) -> Degree {
        self.inner.degree()
    }

    /// Product in the Weyl algebra.
    pub fn op_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in self.terms() {
            let [a1, a2, b1, b2] = m1.exponents();
            for (m2, c2) in other.terms() {
                let [c1e, c2e, d1, d2] = m2.exponents();
                let prod = c1.mul_ref(c2);
                let w1 = reorder_weights(b1, c1e);
                let w2 = reorder_weights(b2, c2e);
                for (k1, s1) in &w1 {
                    for (k2, s2) in &w2 {
                        let m = PhaseMonomial::new(
                            a1 + c1e - k1,
                            a2 + c2e - k2,
                            b1 - k1 + d1,
                            b2 - k2 + d2,
                        );
                        let s = s1 * s2;
                        out.add_term(m, &prod.scale(&s));
                    }
                }
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.op_mul(other) - &other.op_mul(self)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.op_mul(self);
        }
        acc
    }

    /// Reads every normal-ordered monomial as a commutative one.
    pub fn classical_limit(&self) -> PhasePoly<C> {
        self.inner.clone()
    }

    /// Applies Q1↔Q2, P1↔P2, an automorphism of the algebra.
    pub fn swap_indices(&self) -> Self {
        OperatorPoly {
            inner: self.inner.swap_indices(),
        }
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> OperatorPoly<D> {
        OperatorPoly {
            inner: self.inner.map_coefficients(f),
        }
    }

    pub fn specialize(&self, params: &ParamAssignment) -> Result<NumericOperatorPolynomial> {
        Ok(OperatorPoly {
            inner: self.inner.specialize(params)?,
        })
    }

    pub fn to_symbolic(&self) -> OperatorPolynomial {
        self.map_coefficients(C::to_param)
    }
}

impl OperatorPolynomial {
    pub fn partial_evaluate(&self, params: &ParamAssignment) -> OperatorPolynomial {
        self.map_coefficients(|c| c.partial_evaluate(params))
    }

    pub fn substitute_param(&self, sym: Symbol, value: &ParamPolynomial) -> OperatorPolynomial {
        self.map_coefficients(|c| c.substitute(sym, value))
    }
}

impl<C: Coefficient> fmt::Display for OperatorPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.inner.text_with(OPERATOR_NAMES))
    }
}

impl<C: Coefficient> fmt::Debug for OperatorPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorPoly({self})")
    }
}

impl<'a, C: Coefficient> Add<&'a OperatorPoly<C>> for &'a OperatorPoly<C> {
    type Output = OperatorPoly<C>;
    fn add(self, rhs: &'a OperatorPoly<C>) -> OperatorPoly<C> {
        OperatorPoly {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl<'a, C: Coefficient> Sub<&'a OperatorPoly<C>> for &'a OperatorPoly<C> {
    type Output = OperatorPoly<C>;
    fn sub(self, rhs: &'a OperatorPoly<C>) -> OperatorPoly<C> {
        OperatorPoly {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl<'a, C: Coefficient> Mul<&'a OperatorPoly<C>> for &'a OperatorPoly<C> {
    type Output = OperatorPoly<C>;
    fn mul(self, rhs: &'a OperatorPoly<C>) -> OperatorPoly<C> {
        self.op_mul(rhs)
    }
}

impl<C: Coefficient> Add for OperatorPoly<C> {
    type Output = OperatorPoly<C>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for OperatorPoly<C> {
    type Output = OperatorPoly<C>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for OperatorPoly<C> {
    type Output = OperatorPoly<C>;
    fn mul(self, rhs: Self) -> Self {
        self.op_mul(&rhs)
    }
}

impl<C: Coefficient> Neg for &OperatorPoly<C> {
    type Output = OperatorPoly<C>;
    fn neg(self) -> OperatorPoly<C> {
        OperatorPoly { inner: -&self.inner }
    }
}

impl<C: Coefficient> Neg for OperatorPoly<C> {
    type Output = OperatorPoly<C>;
    fn neg(self) -> OperatorPoly<C> {
        -&self
    }
}

impl<C: Coefficient> TextAlgebra for OperatorPoly<C> {
    fn from_scalar(s: GaussianRational) -> Self {
        Self::constant(C::from_scalar(s))
    }
    fn variable(name: &str) -> Option<Self> {
        if let Some(k) = OPERATOR_NAMES.iter().position(|n| *n == name) {
            return Some(Self::var(PhaseVar::ALL[k]));
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
        self.op_mul(other)
    }
    fn as_scalar(&self) -> Option<GaussianRational> {
        self.inner.as_scalar()
    }
}

impl<C: Coefficient> std::str::FromStr for OperatorPoly<C> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

/// Shorthand constructors for symbolic operators.
pub mod ops {
    use super::*;

    pub fn q1() -> OperatorPolynomial {
        OperatorPolynomial::var(PhaseVar::Q1)
    }
    pub fn q2() -> OperatorPolynomial {
        OperatorPolynomial::var(PhaseVar::Q2)
    }
    pub fn p1() -> OperatorPolynomial {
        OperatorPolynomial::var(PhaseVar::P1)
    }
    pub fn p2() -> OperatorPolynomial {
        OperatorPolynomial::var(PhaseVar::P2)
    }
    pub fn gamma(j: usize) -> OperatorPolynomial {
        OperatorPolynomial::constant(ParamPolynomial::gamma(j))
    }
}

/// Which inversion the word rewriter resolves next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// A raw product of generators, read left to right.
pub type Word = Vec<PhaseVar>;

/// Normal-orders `coefficient · word` by repeated application of
/// `P_k Q_k → Q_k P_k − i`, with all other adjacent pairs commuting. The
/// letter order is `Q1 < Q2 < P1 < P2`; every step removes one inversion.
pub fn normal_order_word(
    word: &[PhaseVar],
    coefficient: &GaussianRational,
    strategy: RewriteStrategy,
) -> NumericOperatorPolynomial {
    let mut rng = match strategy {
        RewriteStrategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut out = NumericOperatorPolynomial::zero();
    let mut stack: Vec<(Word, GaussianRational)> = vec![(word.to_vec(), coefficient.clone())];
    while let Some((w, c)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        let inversions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&j| w[j].index() > w[j + 1].index())
            .collect();
        let Some(&first) = inversions.first() else {
            let mut e = [0u16; 4];
            for v in &w {
                e[v.index()] += 1;
            }
            out.add_term(PhaseMonomial::new(e[0], e[1], e[2], e[3]), &c);
            continue;
        };
        let j = match (&strategy, rng.as_mut()) {
            (RewriteStrategy::Rightmost, _) => *inversions.last().unwrap(),
            (RewriteStrategy::Random(_), Some(r)) => inversions[r.gen_range(0..inversions.len())],
            _ => first,
        };
        let (a, b) = (w[j], w[j + 1]);
        let mut swapped = w.clone();
        swapped.swap(j, j + 1);
        // P_k Q_k = Q_k P_k − i
        if a.index() == b.index() + 2 {
            let mut shorter = w.clone();
            shorter.drain(j..j + 2);
            stack.push((shorter, &c * &(-GaussianRational::i())));
        }
        stack.push((swapped, c));
    }
    out
}

/// The word's product computed with [`OperatorPoly::op_mul`].
pub fn word_product(word: &[PhaseVar]) -> NumericOperatorPolynomial {
    word.iter().fold(NumericOperatorPolynomial::one(), |acc, v| {
        acc.op_mul(&NumericOperatorPolynomial::var(*v))
    })
}

/// A uniformly random word of length `0..=max_len`.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| PhaseVar::ALL[rng.gen_range(0..4)]).collect()
}

#[cfg(test)]
mod tests {
    use super::ops::*;
    use super::*;

    fn op(s: &str) -> OperatorPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn single_ccr() {
        assert_eq!(p1().op_mul(&q1()), op("Q1*P1 - i"));
        assert_eq!(q1().op_mul(&p2()), op("Q1*P2"));
        assert_eq!(p2().op_mul(&q1()), op("Q1*P2"));
        assert_eq!(q1().commutator(&p1()), op("i"));
        assert_eq!(q2().commutator(&p2()), op("i"));
        assert!(q1().commutator(&p2()).is_zero());
    }

    #[test]
    fn parser_multiplies_in_order() {
        assert_eq!(op("P1*Q1"), op("Q1*P1 - i"));
        assert_eq!(op("P1^2*Q1^2").to_string(), "Q1^2*P1^2 - (4*i)*Q1*P1 - 2");
    }

    #[test]
    fn dilation_square() {
        let d = &q1().op_mul(&p1()) + &q2().op_mul(&p2());
        let d2 = d.pow(2);
        assert_eq!(
            d2,
            op("Q1^2*P1^2 + 2*Q1*Q2*P1*P2 + Q2^2*P2^2 - i*Q1*P1 - i*Q2*P2")
        );
        // classical limit keeps the leading part
        let lead: PhasePoly<ParamPolynomial> = "(q1*p1+q2*p2)^2".parse().unwrap();
        let diff = &d2.classical_limit() - &lead;
        assert!(diff.degree() < Degree::Finite(4));
    }

    #[test]
    fn display_round_trip() {
        let a = op("(1/2)*g1*P2*Q2 - 3*i*Q1^2 + (1+2*i)*g2*P1");
        let back: OperatorPolynomial = a.to_string().parse().unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn associativity_small() {
        let a = op("P1*Q1 + Q2^2*P2");
        let b = op("P1^2 + g1*Q1*P2");
        let c = op("Q1^3 - i*P2*Q2");
        assert_eq!(a.op_mul(&b).op_mul(&c), a.op_mul(&b.op_mul(&c)));
    }

    #[test]
    fn rewriter_agrees_with_product() {
        let w = vec![PhaseVar::P1, PhaseVar::P1, PhaseVar::Q1, PhaseVar::Q2, PhaseVar::P2, PhaseVar::Q2, PhaseVar::Q1];
        let one = GaussianRational::from_integer(1);
        let l = normal_order_word(&w, &one, RewriteStrategy::Leftmost);
        let r = normal_order_word(&w, &one, RewriteStrategy::Rightmost);
        let x = normal_order_word(&w, &one, RewriteStrategy::Random(3));
        assert_eq!(l, r);
        assert_eq!(l, x);
        assert_eq!(l, word_product(&w));
    }

    #[test]
    fn swap_is_automorphism() {
        let a = op("P1*Q1*Q2 + g1*P2");
        let b = op("Q1*P2^2 - P1");
        assert_eq!(a.op_mul(&b).swap_indices(), a.swap_indices().op_mul(&b.swap_indices()));
    }

    #[test]
    fn specialize_matches_numeric() {
        let a = op("g1*P1*Q1 + g2");
        let params: ParamAssignment = [
            (Symbol::gamma(1), GaussianRational::from_integer(2)),
            (Symbol::gamma(2), GaussianRational::from_integer(5)),
        ]
        .into_iter()
        .collect();
        let n: NumericOperatorPolynomial = "2*Q1*P1 - 2*i + 5".parse().unwrap();
        assert_eq!(a.specialize(&params).unwrap(), n);
    }
}
