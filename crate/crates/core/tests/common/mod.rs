#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};
use zernike_core::param::Symbol;
use zernike_core::weyl::{normal_order_word, word_product, RewriteStrategy};
use zernike_core::{GaussianRational, ParamAssignment, ParamPolynomial, PhaseMonomial, PhasePoint, PhasePolynomial, PhaseVar};

pub const PROPERTY_CASES: u32 = 200;
pub const PROPERTY_SEED: [u8; 32] = *b"zernike-property-seed-2026-00001";

pub fn runner() -> TestRunner {
    let config = Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &PROPERTY_SEED))
}

fn ratio() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=5, -3i64..=3).prop_map(|(a, b, c)| &GaussianRational::from_ratio(a, b) + &GaussianRational::from_parts(0, 1, c, 1))
}

/// Small polynomials with coefficients in `Q(i)[γ1, γ2]`.
pub fn phase_poly() -> impl Strategy<Value = PhasePolynomial> {
    prop::collection::vec(((0u16..3, 0u16..3, 0u16..3, 0u16..3), ratio(), 0usize..=2), 0..6).prop_map(|terms| {
        PhasePolynomial::from_terms(terms.into_iter().map(|((a, b, c, d), k, g)| {
            let coef = ParamPolynomial::constant(k);
            let coef = if g == 0 { coef } else { &coef * &ParamPolynomial::gamma(g) };
            (PhaseMonomial::new(a, b, c, d), coef)
        }))
    })
}

pub fn phase_point() -> impl Strategy<Value = (PhasePoint, ParamAssignment)> {
    (ratio(), ratio(), ratio(), ratio(), ratio(), ratio()).prop_map(|(a, b, c, d, g1, g2)| {
        let params: ParamAssignment = [(Symbol::gamma(1), g1), (Symbol::gamma(2), g2)].into_iter().collect();
        ([a, b, c, d], params)
    })
}

pub fn word() -> impl Strategy<Value = (Vec<PhaseVar>, u64)> {
    (prop::collection::vec(prop::sample::select(PhaseVar::ALL.to_vec()), 0..9), any::<u64>())
}

pub fn antisymmetry(a: &PhasePolynomial, b: &PhasePolynomial) -> bool {
    (&a.poisson_bracket(b) + &b.poisson_bracket(a)).is_zero()
}

pub fn leibniz(a: &PhasePolynomial, b: &PhasePolynomial, c: &PhasePolynomial) -> bool {
    let lhs = a.poisson_bracket(&(b * c));
    let rhs = &(&a.poisson_bracket(b) * c) + &(b * &a.poisson_bracket(c));
    (&lhs - &rhs).is_zero()
}

pub fn jacobi(a: &PhasePolynomial, b: &PhasePolynomial, c: &PhasePolynomial) -> bool {
    let s = &(&a.poisson_bracket(&b.poisson_bracket(c)) + &b.poisson_bracket(&c.poisson_bracket(a)))
        + &c.poisson_bracket(&a.poisson_bracket(b));
    s.is_zero()
}

pub fn evaluation_homomorphism(a: &PhasePolynomial, b: &PhasePolynomial, pt: &PhasePoint, params: &ParamAssignment) -> bool {
    let ea = a.evaluate(pt, params).unwrap();
    let eb = b.evaluate(pt, params).unwrap();
    (a * b).evaluate(pt, params).unwrap() == &ea * &eb && (a + b).evaluate(pt, params).unwrap() == &ea + &eb
}

/// Three rewriting orders and the closed reordering formula agree.
pub fn confluence(w: &[PhaseVar], seed: u64) -> bool {
    let c = <GaussianRational as num_traits::One>::one();
    let left = normal_order_word(w, &c, RewriteStrategy::Leftmost);
    left == normal_order_word(w, &c, RewriteStrategy::Rightmost)
        && left == normal_order_word(w, &c, RewriteStrategy::Random(seed))
        && left == word_product(w)
}

/// Runs `check` on 200 seeded instances of `strategy`; `Err` carries the
/// first failing input.
pub fn run_property<S: Strategy>(strategy: S, check: impl Fn(&S::Value) -> bool) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner()
        .run(&strategy, |v| {
            prop_assert!(check(&v), "failing instance {:?}", v);
            Ok(())
        })
        .map_err(|e: TestError<S::Value>| e.to_string())
}
