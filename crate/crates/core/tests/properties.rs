//! Randomized algebra invariants on 200 seeded instances each.

mod common;

use common::*;

#[test]
fn poisson_antisymmetry() {
    run_property((phase_poly(), phase_poly()), |(a, b)| antisymmetry(a, b)).unwrap();
}

#[test]
fn poisson_leibniz() {
    run_property((phase_poly(), phase_poly(), phase_poly()), |(a, b, c)| leibniz(a, b, c)).unwrap();
}

#[test]
fn poisson_jacobi() {
    run_property((phase_poly(), phase_poly(), phase_poly()), |(a, b, c)| jacobi(a, b, c)).unwrap();
}

#[test]
fn evaluation_is_a_ring_homomorphism() {
    run_property((phase_poly(), phase_poly(), phase_point()), |(a, b, (pt, params))| {
        evaluation_homomorphism(a, b, pt, params)
    })
    .unwrap();
}

#[test]
fn rewriting_is_confluent() {
    run_property(word(), |(w, seed)| confluence(w, *seed)).unwrap();
}

#[test]
fn text_round_trip() {
    run_property(phase_poly(), |a| a.to_string().parse::<zernike_core::PhasePolynomial>().unwrap() == *a).unwrap();
}

#[test]
fn operator_product_is_associative() {
    use zernike_core::weyl::word_product;
    run_property((word(), word(), word()), |((a, _), (b, _), (c, _))| {
        let (a, b, c) = (word_product(a), word_product(b), word_product(c));
        a.op_mul(&b).op_mul(&c) == a.op_mul(&b.op_mul(&c))
    })
    .unwrap();
}
