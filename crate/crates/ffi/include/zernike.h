#ifndef ZERNIKE_H
#define ZERNIKE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum ZkStatus {
  ZK_STATUS_OK = 0,
  ZK_STATUS_NULL_POINTER = 1,
  ZK_STATUS_INVALID_UTF8 = 2,
  ZK_STATUS_INVALID_ARGUMENT = 3,
  ZK_STATUS_PARSE = 4,
  ZK_STATUS_UNSUPPORTED = 5,
  /**
   * Computation finished but an identity did not hold.
   */
  ZK_STATUS_IDENTITY_FAILURE = 6,
  ZK_STATUS_NUMERICAL = 7,
  ZK_STATUS_BUFFER_TOO_SMALL = 8,
  ZK_STATUS_INTERNAL = 9,
  ZK_STATUS_PANIC = 10,
} ZkStatus;

/**
 * A polynomial in `(q1, q2, p1, p2)` with coefficients in the parameters.
 */
typedef struct ZkPolynomial ZkPolynomial;

/**
 * A Hamiltonian `H_N`, with symbolic or numeric parameters.
 */
typedef struct ZkSystem ZkSystem;

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library from the same thread.
 */
const char *zk_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void zk_string_free(char *s);

/**
 * `H_N` with symbolic parameters `g1..gN`.
 *
 * # Safety
 * `out_system` must be a valid pointer.
 */
enum ZkStatus zk_system_new_symbolic(size_t order, struct ZkSystem **out_system);

/**
 * `H_N` with numeric parameters given as a comma-separated list of exact
 * values such as `"1/2, -3*i, 2+i"`; `N` is the list length.
 *
 * # Safety
 * `gamma` must be a nul-terminated string and `out_system` valid.
 */
enum ZkStatus zk_system_new_numeric(const char *gamma, struct ZkSystem **out_system);

/**
 * # Safety
 * `system` must come from this library and not have been freed.
 */
void zk_system_free(struct ZkSystem *system);

/**
 * The order `N` of `system`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum ZkStatus zk_system_order(const struct ZkSystem *system, size_t *out_order);

/**
 * `H_N` as a polynomial, with `g1..gN` left symbolic.
 *
 * # Safety
 * Pointers must be valid.
 */
enum ZkStatus zk_hamiltonian(const struct ZkSystem *system, struct ZkPolynomial **out_poly);

/**
 * `C = q1 p2 − q2 p1`.
 *
 * # Safety
 * `out_poly` must be valid.
 */
enum ZkStatus zk_angular_momentum(struct ZkPolynomial **out_poly);

/**
 * The integral `I_N` of `system`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum ZkStatus zk_integral(const struct ZkSystem *system, struct ZkPolynomial **out_poly);

/**
 * Parses the text form, e.g. `"p2^2 + g1*q2*p2"`.
 *
 * # Safety
 * `src` must be a nul-terminated string and `out_poly` valid.
 */
enum ZkStatus zk_polynomial_parse(const char *src, struct ZkPolynomial **out_poly);

/**
 * # Safety
 * `poly` must come from this library and not have been freed.
 */
void zk_polynomial_free(struct ZkPolynomial *poly);

/**
 * `{a, b}`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum ZkStatus zk_poisson_bracket(const struct ZkPolynomial *a,
                                 const struct ZkPolynomial *b,
                                 struct ZkPolynomial **out_poly);

/**
 * Whether `poly` is identically zero.
 *
 * # Safety
 * Pointers must be valid.
 */
enum ZkStatus zk_polynomial_is_zero(const struct ZkPolynomial *poly, bool *out_is_zero);

/**
 * Canonical text of `poly`; free it with [`zk_string_free`].
 *
 * # Safety
 * Pointers must be valid.
 */
enum ZkStatus zk_polynomial_to_string(const struct ZkPolynomial *poly, char **out_text);

/**
 * Evaluates `poly` at `point = (q1, q2, p1, p2)` with the parameter values
 * of the numeric `system`. Doubles are converted exactly; the result is
 * rounded to `(re, im)`.
 *
 * # Safety
 * `point` must hold four doubles; other pointers must be valid.
 */
enum ZkStatus zk_polynomial_evaluate(const struct ZkPolynomial *poly,
                                     const struct ZkSystem *system,
                                     const double *point,
                                     double *out_re,
                                     double *out_im);

/**
 * Runs the classical identity suite. `out_passed` is set even when some
 * identity fails; the status is then [`ZkStatus::IdentityFailure`].
 *
 * # Safety
 * Pointers must be valid.
 */
enum ZkStatus zk_verify_classical(const struct ZkSystem *system, uint64_t seed, bool *out_passed);

/**
 * Runs the quantum identity suite (`N ≤ 4`).
 *
 * # Safety
 * Pointers must be valid.
 */
enum ZkStatus zk_verify_quantum(const struct ZkSystem *system, bool *out_passed);

/**
 * Energy levels `E(0..=n_max)` of both spectrum families of order `order`
 * at real parameters `params = (beta, alpha, mu, nu)`. Entries past `order`
 * must be zero. `out_type_i` and `out_type_ii` each need `len ≥ n_max + 1`.
 *
 * # Safety
 * `params` must hold four doubles and the output buffers `len` doubles.
 */
enum ZkStatus zk_spectrum_levels(size_t order,
                                 const double *params,
                                 uint32_t n_max,
                                 double *out_type_i,
                                 double *out_type_ii,
                                 size_t len);

/**
 * The curved oscillator energy at `(rho, p_rho)` with angular momentum
 * `p_phi`.
 *
 * # Safety
 * `out_energy` must be valid.
 */
enum ZkStatus zk_curved_oscillator_hamiltonian(double kappa,
                                               double omega,
                                               double p_phi,
                                               double rho,
                                               double p_rho,
                                               double *out_energy);

#endif  /* ZERNIKE_H */
