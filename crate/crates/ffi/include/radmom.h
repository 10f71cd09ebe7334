#ifndef RADMOM_H
#define RADMOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RadmomStatus {
  RADMOM_STATUS_OK = 0,
  RADMOM_STATUS_INVALID_ARGUMENT = 1,
  RADMOM_STATUS_ACCURACY = 2,
  RADMOM_STATUS_DOMAIN = 3,
  RADMOM_STATUS_UNSUPPORTED = 4,
  RADMOM_STATUS_IO = 5,
  RADMOM_STATUS_NULL_POINTER = 6,
  RADMOM_STATUS_PANIC = 7,
} RadmomStatus;

typedef enum RadmomOperatorKind {
  /**
   * Orbital angular momentum L_i.
   */
  RADMOM_OPERATOR_KIND_ANGULAR_MOMENTUM = 0,
  /**
   * Direction cosine x_i / r.
   */
  RADMOM_OPERATOR_KIND_DIRECTION_COSINE = 1,
  /**
   * Geometric momentum r Π_i.
   */
  RADMOM_OPERATOR_KIND_GEOMETRIC_MOMENTUM = 2,
} RadmomOperatorKind;

typedef enum RadmomAxis {
  RADMOM_AXIS_X = 0,
  RADMOM_AXIS_Y = 1,
  RADMOM_AXIS_Z = 2,
} RadmomAxis;

/**
 * A hydrogen bound state with its units.
 */
typedef struct RadmomHydrogen RadmomHydrogen;

/**
 * Matrix of one operator on a truncated spherical-harmonic basis.
 */
typedef struct RadmomOperator RadmomOperator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the message of the last failed call on this thread into `buf`
 * (NUL-terminated, truncated to `len` bytes) and returns the full length
 * of the message, excluding the terminator.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes of writes.
 */
uintptr_t radmom_last_error(char *buf, uintptr_t len);

/**
 * Builds one operator on the basis l ≤ `l_max`, with the smallest exact
 * angular quadrature. ħ = 1.
 *
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum RadmomStatus radmom_operator_build(enum RadmomOperatorKind kind,
                                        enum RadmomAxis axis_id,
                                        uint32_t l_max,
                                        struct RadmomOperator **out);

/**
 * Releases an operator. Null is ignored.
 *
 * # Safety
 * `op` must be null or a handle from this library not yet freed.
 */
void radmom_operator_free(struct RadmomOperator *op);

/**
 * Matrix dimension (l_max + 1)², or 0 for a null handle.
 *
 * # Safety
 * `op` must be null or a live handle.
 */
uintptr_t radmom_operator_dim(const struct RadmomOperator *op);

/**
 * Number of top l-shells whose rows and columns carry truncation error.
 *
 * # Safety
 * `op` must be null or a live handle.
 */
uint32_t radmom_operator_contaminated_shells(const struct RadmomOperator *op);

/**
 * ⟨l' m'| A |l m⟩.
 *
 * # Safety
 * `op` must be a live handle; `re` and `im` valid for one write each.
 */
enum RadmomStatus radmom_operator_element(const struct RadmomOperator *op,
                                          uint32_t l_bra,
                                          int32_t m_bra,
                                          uint32_t l_ket,
                                          int32_t m_ket,
                                          double *re,
                                          double *im);

/**
 * [A, B] as a new handle.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` valid for one pointer write.
 */
enum RadmomStatus radmom_operator_commutator(const struct RadmomOperator *a,
                                             const struct RadmomOperator *b,
                                             struct RadmomOperator **out);

/**
 * Frobenius norm of the uncontaminated block.
 *
 * # Safety
 * `op` must be a live handle; `norm` valid for one write.
 */
enum RadmomStatus radmom_operator_clean_norm(const struct RadmomOperator *op, double *norm);

/**
 * Hydrogen state |n l m⟩ with Bohr radius `a0` and ħ = `hbar`.
 *
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum RadmomStatus radmom_hydrogen_new(uint32_t n,
                                      uint32_t l,
                                      int32_t m,
                                      double a0,
                                      double hbar,
                                      struct RadmomHydrogen **out);

/**
 * Releases a hydrogen state. Null is ignored.
 *
 * # Safety
 * `h` must be null or a handle from this library not yet freed.
 */
void radmom_hydrogen_free(struct RadmomHydrogen *h);

/**
 * ψ(r, θ, φ).
 *
 * # Safety
 * `h` must be a live handle; `re`, `im` valid for one write each.
 */
enum RadmomStatus radmom_hydrogen_psi(const struct RadmomHydrogen *h,
                                      double r,
                                      double theta,
                                      double phi,
                                      double *re,
                                      double *im);

/**
 * ⟨1/r⟩.
 *
 * # Safety
 * `h` must be a live handle; `value` valid for one write.
 */
enum RadmomStatus radmom_hydrogen_inverse_r(const struct RadmomHydrogen *h, double *value);

/**
 * Momentum amplitude c(p) of an s-state (real).
 *
 * # Safety
 * `h` must be a live handle; `value` valid for one write.
 */
enum RadmomStatus radmom_hydrogen_momentum_amplitude(const struct RadmomHydrogen *h,
                                                     double p,
                                                     double *value);

/**
 * Marginal density of p_z at `count` strictly increasing points.
 *
 * # Safety
 * `h` must be a live handle; `pz` readable and `values` writable for
 * `count` doubles.
 */
enum RadmomStatus radmom_hydrogen_marginal_pz(const struct RadmomHydrogen *h,
                                              const double *pz,
                                              uintptr_t count,
                                              double *values);

/**
 * Unit-normalized Q_l0(γ).
 *
 * # Safety
 * `re`, `im` must be valid for one write each.
 */
enum RadmomStatus radmom_q_coeff(uint32_t l, double gamma, double *re, double *im);

/**
 * ½√π sech(πγ/2).
 */
double radmom_q00_analytic(double gamma);

/**
 * γ times the difference of the p_z and Π_z ground-state densities.
 */
double radmom_combined_z(double gamma);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RADMOM_H */
