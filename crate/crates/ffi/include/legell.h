#ifndef LEGELL_H
#define LEGELL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum LegellStatus {
  Ok = 0,
  DomainError = 1,
  PoleError = 2,
  ConvergenceError = 3,
  UnsupportedIndex = 4,
  SingularLadder = 5,
  StabilityError = 6,
  DegenerateReflection = 7,
  DegenerateParameter = 8,
  UnsupportedCurve = 9,
  InternalError = 10,
  NullPointer = 11,
} LegellStatus;

/**
 * Opaque elliptic-form result handle.
 */
typedef struct LegellForm LegellForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static name of a status code.
 */
const char *legell_status_name(enum LegellStatus status);

/**
 * Gamma function.
 *
 * # Safety
 * `out` must be a valid pointer to a double.
 */
enum LegellStatus legell_gamma(double x, double *out);

/**
 * Complete elliptic integral K(m).
 *
 * # Safety
 * `out` must be a valid pointer to a double.
 */
enum LegellStatus legell_elliptic_k(double m, double *out);

/**
 * Complete elliptic integral E(m).
 *
 * # Safety
 * `out` must be a valid pointer to a double.
 */
enum LegellStatus legell_elliptic_e(double m, double *out);

/**
 * Gauss hypergeometric function 2F1(a, b; c; x).
 *
 * # Safety
 * `out` must be a valid pointer to a double.
 */
enum LegellStatus legell_gauss_2f1(double a, double b, double c, double x, double *out);

/**
 * Series-oracle evaluation of a Legendre/Ferrers function. The degree
 * and order are exact rationals (numerator/denominator pairs). Kind
 * codes: 0 = Legendre P, 1 = Legendre Qhat, 2 = Ferrers P,
 * 3 = Ferrers Q, 4 = Ferrers P at negated argument, 5 = the
 * second-kind companion combination on the Legendre side.
 *
 * # Safety
 * `out` must be a valid pointer to a double.
 */
enum LegellStatus legell_eval_series(int kind,
                                     int64_t nu_num,
                                     int64_t nu_den,
                                     int64_t mu_num,
                                     int64_t mu_den,
                                     double x,
                                     double *out);

/**
 * Reduce a fractional-degree function (degree in Z +- 1/r for
 * r = 2, 3, 4, 6, integer order) to its elliptic form. On success the
 * returned handle must be freed with `legell_form_free`. On error the
 * result is null and `status`, when non-null, receives the code.
 *
 * # Safety
 * `status` may be null; if non-null it must point to writable memory.
 */
struct LegellForm *legell_eval_form(int kind,
                                    int64_t nu_num,
                                    int64_t nu_den,
                                    int64_t order,
                                    double x,
                                    enum LegellStatus *status);

/**
 * Value of an elliptic form.
 *
 * # Safety
 * `form` must be a live handle from `legell_eval_form`.
 */
double legell_form_value(const struct LegellForm *form);

/**
 * Derivative of an elliptic form with respect to the evaluation angle.
 *
 * # Safety
 * `form` must be a live handle from `legell_eval_form`.
 */
double legell_form_derivative(const struct LegellForm *form);

/**
 * Number of a K(m0), b E(m0) terms in the form (one or two).
 *
 * # Safety
 * `form` must be a live handle from `legell_eval_form`.
 */
uintptr_t legell_form_term_count(const struct LegellForm *form);

/**
 * Read one term of the form: the modular parameter, the K and E
 * coefficients, and their derivative-channel counterparts.
 *
 * # Safety
 * `form` must be a live handle; the five output pointers must each be
 * valid or null (null outputs are skipped).
 */
enum LegellStatus legell_form_term(const struct LegellForm *form,
                                   uintptr_t index,
                                   double *modulus,
                                   double *coef_k,
                                   double *coef_e,
                                   double *coef_k_deriv,
                                   double *coef_e_deriv);

/**
 * Release a form handle.
 *
 * # Safety
 * `form` must be null or a handle not previously freed.
 */
void legell_form_free(struct LegellForm *form);

/**
 * Laplace coefficient b_s^(m)(alpha) under the cosine-transform
 * convention with the 1/pi prefactor; s is an exact rational.
 *
 * # Safety
 * `out` must be a valid pointer to a double.
 */
enum LegellStatus legell_laplace_coefficient(int64_t s_num,
                                             int64_t s_den,
                                             int64_t m,
                                             double alpha,
                                             double *out);

/**
 * Radical form of 2F1(1/6, 5/6; 5/4; x) for x <= 0.
 *
 * # Safety
 * `out` must be a valid pointer to a double.
 */
enum LegellStatus legell_octahedral_2f1(double x, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LEGELL_H */
