#ifndef TRIDIAG_SPECTRA_H
#define TRIDIAG_SPECTRA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsCaseKind {
  TS_CASE_KIND_COULOMB1 = 0,
  TS_CASE_KIND_COULOMB2,
  TS_CASE_KIND_OSCILLATOR1,
  TS_CASE_KIND_OSCILLATOR2,
  TS_CASE_KIND_POWERLAW1,
  TS_CASE_KIND_POWERLAW2,
  TS_CASE_KIND_HULTHEN1,
  TS_CASE_KIND_HULTHEN2,
  TS_CASE_KIND_HULTHEN3,
  TS_CASE_KIND_MORSE1,
  TS_CASE_KIND_MORSE2,
  TS_CASE_KIND_ROSENMORSE,
} TsCaseKind;

typedef enum TsDensityStyle {
  // Hulthén 1 and Rosen-Morse recursion.
  TS_DENSITY_STYLE_ADDITIVE = 0,
  // Hulthén 2 recursion.
  TS_DENSITY_STYLE_MULTIPLICATIVE = 1,
} TsDensityStyle;

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_PARAMETER_DOMAIN = 2,
  TS_STATUS_DOMAIN = 3,
  TS_STATUS_UNSUPPORTED = 4,
  TS_STATUS_ACCURACY = 5,
  TS_STATUS_MATRIX = 6,
  TS_STATUS_BUFFER_TOO_SMALL = 7,
  TS_STATUS_PANIC = 8,
} TsStatus;

// Gauss rule and smoothed curve of a deformed Jacobi density.
typedef struct TsDensity TsDensity;

// A tridiagonal representation of H - E.
typedef struct TsRep TsRep;

// Physical parameters. Unused fields are ignored; `nu`, `mu` may be NaN
// where the case treats them as optional, `lambda` and `mu_hat` default
// to 1 and `b` to 0 when NaN.
typedef struct TsParams {
  double z;
  double a;
  double b;
  double lambda;
  double omega;
  double mu;
  double nu;
  double mu_hat;
} TsParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread ("" after a success).
// Valid until the next call on the same thread.
const char *ts_last_error(void);

// Builds the size × size representation. `basis_lambda` is NaN except for
// coulomb1 and oscillator1, where it is the free basis scale.
//
// # Safety
// `params` must point to a valid `TsParams`; `out` must be writable.
enum TsStatus ts_rep_new(enum TsCaseKind kind,
                         const struct TsParams *params,
                         uint32_t ell,
                         double basis_lambda,
                         double energy,
                         size_t size,
                         struct TsRep **out);

// # Safety
// `rep` must come from `ts_rep_new` and not be used afterwards.
void ts_rep_free(struct TsRep *rep);

// Basis size, or 0 for a null handle.
//
// # Safety
// `rep` must be null or a live handle.
size_t ts_rep_size(const struct TsRep *rep);

// Copies the scaled form: `diag` gets `size` values a_n, `off` gets
// `size - 1` values b_n; `y` and `scale` (entry = scaled / scale) are
// written when non-null.
//
// # Safety
// `diag` and `off` must hold `size` and `size - 1` doubles.
enum TsStatus ts_rep_entries(const struct TsRep *rep,
                             double *diag,
                             double *off,
                             double *y,
                             double *scale);

// Closed-form ladder, at most `n_max` levels. `*count` is always set to
// the number of levels; `BufferTooSmall` if it exceeds `cap`.
//
// # Safety
// `out` must hold `cap` doubles; `count` must be writable.
enum TsStatus ts_closed_form_spectrum(enum TsCaseKind kind,
                                      const struct TsParams *params,
                                      uint32_t ell,
                                      size_t n_max,
                                      double *out,
                                      size_t cap,
                                      size_t *count);

// Lowest `n_states` eigenvalues of the finite-basis problem.
//
// # Safety
// `rep` must be a live handle; `out` must hold `n_states` doubles.
enum TsStatus ts_numeric_spectrum(const struct TsRep *rep,
                                  size_t n_states,
                                  double *out,
                                  size_t *count);

// Density estimate from the N × N Jacobi matrix. `bandwidth` NaN selects
// Silverman's rule.
//
// # Safety
// `out` must be writable.
enum TsStatus ts_density_new(enum TsDensityStyle style,
                             double mu,
                             double nu,
                             double gamma,
                             size_t n,
                             double bandwidth,
                             struct TsDensity **out);

// # Safety
// `d` must come from `ts_density_new` and not be used afterwards.
void ts_density_free(struct TsDensity *d);

// Gauss nodes and weights (N each).
//
// # Safety
// `nodes` and `weights` must hold `cap` doubles.
enum TsStatus ts_density_rule(const struct TsDensity *d,
                              double *nodes,
                              double *weights,
                              size_t cap,
                              size_t *count);

// Sampled curve (y, rho) and its length.
//
// # Safety
// `y` and `rho` must hold `cap` doubles.
enum TsStatus ts_density_curve(const struct TsDensity *d,
                               double *y,
                               double *rho,
                               size_t cap,
                               size_t *count);

// Kernel bandwidth used, or NaN for a null handle.
//
// # Safety
// `d` must be null or a live handle.
double ts_density_bandwidth(const struct TsDensity *d);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIDIAG_SPECTRA_H */
