#ifndef CM_ATLAS_H
#define CM_ATLAS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CmaSpacing {
  CMA_SPACING_LOG = 0,
  CMA_SPACING_LINEAR = 1,
} CmaSpacing;

// Result code of every call. Nonzero values mirror the library's error kinds.
typedef enum CmaStatus {
  CMA_STATUS_OK = 0,
  CMA_STATUS_NULL_POINTER = 1,
  CMA_STATUS_DOMAIN = 2,
  CMA_STATUS_UNSUPPORTED_ORDER = 3,
  CMA_STATUS_DEGENERATE = 4,
  CMA_STATUS_OVERFLOW = 5,
  CMA_STATUS_POLE = 6,
  CMA_STATUS_NON_CONVERGENCE = 7,
  CMA_STATUS_BRACKET = 8,
  CMA_STATUS_INCONSISTENT_CLASSIFICATION = 9,
  CMA_STATUS_INVALID_GRID = 10,
  CMA_STATUS_INVALID_ARGUMENT = 11,
  CMA_STATUS_UNKNOWN_NAME = 12,
  CMA_STATUS_INDEX_OUT_OF_RANGE = 13,
  CMA_STATUS_PANIC = 99,
} CmaStatus;

typedef enum CmaFamily {
  CMA_FAMILY_DELTA = 0,
  CMA_FAMILY_THETA = 1,
} CmaFamily;

typedef enum CmaVerdict {
  CMA_VERDICT_CM_CONSISTENT = 0,
  CMA_VERDICT_NEGCM_CONSISTENT = 1,
  CMA_VERDICT_NEITHER = 2,
  CMA_VERDICT_IDENTICALLY_ZERO = 3,
} CmaVerdict;

typedef enum CmaPredicted {
  CMA_PREDICTED_CM = 0,
  CMA_PREDICTED_NEGCM = 1,
  CMA_PREDICTED_NEITHER = 2,
  CMA_PREDICTED_IDENTICALLY_ZERO = 3,
  CMA_PREDICTED_NOT_CM = 4,
} CmaPredicted;

typedef enum CmaDirection {
  CMA_DIRECTION_CM_UPPER = 0,
  CMA_DIRECTION_NEGCM_LOWER = 1,
} CmaDirection;

// Opaque `(s, t, λ)` triple.
typedef struct CmaParams CmaParams;

// Opaque result of [`cma_cm_verify`].
typedef struct CmaReport CmaReport;

// Opaque list of inequality verdicts.
typedef struct CmaVerdicts CmaVerdicts;

// Evaluation grid `x ∈ (−min(s, t) + delta, x_max]`.
typedef struct CmaGrid {
  double delta;
  double x_max;
  size_t n_points;
  enum CmaSpacing spacing;
} CmaGrid;

typedef struct CmaOrderSummary {
  size_t order;
  double min;
  double argmin;
  double max;
  double argmax;
} CmaOrderSummary;

typedef struct CmaWitness {
  // False for the CM pattern of `f`, true for that of `−f`.
  bool negated;
  size_t order;
  double x;
  double value;
} CmaWitness;

typedef struct CmaVerdictInfo {
  bool holds;
  double worst_margin;
  double point;
  double lhs;
  double rhs;
} CmaVerdictInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or "" after a success.
// The pointer stays valid until the next call on the same thread.
const char *cma_last_error(void);

// Library version as a static NUL-terminated string.
const char *cma_version(void);

// The default grid: `delta = 1e-3`, `x_max = 1e4`, 400 log-spaced points.
struct CmaGrid cma_grid_default(void);

// Frees a string returned by this library.
//
// # Safety
// `s` must come from a `cma_*` function documented as returning an owned
// string, and must not be freed twice.
void cma_string_free(char *s);

// `ψ^(k)(x)` and an absolute error estimate (`err` may be NULL).
//
// # Safety
// `value` must be writable; `err` must be writable or NULL.
enum CmaStatus cma_polygamma(size_t k, double x, double *value, double *err);

// `ln Γ(x)` for `x > 0`.
//
// # Safety
// `value` must be writable.
enum CmaStatus cma_ln_gamma(double x, double *value);

// The positive zero of ψ.
double cma_psi_root(void);

// Allocates a parameter triple.
//
// # Safety
// `out` must be writable. The handle must be released with [`cma_params_free`].
enum CmaStatus cma_params_new(double s, double t, double lambda, struct CmaParams **out);

// # Safety
// `p` must be NULL or a live handle from [`cma_params_new`].
void cma_params_free(struct CmaParams *p);

// `Δ_{s,t;λ}(x)`.
//
// # Safety
// `p` must be a live handle and `value` writable.
enum CmaStatus cma_delta(const struct CmaParams *p, double x, double *value);

// `θ_{s,t;λ}(x)`.
//
// # Safety
// `p` must be a live handle and `value` writable.
enum CmaStatus cma_theta(const struct CmaParams *p, double x, double *value);

// `ln ℋ_{s,t;λ}(x)`.
//
// # Safety
// `p` must be a live handle and `value` writable.
enum CmaStatus cma_ln_h(const struct CmaParams *p, double x, double *value);

// The `n`-th derivative of Δ or θ at `x`.
//
// # Safety
// `p` must be a live handle and `value` writable.
enum CmaStatus cma_family_deriv(enum CmaFamily fam,
                                const struct CmaParams *p,
                                size_t n,
                                double x,
                                double *value);

// `Λ_{s,t}(x)`, the λ at which θ vanishes.
//
// # Safety
// `value` must be writable.
enum CmaStatus cma_capital_lambda(double s, double t, double x, double *value);

// Checks alternating derivative signs of Δ or θ up to `max_order` on `grid`
// (NULL for the default grid).
//
// # Safety
// `p` must be a live handle, `grid` NULL or readable, `out` writable. The
// report must be released with [`cma_report_free`].
enum CmaStatus cma_cm_verify(enum CmaFamily fam,
                             const struct CmaParams *p,
                             size_t max_order,
                             const struct CmaGrid *grid,
                             struct CmaReport **out);

// # Safety
// `r` must be NULL or a live handle from [`cma_cm_verify`].
void cma_report_free(struct CmaReport *r);

// Observed verdict, predicted class and whether they agree.
//
// # Safety
// `r` must be a live handle; each out pointer must be writable or NULL.
enum CmaStatus cma_report_summary(const struct CmaReport *r,
                                  enum CmaVerdict *verdict,
                                  enum CmaPredicted *predicted,
                                  bool *agree);

// Number of per-order summaries (`max_order + 1`) and witnesses.
//
// # Safety
// `r` must be a live handle; each out pointer must be writable or NULL.
enum CmaStatus cma_report_counts(const struct CmaReport *r, size_t *orders, size_t *witnesses);

// # Safety
// `r` must be a live handle and `out` writable.
enum CmaStatus cma_report_order(const struct CmaReport *r, size_t i, struct CmaOrderSummary *out);

// # Safety
// `r` must be a live handle and `out` writable.
enum CmaStatus cma_report_witness(const struct CmaReport *r, size_t i, struct CmaWitness *out);

// The report as the CLI's JSON document. Free the string with
// [`cma_string_free`].
//
// # Safety
// `r` must be a live handle and `out` writable.
enum CmaStatus cma_report_json(const struct CmaReport *r, char **out);

// Bisects λ in `[lo, hi]` for the CM boundary of Δ or θ in `direction`.
//
// # Safety
// `grid` must be NULL or readable; `value` writable.
enum CmaStatus cma_sharp_lambda(enum CmaFamily fam,
                                double s,
                                double t,
                                enum CmaDirection direction,
                                size_t max_order,
                                const struct CmaGrid *grid,
                                double lo,
                                double hi,
                                double *value);

// The threshold the classification assigns: 1 or `1/|t − s|`.
//
// # Safety
// `value` must be writable.
enum CmaStatus cma_theoretical_threshold(double s,
                                         double t,
                                         enum CmaDirection direction,
                                         double *value);

// Runs the default sweeps of one registry check, or of all when `name` is
// NULL. `grid` may be NULL for the default grid.
//
// # Safety
// `name` must be NULL or a NUL-terminated string; `grid` NULL or readable;
// `out` writable. Release the list with [`cma_verdicts_free`].
enum CmaStatus cma_inequalities_run(const char *name,
                                    const struct CmaGrid *grid,
                                    struct CmaVerdicts **out);

// # Safety
// `v` must be NULL or a live handle from [`cma_inequalities_run`].
void cma_verdicts_free(struct CmaVerdicts *v);

// Number of verdicts, or 0 for NULL.
//
// # Safety
// `v` must be NULL or a live handle.
size_t cma_verdicts_len(const struct CmaVerdicts *v);

// Fields of verdict `i`. `name` (may be NULL) receives a pointer owned by the
// list, valid until [`cma_verdicts_free`].
//
// # Safety
// `v` must be a live handle, `out` writable, `name` writable or NULL.
enum CmaStatus cma_verdicts_get(const struct CmaVerdicts *v,
                                size_t i,
                                struct CmaVerdictInfo *out,
                                const char **name);

// Divided-difference double bound at one `(a, b)` pair.
//
// # Safety
// `out` must be writable.
enum CmaStatus cma_check_thm3(double a,
                              double b,
                              size_t k,
                              double beta,
                              double gamma,
                              struct CmaVerdictInfo *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CM_ATLAS_H */
