#ifndef MFDCCA_H
#define MFDCCA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MfdccaStatus {
  MFDCCA_STATUS_OK = 0,
  MFDCCA_STATUS_NULL_POINTER = 1,
  MFDCCA_STATUS_INVALID_INPUT = 2,
  MFDCCA_STATUS_LENGTH_MISMATCH = 3,
  MFDCCA_STATUS_CONFIG = 4,
  MFDCCA_STATUS_OUT_OF_RANGE = 5,
  MFDCCA_STATUS_BUFFER_TOO_SMALL = 6,
  MFDCCA_STATUS_PANIC = 7,
} MfdccaStatus;

typedef enum MfdccaCascadeOrder {
  /**
   * First value `(1-p)^n`.
   */
  MFDCCA_CASCADE_ORDER_BIT_COUNT = 0,
  /**
   * First value `p^n`.
   */
  MFDCCA_CASCADE_ORDER_LEFT_P = 1,
} MfdccaCascadeOrder;

/**
 * Opaque result handle.
 */
typedef struct MfdccaAnalysis MfdccaAnalysis;

/**
 * Analysis settings. Start from [`mfdcca_options_default`].
 */
typedef struct MfdccaOptions {
  size_t scale_min;
  /**
   * 0 selects a quarter of the series length.
   */
  size_t scale_max;
  size_t scale_count;
  double q_min;
  double q_max;
  double q_step;
  size_t poly_order;
  /**
   * Comma list of algorithm names, or NULL for everything the inputs allow.
   */
  const char *algorithms;
} MfdccaOptions;

/**
 * One summary line. Undefined numbers are NaN. `algorithm` points into
 * the owning handle.
 */
typedef struct MfdccaSummaryRow {
  const char *algorithm;
  double pairs_pct;
  double hurst;
  double alpha0;
  double width;
  double skew;
  bool low_coverage;
} MfdccaSummaryRow;

typedef struct MfdccaAnalyticPoint {
  double q;
  double h;
  double tau;
  double alpha;
  double f;
} MfdccaAnalyticPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *mfdcca_version(void);

/**
 * Static description of a status code.
 */
const char *mfdcca_status_str(enum MfdccaStatus status);

/**
 * Message of the last failure on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *mfdcca_last_error(void);

struct MfdccaOptions mfdcca_options_default(void);

/**
 * Analyses `x` alone, or the pair `(x, y)` when `y` is not NULL.
 *
 * # Safety
 * `x` (and `y` when given) must point to `len` doubles. `options` is NULL
 * or a valid options struct. `out` must be writable; on success it
 * receives a handle to release with [`mfdcca_analysis_free`].
 */
enum MfdccaStatus mfdcca_analyze(const double *x,
                                 const double *y,
                                 size_t len,
                                 const struct MfdccaOptions *options,
                                 struct MfdccaAnalysis **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `handle` must be NULL or come from [`mfdcca_analyze`] and not be freed
 * already.
 */
void mfdcca_analysis_free(struct MfdccaAnalysis *handle);

/**
 * Number of summary rows; 0 for NULL.
 *
 * # Safety
 * `handle` must be NULL or a live handle.
 */
size_t mfdcca_analysis_row_count(const struct MfdccaAnalysis *handle);

/**
 * Copies summary row `index` into `out`.
 *
 * # Safety
 * `handle` must be NULL or a live handle; `out` must be writable. The
 * name pointer stays valid while the handle lives.
 */
enum MfdccaStatus mfdcca_analysis_row(const struct MfdccaAnalysis *handle,
                                      size_t index,
                                      struct MfdccaSummaryRow *out);

/**
 * Number of fluctuation tables: one MFDFA table per input, then one per
 * cross algorithm.
 *
 * # Safety
 * `handle` must be NULL or a live handle.
 */
size_t mfdcca_analysis_table_count(const struct MfdccaAnalysis *handle);

/**
 * Name of table `index`, or NULL when out of range.
 *
 * # Safety
 * `handle` must be NULL or a live handle.
 */
const char *mfdcca_analysis_table_name(const struct MfdccaAnalysis *handle, size_t index);

/**
 * # Safety
 * `handle` must be NULL or a live handle.
 */
size_t mfdcca_analysis_scale_count(const struct MfdccaAnalysis *handle);

/**
 * # Safety
 * `handle` must be NULL or a live handle.
 */
size_t mfdcca_analysis_q_count(const struct MfdccaAnalysis *handle);

/**
 * Copies the segment lengths of the scale grid.
 *
 * # Safety
 * `out` must have room for `capacity` elements.
 */
enum MfdccaStatus mfdcca_analysis_copy_scales(const struct MfdccaAnalysis *handle,
                                              size_t *out,
                                              size_t capacity);

/**
 * Copies the q grid.
 *
 * # Safety
 * `out` must have room for `capacity` elements.
 */
enum MfdccaStatus mfdcca_analysis_copy_q(const struct MfdccaAnalysis *handle,
                                         double *out,
                                         size_t capacity);

/**
 * Copies `F_q(n)` of one table, scale-major (`scale_count * q_count`
 * values). Cells without a number are NaN; see
 * [`mfdcca_analysis_copy_validity`] for which cells enter the fit.
 *
 * # Safety
 * `out` must have room for `capacity` elements.
 */
enum MfdccaStatus mfdcca_analysis_copy_fluctuations(const struct MfdccaAnalysis *handle,
                                                    size_t table,
                                                    double *out,
                                                    size_t capacity);

/**
 * Copies 1 for cells that enter the regression, 0 otherwise, in the same
 * layout as [`mfdcca_analysis_copy_fluctuations`].
 *
 * # Safety
 * `out` must have room for `capacity` elements.
 */
enum MfdccaStatus mfdcca_analysis_copy_validity(const struct MfdccaAnalysis *handle,
                                                size_t table,
                                                uint8_t *out,
                                                size_t capacity);

/**
 * Copies `h(q)` of one table (`q_count` values, NaN where undefined).
 *
 * # Safety
 * `out` must have room for `capacity` elements.
 */
enum MfdccaStatus mfdcca_analysis_copy_hurst(const struct MfdccaAnalysis *handle,
                                             size_t table,
                                             double *out,
                                             size_t capacity);

/**
 * Length of a cascade with `stages` stages, or 0 when unsupported.
 */
size_t mfdcca_binomial_len(uint32_t stages);

/**
 * Writes the `2^stages` cascade values.
 *
 * # Safety
 * `out` must have room for `capacity` elements.
 */
enum MfdccaStatus mfdcca_binomial_generate(uint32_t stages,
                                           double p,
                                           enum MfdccaCascadeOrder order,
                                           double *out,
                                           size_t capacity);

/**
 * Closed-form `h`, `tau`, `alpha`, `f` of the infinite cascade.
 *
 * # Safety
 * `out` must be writable.
 */
enum MfdccaStatus mfdcca_binomial_analytic(double q, double p, struct MfdccaAnalyticPoint *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MFDCCA_H */
