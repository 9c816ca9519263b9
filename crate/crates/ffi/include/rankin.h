#ifndef RANKIN_H
#define RANKIN_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which exact power series a [`RankinSeries`] handle holds.
 */
typedef enum RankinSeriesKind {
  /**
   * The zeta integral as a sum over Whittaker values.
   */
  RANKIN_SERIES_KIND_INTEGRAL = 0,
  /**
   * Expansion of the L-factor ratio.
   */
  RANKIN_SERIES_KIND_L_RATIO = 1,
} RankinSeriesKind;

typedef enum RankinStatus {
  RANKIN_STATUS_OK = 0,
  RANKIN_STATUS_NULL_POINTER = 1,
  RANKIN_STATUS_INVALID_ARGUMENT = 2,
  RANKIN_STATUS_PADIC_ERROR = 3,
  RANKIN_STATUS_PANIC = 4,
} RankinStatus;

typedef enum RankinSuite {
  RANKIN_SUITE_ALGEBRA = 0,
  RANKIN_SUITE_IDENTITY = 1,
  RANKIN_SUITE_GAUSS = 2,
  RANKIN_SUITE_HILBERT = 3,
  RANKIN_SUITE_WEIL = 4,
  RANKIN_SUITE_MATRIX = 5,
  RANKIN_SUITE_ALL = 6,
} RankinSuite;

/**
 * Opaque verification report.
 */
typedef struct RankinReport RankinReport;

/**
 * Opaque truncated power series in `X` over `Q[A^±1, a1^±1, a2^±1]`.
 */
typedef struct RankinSeries RankinSeries;

/**
 * Opaque calibrated Weil index for one prime.
 */
typedef struct RankinWeilFactor RankinWeilFactor;

/**
 * Verification parameters. `primes` points to `prime_count` entries.
 */
typedef struct RankinConfig {
  uint32_t order;
  const uint64_t *primes;
  size_t prime_count;
  uint32_t mmax;
  double tolerance;
  uint64_t seed;
} RankinConfig;

typedef struct RankinComplex {
  double re;
  double im;
} RankinComplex;

typedef struct RankinRational {
  int64_t num;
  int64_t den;
} RankinRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *rankin_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void rankin_string_free(char *s);

/**
 * Default parameters. `primes` points to static storage.
 */
struct RankinConfig rankin_config_default(void);

/**
 * Runs a verification suite and stores a new report in `*out`.
 *
 * # Safety
 * `config` must point to a valid [`RankinConfig`] whose `primes` points to
 * `prime_count` readable values. `out` must be writable.
 */
enum RankinStatus rankin_verify(enum RankinSuite suite,
                                const struct RankinConfig *config,
                                struct RankinReport **out);

/**
 * # Safety
 * `report` must be NULL or a handle from [`rankin_verify`] not yet freed.
 */
void rankin_report_free(struct RankinReport *report);

/**
 * Number of checks in the report.
 *
 * # Safety
 * `report` must be a live handle.
 */
size_t rankin_report_len(const struct RankinReport *report);

/**
 * Number of failed checks.
 *
 * # Safety
 * `report` must be a live handle.
 */
size_t rankin_report_failed(const struct RankinReport *report);

/**
 * The report as a JSON array. Free with [`rankin_string_free`].
 *
 * # Safety
 * `report` must be a live handle.
 */
char *rankin_report_json(const struct RankinReport *report);

/**
 * The report as aligned text lines. Free with [`rankin_string_free`].
 *
 * # Safety
 * `report` must be a live handle.
 */
char *rankin_report_text(const struct RankinReport *report);

/**
 * Calibrates the Weil index for an odd prime `p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RankinStatus rankin_weil_factor_new(uint64_t p,
                                         double tolerance,
                                         struct RankinWeilFactor **out);

/**
 * # Safety
 * `wf` must be NULL or a handle from [`rankin_weil_factor_new`] not yet freed.
 */
void rankin_weil_factor_free(struct RankinWeilFactor *wf);

/**
 * `gamma_psi(p^valuation * unit)`. `unit` must be prime to `p`.
 *
 * # Safety
 * `wf` must be a live handle and `out` writable.
 */
enum RankinStatus rankin_weil_factor_gamma(const struct RankinWeilFactor *wf,
                                           int32_t valuation,
                                           uint64_t unit,
                                           struct RankinComplex *out);

/**
 * Unit integral of `gamma_psi^-1(u) psi(p^-m u)`, normalized by the measure
 * of the units.
 *
 * # Safety
 * `wf` must be a live handle and `out` writable.
 */
enum RankinStatus rankin_weil_factor_unit_integral(const struct RankinWeilFactor *wf,
                                                   uint32_t m,
                                                   struct RankinComplex *out);

/**
 * Hilbert symbol `(p^va ua, p^vb ub)_p`, written as `1` or `-1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RankinStatus rankin_hilbert_symbol(uint64_t p,
                                        int32_t va,
                                        uint64_t ua,
                                        int32_t vb,
                                        uint64_t ub,
                                        int8_t *out);

/**
 * Builds the requested series through `X^order`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RankinStatus rankin_series_new(enum RankinSeriesKind kind,
                                    uint32_t order,
                                    struct RankinSeries **out);

/**
 * # Safety
 * `s` must be NULL or a handle from [`rankin_series_new`] not yet freed.
 */
void rankin_series_free(struct RankinSeries *s);

/**
 * Truncation order of the series.
 *
 * # Safety
 * `s` must be a live handle.
 */
uint32_t rankin_series_order(const struct RankinSeries *s);

/**
 * Coefficient of `X^k` as text. Free with [`rankin_string_free`].
 * Returns NULL if `k` exceeds the order.
 *
 * # Safety
 * `s` must be a live handle.
 */
char *rankin_series_coefficient(const struct RankinSeries *s, uint32_t k);

/**
 * Coefficient of `X^k` at `(A, a1, a2) = values[0..3]`, as an exact
 * fraction `n/d` in lowest terms. Free with [`rankin_string_free`].
 *
 * # Safety
 * `s` must be a live handle, `values` must point to three readable entries
 * and `out` must be writable.
 */
enum RankinStatus rankin_series_specialize(const struct RankinSeries *s,
                                           uint32_t k,
                                           const struct RankinRational *values,
                                           char **out);

/**
 * Compares two series up to the smaller order. Writes `-1` to `*mismatch`
 * when they agree, otherwise the first differing degree.
 *
 * # Safety
 * `a` and `b` must be live handles and `mismatch` writable.
 */
enum RankinStatus rankin_series_compare(const struct RankinSeries *a,
                                        const struct RankinSeries *b,
                                        int64_t *mismatch);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RANKIN_H */
