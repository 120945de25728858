#ifndef HIGHAM_GROWTH_H
#define HIGHAM_GROWTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HgStatus {
  HG_STATUS_OK = 0,
  HG_STATUS_NULL_POINTER = 1,
  HG_STATUS_BUFFER_TOO_SMALL = 2,
  HG_STATUS_INVALID_UTF8 = 3,
  HG_STATUS_DIMENSION_MISMATCH = 10,
  HG_STATUS_NON_FINITE = 11,
  HG_STATUS_NON_HERMITIAN_INPUT = 12,
  HG_STATUS_NOT_POSITIVE_DEFINITE = 13,
  HG_STATUS_SINGULAR_LEADING_BLOCK = 14,
  HG_STATUS_ZERO_PIVOT = 15,
  HG_STATUS_DOMAIN_ERROR = 16,
  HG_STATUS_KAPPA_EXCEEDED = 17,
  HG_STATUS_NOT_IN_CLASS = 18,
  HG_STATUS_ANGLE_OUT_OF_RANGE = 19,
  HG_STATUS_PARSE_ERROR = 20,
  HG_STATUS_CONFIG_ERROR = 21,
  HG_STATUS_IO_ERROR = 22,
  HG_STATUS_PANIC = 99,
} HgStatus;

/**
 * Opaque matrix handle.
 */
typedef struct HgMatrix HgMatrix;

typedef struct HgComplex {
  double re;
  double im;
} HgComplex;

typedef struct HgGrowth {
  double m0;
  double rho;
  double rho_with_initial;
  /**
   * 1-based stage attaining `rho`.
   */
  size_t argmax_stage;
  /**
   * Number of stages, `n - 1`.
   */
  size_t stages;
} HgGrowth;

/**
 * Fields that do not apply (condition numbers of indefinite parts) are NaN.
 */
typedef struct HgClassification {
  bool is_higham;
  bool is_ad;
  double lambda_min_b;
  double lambda_min_c;
  double kappa_b;
  double kappa_c;
  double omega;
  double symmetry_defect;
} HgClassification;

typedef struct HgCertifySummary {
  bool is_member;
  size_t certificates;
  size_t binding_violations;
  /**
   * Smallest slack over binding certificates; +inf when there are none.
   */
  double worst_slack;
} HgCertifySummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a `rows x cols` matrix from `rows * cols` row-major entries.
 *
 * # Safety
 * `entries` must point to `rows * cols` readable values and `out` must be
 * writable.
 */
enum HgStatus hg_matrix_new(size_t rows,
                            size_t cols,
                            const struct HgComplex *entries,
                            struct HgMatrix **out);

/**
 * Parses a NUL-terminated string in the matrix file format.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` writable.
 */
enum HgStatus hg_matrix_parse(const char *text, struct HgMatrix **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `m` must be null or a handle from this library not yet freed.
 */
void hg_matrix_free(struct HgMatrix *m);

/**
 * Rows of `m`, or 0 for null.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t hg_matrix_rows(const struct HgMatrix *m);

/**
 * Columns of `m`, or 0 for null.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t hg_matrix_cols(const struct HgMatrix *m);

/**
 * Entry `(i, j)`, 0-based.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum HgStatus hg_matrix_get(const struct HgMatrix *m, size_t i, size_t j, struct HgComplex *out);

/**
 * Serializes `m` in the matrix file format; release with `hg_string_free`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum HgStatus hg_matrix_to_string(const struct HgMatrix *m, char **out);

/**
 * Releases a string from `hg_matrix_to_string`; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void hg_string_free(char *s);

/**
 * The 2x2 extremal matrix: off-diagonal `t(1-i)` when `plus`, else `t(1+i)`,
 * with `t = (omega-1)/(omega+1)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum HgStatus hg_extremal(double omega, bool plus, struct HgMatrix **out);

/**
 * `(1+i) diag(omega, 1, ..., 1)` of size `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum HgStatus hg_diag_lower(double omega, size_t n, struct HgMatrix **out);

/**
 * Growth report of pivotless elimination on `m`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum HgStatus hg_growth(const struct HgMatrix *m, struct HgGrowth *out);

/**
 * Writes the stage-wise growth ratios into `buf`. `written` receives the
 * number of stages; `BufferTooSmall` is returned (with `written` set) when
 * `len` is shorter.
 *
 * # Safety
 * `m` must be a live handle, `buf` must hold `len` writable values (or be
 * null with `len == 0`), and `written` must be writable.
 */
enum HgStatus hg_growth_stages(const struct HgMatrix *m, double *buf, size_t len, size_t *written);

/**
 * Class membership of `m`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum HgStatus hg_classify(const struct HgMatrix *m, struct HgClassification *out);

/**
 * Evaluates every applicable certificate on `m`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum HgStatus hg_certify(const struct HgMatrix *m, struct HgCertifySummary *out);

/**
 * Message of the calling thread's last failed call, or null. The pointer is
 * valid until the thread's next call into this library.
 */
const char *hg_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hg_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HIGHAM_GROWTH_H */
