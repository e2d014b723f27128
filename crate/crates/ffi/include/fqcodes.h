#ifndef FQCODES_H
#define FQCODES_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum FqStatus {
  FQ_STATUS_OK = 0,
  FQ_STATUS_NULL_ARGUMENT = 1,
  FQ_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed document, polynomial or element.
   */
  FQ_STATUS_PARSE = 3,
  /**
   * Unsupported or invalid field.
   */
  FQ_STATUS_INVALID_FIELD = 4,
  /**
   * Structural conditions on the generators fail.
   */
  FQ_STATUS_CONDITIONS = 5,
  /**
   * Exact enumeration would exceed the budget.
   */
  FQ_STATUS_BUDGET_EXCEEDED = 6,
  FQ_STATUS_SHAPE_MISMATCH = 7,
  FQ_STATUS_INTERNAL = 8,
} FqStatus;

/**
 * A linear code over F_q, given by its reduced generator matrix, with its
 * split into `α` F_q coordinates and `β` F_{q²} coordinates.
 */
typedef struct FqCode FqCode;

/**
 * A table verification report.
 */
typedef struct FqReport FqReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Release with
 * [`fq_string_free`].
 */
char *fq_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void fq_string_free(char *s);

/**
 * Library version, a static string.
 */
const char *fq_version(void);

/**
 * Builds the module closure of a cyclic-code definition document
 * (`{"q", "alpha", "beta", "s", "l", "g", "h", "k"}`). With `relaxed` set
 * only the divisibility conditions are enforced.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum FqStatus fq_code_from_definition(const char *json, bool relaxed, struct FqCode **out);

/**
 * Code spanned by the rows of a matrix document
 * (`{"q", "alpha", "beta", "rows"}`); no cyclicity is assumed.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum FqStatus fq_code_from_matrix(const char *json, struct FqCode **out);

/**
 * # Safety
 * `code` must come from this library and not have been freed. Null is ignored.
 */
void fq_code_free(struct FqCode *code);

/**
 * Field size `q`, block lengths and F_q-dimension.
 *
 * # Safety
 * `code` must be a live handle; the out pointers must be writable.
 */
enum FqStatus fq_code_params(const struct FqCode *code,
                             size_t *q,
                             size_t *alpha,
                             size_t *beta,
                             size_t *dimension);

/**
 * Whether the code is invariant under the simultaneous cyclic shift.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum FqStatus fq_code_is_cyclic(const struct FqCode *code, bool *out);

/**
 * Dual under the F_{q²}-valued inner product.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum FqStatus fq_code_dual(const struct FqCode *code, struct FqCode **out);

/**
 * Gray image, an F_q-linear code of length `α + 2β` (returned with
 * `β = 0`).
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum FqStatus fq_code_gray_image(const struct FqCode *code, struct FqCode **out);

/**
 * Exact minimum distance in the mixed weight (one per nonzero coordinate
 * of either alphabet). Writes 0 for the zero code. Fails with
 * `BudgetExceeded` when the code has more than `budget` codewords.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum FqStatus fq_code_min_distance(const struct FqCode *code, uint64_t budget, size_t *out);

/**
 * Upper bound on the minimum distance from `samples` seeded
 * information-set samples; the weight of a codeword actually found.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum FqStatus fq_code_distance_upper_bound(const struct FqCode *code,
                                           size_t samples,
                                           uint64_t seed,
                                           size_t *out);

/**
 * Dimension of the Euclidean hull of the expanded code over F_q.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum FqStatus fq_code_hull_dimension(const struct FqCode *code, size_t *out);

/**
 * Whether the expanded code over F_q is LCD.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum FqStatus fq_code_is_lcd(const struct FqCode *code, bool *out);

/**
 * The LCD certificate of a matrix document, as a JSON object. Release the
 * string with [`fq_string_free`].
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum FqStatus fq_lcd_certificate_json(const char *json, char **out);

/**
 * Verifies the stored tables: `ids` is `"1"`, `"2"`, `"3"` or `"all"`.
 * `long_budget` raises the enumeration budget to 3^18 codewords.
 *
 * # Safety
 * `ids` must be a nul-terminated string; `out` must be writable.
 */
enum FqStatus fq_tables_verify(const char *ids,
                               uint64_t budget,
                               uint64_t seed,
                               bool long_budget,
                               struct FqReport **out);

/**
 * Whether every exactly-checkable claim in the report holds.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum FqStatus fq_report_ok(const struct FqReport *report, bool *out);

/**
 * The report as JSON (`csv` false) or CSV (`csv` true). Release the string
 * with [`fq_string_free`].
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum FqStatus fq_report_render(const struct FqReport *report, bool csv, char **out);

/**
 * # Safety
 * `report` must come from this library and not have been freed. Null is ignored.
 */
void fq_report_free(struct FqReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FQCODES_H */
