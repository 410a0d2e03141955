/* Generated by cbindgen. Do not edit. */

#ifndef IGMAX_H
#define IGMAX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IgmaxStatus {
  IGMAX_STATUS_OK = 0,
  IGMAX_STATUS_NULL_POINTER = 1,
  IGMAX_STATUS_INVALID_UTF8 = 2,
  IGMAX_STATUS_INVALID_ARGUMENT = 3,
  IGMAX_STATUS_PARSE_ERROR = 4,
  IGMAX_STATUS_VALIDATION_ERROR = 5,
  IGMAX_STATUS_FORMAT_ERROR = 6,
  IGMAX_STATUS_UNSUPPORTED_INPUT = 7,
  IGMAX_STATUS_PRECONDITION_VIOLATION = 8,
  IGMAX_STATUS_CAPACITY_EXCEEDED = 9,
  IGMAX_STATUS_CONSTRUCTION_INVARIANT = 10,
  IGMAX_STATUS_INTERNAL = 11,
} IgmaxStatus;

typedef enum IgmaxVerdict {
  IGMAX_VERDICT_PASS = 0,
  IGMAX_VERDICT_PASS_WITH_ABELIANIZATION = 1,
  IGMAX_VERDICT_FAIL = 2,
  IGMAX_VERDICT_INCONCLUSIVE = 3,
  IGMAX_VERDICT_NONE = 4,
} IgmaxVerdict;

/**
 * A validated group multiplication table.
 */
typedef struct IgmaxCayley IgmaxCayley;

/**
 * A parsed group presentation.
 */
typedef struct IgmaxPresentation IgmaxPresentation;

/**
 * The result of a pipeline run.
 */
typedef struct IgmaxReport IgmaxReport;

/**
 * Resource limits; start from `igmax_options_default`.
 */
typedef struct IgmaxOptions {
  size_t closure_cap;
  size_t coset_cap;
  size_t tietze_passes;
} IgmaxOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *igmax_last_error_message(void);

struct IgmaxOptions igmax_options_default(void);

/**
 * Parses `{"elements": [...], "table": [[...]]}` with 1-based indices or
 * element names, identity first.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum IgmaxStatus igmax_cayley_from_json(const char *json, struct IgmaxCayley **out);

/**
 * # Safety
 * `t` must come from `igmax_cayley_from_json` and not be freed.
 */
size_t igmax_cayley_order(const struct IgmaxCayley *t);

/**
 * # Safety
 * `t` must come from `igmax_cayley_from_json` or be null.
 */
void igmax_cayley_free(struct IgmaxCayley *t);

/**
 * Parses a presentation in the line or bracket layout.
 *
 * # Safety
 * `src` must be a nul-terminated string and `out` a valid pointer.
 */
enum IgmaxStatus igmax_presentation_parse(const char *src, struct IgmaxPresentation **out);

/**
 * # Safety
 * `p` must come from `igmax_presentation_parse` or be null.
 */
void igmax_presentation_free(struct IgmaxPresentation *p);

/**
 * Construction from a presentation. `opts` may be null for defaults.
 *
 * # Safety
 * Pointers must be valid; `p` from `igmax_presentation_parse`.
 */
enum IgmaxStatus igmax_run_construct1(const struct IgmaxPresentation *p,
                                      const struct IgmaxOptions *opts,
                                      struct IgmaxReport **out);

/**
 * Construction from a Cayley table. `opts` may be null for defaults.
 *
 * # Safety
 * Pointers must be valid; `t` from `igmax_cayley_from_json`.
 */
enum IgmaxStatus igmax_run_construct2(const struct IgmaxCayley *t,
                                      const struct IgmaxOptions *opts,
                                      struct IgmaxReport **out);

/**
 * The pure rectangular band with `rows` rows and `cols` columns.
 *
 * # Safety
 * `out` must be a valid pointer; `opts` valid or null.
 */
enum IgmaxStatus igmax_run_rectband(size_t rows,
                                    size_t cols,
                                    const struct IgmaxOptions *opts,
                                    struct IgmaxReport **out);

/**
 * # Safety
 * `r` must come from an `igmax_run_*` call and not be freed.
 */
enum IgmaxVerdict igmax_report_verdict(const struct IgmaxReport *r);

/**
 * The structured report, as produced by `igmax --format structured`.
 * Release with `igmax_string_free`.
 *
 * # Safety
 * `r` must come from an `igmax_run_*` call; `out` must be valid.
 */
enum IgmaxStatus igmax_report_to_json(const struct IgmaxReport *r, char **out);

/**
 * # Safety
 * `r` must come from an `igmax_run_*` call or be null.
 */
void igmax_report_free(struct IgmaxReport *r);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void igmax_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IGMAX_H */
