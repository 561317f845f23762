#ifndef GFE1313_H
#define GFE1313_H

/* Generated from the Rust sources by the build script; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * `sieve_case` code for the branch with `a + b` coprime to 13.
 */
#define GFE_CASE_ONE 1

/**
 * `sieve_case` code for the branch with `13 | a + b`.
 */
#define GFE_CASE_TWO 2

/**
 * `gfe_elimination_status` result: every matching pair was ruled out.
 */
#define GFE_ELIMINATION_ELIMINATED 0

/**
 * `gfe_elimination_status` result: curve data or targets were missing.
 */
#define GFE_ELIMINATION_SKIPPED 1

/**
 * `gfe_elimination_status` result: some pair satisfied a congruence.
 */
#define GFE_ELIMINATION_UNRESOLVED 2

/**
 * Return status of every fallible entry point.
 */
typedef enum GfeStatus {
  /**
   * The call succeeded and all out-parameters were written.
   */
  GFE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  GFE_STATUS_NULL_POINTER = 1,
  /**
   * An argument failed validation: unsupported prime, unknown case
   * code, malformed element or JSON text.
   */
  GFE_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The computation itself failed; `gfe_last_error` has the reason.
   */
  GFE_STATUS_COMPUTE = 3,
  /**
   * A panic was trapped at the boundary. State is still consistent but
   * the result was discarded.
   */
  GFE_STATUS_INTERNAL = 4,
} GfeStatus;

/**
 * Opaque result of one modular elimination run.
 */
typedef struct GfeElimination GfeElimination;

/**
 * Opaque result of one unit-sieve run.
 */
typedef struct GfeSieve GfeSieve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library, as a static NUL-terminated string.
 */
const char *gfe_version(void);

/**
 * Message of the last failure on this thread, or null if the last call
 * succeeded. The pointer is owned by the library; do not free it. It is
 * invalidated by the next failing call on the same thread.
 */
const char *gfe_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer previously returned through a `char **`
 * out-parameter of this library, not yet freed.
 */
void gfe_string_free(char *s);

/**
 * Runs the unit sieve for exponent `p` (an odd prime other than 13 with
 * `p % 13 != 1`) and the given case code (`GFE_CASE_ONE` or
 * `GFE_CASE_TWO`). On success `*out` owns the result; release it with
 * [`gfe_sieve_free`].
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum GfeStatus gfe_sieve_run(uint64_t p, uint32_t sieve_case, struct GfeSieve **out);

/**
 * Exponent `p` of the run behind `handle`; 0 if `handle` is null.
 *
 * # Safety
 * `handle` must be null or a live sieve handle.
 */
uint64_t gfe_sieve_exponent(const struct GfeSieve *handle);

/**
 * Number of candidate pairs the run classed; 0 if `handle` is null.
 *
 * # Safety
 * `handle` must be null or a live sieve handle.
 */
uint64_t gfe_sieve_candidate_count(const struct GfeSieve *handle);

/**
 * Number of surviving unit classes; 0 if `handle` is null.
 *
 * # Safety
 * `handle` must be null or a live sieve handle.
 */
uint64_t gfe_sieve_survivor_count(const struct GfeSieve *handle);

/**
 * Writes the run's full report as a JSON string to `*out`; free it with
 * [`gfe_string_free`].
 *
 * # Safety
 * `handle` must be a live sieve handle; `out` must be valid for writing
 * one pointer.
 */
enum GfeStatus gfe_sieve_report_json(const struct GfeSieve *handle, char **out);

/**
 * Releases a sieve handle. Null is a no-op.
 *
 * # Safety
 * `handle` must be null or a live sieve handle, not yet freed.
 */
void gfe_sieve_free(struct GfeSieve *handle);

/**
 * Default auxiliary prime `q` paired with sieve exponent `p`, or 0 when
 * the table has no entry.
 */
uint64_t gfe_auxiliary_prime_for(uint64_t p);

/**
 * Runs the modular elimination step for `(p, q)`. Pass `q = 0` to use the
 * built-in auxiliary-prime table. `frey_data_json` may be null (the step
 * is then reported as skipped) or a JSON document with the same schema as
 * the CLI's data file. On success `*out` owns the result; release it with
 * [`gfe_elimination_free`].
 *
 * # Safety
 * `frey_data_json` must be null or a NUL-terminated string; `out` must be
 * valid for writing one pointer.
 */
enum GfeStatus gfe_modular_sieve_run(uint64_t p,
                                     uint64_t q,
                                     const char *frey_data_json,
                                     struct GfeElimination **out);

/**
 * Outcome code of the elimination behind `handle`:
 * `GFE_ELIMINATION_ELIMINATED`, `GFE_ELIMINATION_SKIPPED` or
 * `GFE_ELIMINATION_UNRESOLVED`; -1 if `handle` is null.
 *
 * # Safety
 * `handle` must be null or a live elimination handle.
 */
int32_t gfe_elimination_status(const struct GfeElimination *handle);

/**
 * Number of residue pairs matching the extraneous class mod `q`; 0 if
 * `handle` is null.
 *
 * # Safety
 * `handle` must be null or a live elimination handle.
 */
uint64_t gfe_elimination_pair_count(const struct GfeElimination *handle);

/**
 * Writes the elimination report as a JSON string to `*out`; free it with
 * [`gfe_string_free`].
 *
 * # Safety
 * `handle` must be a live elimination handle; `out` must be valid for
 * writing one pointer.
 */
enum GfeStatus gfe_elimination_report_json(const struct GfeElimination *handle, char **out);

/**
 * Releases an elimination handle. Null is a no-op.
 *
 * # Safety
 * `handle` must be null or a live elimination handle, not yet freed.
 */
void gfe_elimination_free(struct GfeElimination *handle);

/**
 * Checks a point against the integral curve model for exponent `p` and,
 * when it lies on the curve, runs the point-to-solution test. `point` is
 * `"INF"` or `"X;Y"` with each coordinate a comma-joined rational triple.
 * `on_curve` may be null; `out` receives the JSON report.
 *
 * # Safety
 * `point` must be a NUL-terminated string; `on_curve` must be null or
 * valid for writing one `bool`; `out` must be valid for writing one
 * pointer.
 */
enum GfeStatus gfe_verify_point(uint64_t p, const char *point, bool *on_curve, char **out);

/**
 * Exhaustive search for `a^13 + b^13 = c^n` with `|a|, |b| <= bound`,
 * coprime `(a, b)`, over the given exponents (`n >= 2`). Pass
 * `exponent_count = 0` for the default range 2 through 30. `out` receives
 * the JSON report.
 *
 * # Safety
 * `exponents` must be null only when `exponent_count` is 0, otherwise
 * valid for reading `exponent_count` values; `out` must be valid for
 * writing one pointer.
 */
enum GfeStatus gfe_search_json(uint64_t bound,
                               const uint32_t *exponents,
                               size_t exponent_count,
                               char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GFE1313_H */
