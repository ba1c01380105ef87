#ifndef HSCHECK_H
#define HSCHECK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for every fallible entry point.
 */
typedef enum HsStatus {
  HsStatus_Ok = 0,
  HsStatus_NullPointer = 1,
  HsStatus_InvalidUtf8 = 2,
  HsStatus_Parse = 3,
  HsStatus_InvalidInput = 4,
  HsStatus_Precondition = 5,
  HsStatus_PrecisionExhausted = 6,
  HsStatus_Unsupported = 7,
  HsStatus_Internal = 8,
  HsStatus_Panic = 9,
} HsStatus;

/**
 * Opaque report handle.
 */
typedef struct HsReport HsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Runs the full check on the field defined by `poly` at `prime`.
 *
 * # Safety
 * `poly` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HsStatus hs_check_field(const char *poly,
                             uint64_t prime,
                             uint32_t precision,
                             struct HsReport **out);

/**
 * Runs the local suite for `(p, e, f)` and the named case.
 *
 * # Safety
 * `case_name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HsStatus hs_check_local(uint64_t p,
                             uint32_t e,
                             uint32_t f,
                             const char *case_name,
                             uint32_t precision,
                             struct HsReport **out);

/**
 * Verdict as a compact JSON object, borrowed from `report`.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
const char *hs_report_verdict(const struct HsReport *report);

/**
 * Canonical JSON report, borrowed from `report`.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
const char *hs_report_json(const struct HsReport *report);

/**
 * Exit code the command-line tool would return, or -1 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
int32_t hs_report_exit_code(const struct HsReport *report);

/**
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void hs_report_free(struct HsReport *report);

/**
 * Residue mod `p` of `B_{1,ω}`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HsStatus hs_bernoulli_b1_omega_residue(uint64_t p, uint32_t precision, uint64_t *out);

/**
 * Message of the last failure on this thread; empty if none.
 */
const char *hs_error_message(void);

const char *hs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HSCHECK_H */
