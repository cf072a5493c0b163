#ifndef CARTIER_LIFT_H
#define CARTIER_LIFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum ClStatus {
  CL_STATUS_OK = 0,
  // A required pointer argument was null.
  CL_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  CL_STATUS_UTF8 = 2,
  // Malformed input (bad TOML, bad field values, non-prime p, ...).
  CL_STATUS_INVALID_INPUT = 3,
  // Input outside an operation's precondition or the supported model classes.
  CL_STATUS_UNSUPPORTED = 4,
  // An internal consistency check failed.
  CL_STATUS_INTERNAL = 5,
  // The caller's buffer is too small; the needed size was written.
  CL_STATUS_BUFFER_TOO_SMALL = 6,
  // A Rust panic was caught at the boundary.
  CL_STATUS_PANIC = 7,
} ClStatus;

// Opaque curve handle.
typedef struct ClCurve ClCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
//
// The pointer stays valid until the next library call on the same thread.
const char *cl_last_error(void);

// Library version as a static NUL-terminated string.
const char *cl_version(void);

// Parses a curve description (the CLI's TOML format) into a new handle.
//
// # Safety
// `toml` must be a NUL-terminated string and `out` a writable pointer.
enum ClStatus cl_curve_from_toml(const char *toml, struct ClCurve **out);

// Releases a handle from `cl_curve_from_toml`. Null is ignored.
//
// # Safety
// `curve` must be null or a live handle that is not used afterwards.
void cl_curve_free(struct ClCurve *curve);

// # Safety
// `curve` must be a live handle and `out` writable.
enum ClStatus cl_curve_genus(const struct ClCurve *curve, uint64_t *out);

// # Safety
// `curve` must be a live handle and `out` writable.
enum ClStatus cl_curve_p_rank(const struct ClCurve *curve, uint64_t *out);

// # Safety
// `curve` must be a live handle and `out` writable.
enum ClStatus cl_curve_a_number(const struct ClCurve *curve, uint64_t *out);

// Writes the g×g Cartier–Manin matrix row-major into `buf`.
//
// `*genus` always receives g. If `len < g*g` nothing is written and
// `CL_STATUS_BUFFER_TOO_SMALL` is returned. Genus 0 writes nothing and succeeds.
//
// # Safety
// `curve` must be a live handle, `genus` writable, and `buf` valid for `len` entries
// (it may be null when `len` is 0).
enum ClStatus cl_curve_cartier_manin(const struct ClCurve *curve,
                                     uint32_t *buf,
                                     uintptr_t len,
                                     uintptr_t *genus);

// Runs `analyze-curve` on a curve description; `*out_json` receives the report.
//
// # Safety
// `toml` must be NUL-terminated and `out_json` writable. Free the result with `cl_string_free`.
enum ClStatus cl_analyze_curve_toml(const char *toml, uintptr_t precision, char **out_json);

// Runs `check-lift` on a morphism description; `*out_json` receives the report.
//
// # Safety
// `toml` must be NUL-terminated and `out_json` writable. Free the result with `cl_string_free`.
enum ClStatus cl_check_lift_toml(const char *toml, char **out_json);

// Builds the Artin–Schreier example over `y^2 = f` with pole order `m`.
//
// `f` holds `f_len` coefficients in ascending degree.
//
// # Safety
// `f` must be valid for `f_len` reads and `out_json` writable. Free the result with
// `cl_string_free`.
enum ClStatus cl_construct_example(uint64_t p,
                                   const int64_t *f,
                                   uintptr_t f_len,
                                   uint64_t m,
                                   char **out_json);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library that is not used afterwards.
void cl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARTIER_LIFT_H */
