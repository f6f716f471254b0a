#ifndef CUSPIDAL_H
#define CUSPIDAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every entry point.
typedef enum CuspStatus {
  CUSP_STATUS_OK = 0,
  // A required pointer argument was null.
  CUSP_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  CUSP_STATUS_INVALID_UTF8 = 2,
  // Malformed germ spec, unknown builtin name or bad option value.
  CUSP_STATUS_INVALID_INPUT = 3,
  // The germ is outside the domain of the operation (wrong 2-jet,
  // degenerate quadratic term, no real branch, ...).
  CUSP_STATUS_NOT_APPLICABLE = 4,
  // An iterative solver did not converge.
  CUSP_STATUS_NUMERICAL_FAILURE = 5,
  // Internal error, including a caught panic.
  CUSP_STATUS_INTERNAL = 6,
} CuspStatus;

// Opaque germ handle.
typedef struct CuspGerm CuspGerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a germ-spec JSON document. `order == 0` keeps the order in the spec.
//
// Exact rational arithmetic is used unless normalization needs an irrational
// square root, in which case the handle falls back to double precision.
//
// # Safety
// `json` must be a NUL-terminated string and `out` valid for writes.
enum CuspStatus cusp_germ_from_json(const char *json, uint32_t order, struct CuspGerm **out);

// Built-in germ by name (`fs_plus`, `mond:S1`, ...). `order == 0` selects the
// default truncation order.
//
// # Safety
// `name` must be a NUL-terminated string and `out` valid for writes.
enum CuspStatus cusp_germ_builtin(const char *name, uint32_t order, struct CuspGerm **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `germ` must be null or a handle not yet freed.
void cusp_germ_free(struct CuspGerm *germ);

// Whether the germ is a frontal through its truncation order.
//
// # Safety
// `germ` must be a live handle and `out` valid for writes.
enum CuspStatus cusp_germ_is_frontal(const struct CuspGerm *germ, bool *out);

// Multi-line classification report (2-jet, frontality, obstruction, label).
//
// # Safety
// `germ` must be a live handle and `out` valid for writes.
enum CuspStatus cusp_germ_classify(const struct CuspGerm *germ, char **out);

// Coefficients `alpha[0..3]` of `u(s~) = alpha1 s~ + alpha2 s~^2 + alpha3 s~^3`
// along the S2 trajectory of the frontal part.
//
// # Safety
// `germ` must be a live handle and `alpha` valid for three writes.
enum CuspStatus cusp_trajectory_series(const struct CuspGerm *germ, double *alpha);

// Bias `r_b` and secondary cuspidal curvature `r_c` at the S2 point on the
// `+s~` side of the trajectory.
//
// # Safety
// `germ` must be a live handle; `r_b` and `r_c` valid for writes.
enum CuspStatus cusp_bias_secondary(const struct CuspGerm *germ,
                                    double s_tilde,
                                    double *r_b,
                                    double *r_c);

// CSV of invariants at both S2 points for `count` values of `s~` in
// `[s_min, s_max]`.
//
// # Safety
// `germ` must be a live handle and `out` valid for writes.
enum CuspStatus cusp_sweep_csv(const struct CuspGerm *germ,
                               double s_min,
                               double s_max,
                               size_t count,
                               char **out);

// OBJ mesh of the surface at parameter `s` on a `grid x grid` lattice over
// `[-extent, extent]^2`.
//
// # Safety
// `germ` must be a live handle and `out` valid for writes.
enum CuspStatus cusp_mesh_obj(const struct CuspGerm *germ,
                              double s,
                              size_t grid,
                              double extent,
                              bool frontalize,
                              char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void cusp_string_free(char *s);

// Message of the last failed call on this thread, or null after a success.
// Valid until the next call into the library on the same thread.
const char *cusp_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUSPIDAL_H */
