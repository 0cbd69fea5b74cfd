#ifndef LITTELMANN_H
#define LITTELMANN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum LmStatus {
  LM_STATUS_OK = 0,
  LM_STATUS_NULL_POINTER = 1,
  LM_STATUS_INVALID_UTF8 = 2,
  LM_STATUS_PARSE = 3,
  LM_STATUS_INVALID_INPUT = 4,
  /**
   * The root operator sends the path to zero; the output is NULL.
   */
  LM_STATUS_ZERO = 5,
  /**
   * Crystal generation hit its limits, or a non-finite type had none.
   */
  LM_STATUS_LIMIT = 6,
  LM_STATUS_VERIFICATION = 7,
  LM_STATUS_PANIC = 8,
} LmStatus;

/**
 * A path with rational segments.
 */
typedef struct LmPath LmPath;

/**
 * A validated root system.
 */
typedef struct LmRootSystem LmRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread. Valid until the next call
 * on the same thread.
 */
const char *lm_last_error(void);

/**
 * Releases a string returned by this library.
 */
void lm_string_free(char *s);

/**
 * Built-in type such as `"A2"`, `"G2"`, `"E8"` or `"A1~"`.
 */
enum LmStatus lm_root_system_builtin(const char *name, struct LmRootSystem **out);

/**
 * `{"name": ..., "cartan": [[...]]}` with `A[i][j] = <alpha_j, alpha_i^v>`.
 */
enum LmStatus lm_root_system_from_json(const char *json, struct LmRootSystem **out);

/**
 * Rank, or 0 for NULL.
 */
size_t lm_root_system_rank(const struct LmRootSystem *rs);

void lm_root_system_free(struct LmRootSystem *rs);

/**
 * Parses a JSON list of segments, each a list of rational strings.
 */
enum LmStatus lm_path_from_json(const struct LmRootSystem *rs,
                                const char *json,
                                struct LmPath **out);

/**
 * Straight path to an integral weight in fundamental coordinates.
 */
enum LmStatus lm_path_straight(const struct LmRootSystem *rs,
                               const int64_t *coords,
                               size_t rank,
                               struct LmPath **out);

enum LmStatus lm_path_to_json(const struct LmPath *path, char **out);

/**
 * Endpoint as a JSON list of rational strings.
 */
enum LmStatus lm_path_endpoint_json(const struct LmPath *path, char **out);

void lm_path_free(struct LmPath *path);

/**
 * `f_{alpha_index}`; returns `LM_STATUS_ZERO` with a NULL output when the
 * result is zero.
 */
enum LmStatus lm_path_lower(const struct LmRootSystem *rs,
                            const struct LmPath *path,
                            size_t index,
                            struct LmPath **out);

/**
 * `e_{alpha_index}`, with the same zero convention as [`lm_path_lower`].
 */
enum LmStatus lm_path_raise(const struct LmRootSystem *rs,
                            const struct LmPath *path,
                            size_t index,
                            struct LmPath **out);

/**
 * Writes whether the path is extremal.
 */
enum LmStatus lm_path_is_extremal(const struct LmRootSystem *rs,
                                  const struct LmPath *path,
                                  bool *out);

/**
 * Decomposes `V(mu) (x) V(nu)` into `{"truncated": bool, "components":
 * [{"weight": [...], "multiplicity": n}, ...]}`. `max_nodes == 0` means
 * unbounded, which non-finite types reject with `LM_STATUS_LIMIT`.
 */
enum LmStatus lm_decompose(const struct LmRootSystem *rs,
                           const int64_t *mu,
                           const int64_t *nu,
                           size_t rank,
                           size_t max_nodes,
                           char **out);

/**
 * Crate version, statically allocated.
 */
const char *lm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LITTELMANN_H */
