#ifndef SATLAB_H
#define SATLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every entry point.
 */
typedef enum SatlabStatus {
  SATLAB_STATUS_OK = 0,
  SATLAB_STATUS_NULL_POINTER = 1,
  SATLAB_STATUS_INVALID_ARGUMENT = 2,
  SATLAB_STATUS_PARSE_ERROR = 3,
  SATLAB_STATUS_NONEXISTENT = 4,
  SATLAB_STATUS_INFEASIBLE = 5,
  SATLAB_STATUS_PANIC = 6,
} SatlabStatus;

/**
 * Opaque graph handle.
 */
typedef struct SatlabGraph SatlabGraph;

/**
 * Opaque system handle.
 */
typedef struct SatlabSystem SatlabSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or NULL. Valid until the next call.
 */
const char *satlab_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void satlab_string_free(char *s);

/**
 * Parses graph6 or sparse6 text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum SatlabStatus satlab_graph_parse(const char *text, struct SatlabGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be freed twice.
 */
void satlab_graph_free(struct SatlabGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `n`, `edges` writable.
 */
enum SatlabStatus satlab_graph_size(const struct SatlabGraph *g, size_t *n, size_t *edges);

/**
 * Encodes as graph6; the string is released with `satlab_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum SatlabStatus satlab_graph_to_graph6(const struct SatlabGraph *g, char **out);

/**
 * `K_r`-saturation, optionally with twin-freeness (`twin_free`) or the
 * degree-`t` twin condition (`t > 0`).
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum SatlabStatus satlab_graph_check(const struct SatlabGraph *g,
                                     size_t r,
                                     bool twin_free,
                                     size_t t,
                                     bool *out);

/**
 * A twin-free `K_r`-saturated graph on `n` vertices; `SATLAB_STATUS_NONEXISTENT` in the exception cases.
 *
 * # Safety
 * `out` must be writable.
 */
enum SatlabStatus satlab_twin_free_saturated(size_t n,
                                             size_t r,
                                             struct SatlabGraph **out);

/**
 * Parses a system JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum SatlabStatus satlab_system_parse(const char *json, struct SatlabSystem **out);

/**
 * The base family for `(t, l)`, or its lift when `lifted` is set.
 *
 * # Safety
 * `out` must be writable.
 */
enum SatlabStatus satlab_system_family(size_t t, size_t l, bool lifted, struct SatlabSystem **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void satlab_system_free(struct SatlabSystem *s);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum SatlabStatus satlab_system_to_json(const struct SatlabSystem *s, char **out);

/**
 * Validity and maximality; `maximal` is false whenever the system is invalid.
 *
 * # Safety
 * `s` must be a live handle and both outputs writable.
 */
enum SatlabStatus satlab_system_check(const struct SatlabSystem *s, bool *valid, bool *maximal);

/**
 * The graph `G(H, F)`.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum SatlabStatus satlab_system_assemble(const struct SatlabSystem *s, struct SatlabGraph **out);

/**
 * Runs the oracle `kind` with parameters given as a JSON object such as
 * `{"n": 6, "r": 3}` (optional `"budget"`), writing the record as JSON.
 *
 * # Safety
 * `kind` and `params_json` must be NUL-terminated strings and `out` writable.
 */
enum SatlabStatus satlab_search_json(const char *kind, const char *params_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SATLAB_H */
