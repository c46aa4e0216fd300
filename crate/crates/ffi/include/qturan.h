#ifndef QTURAN_H
#define QTURAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QtStatus {
  QT_STATUS_OK = 0,
  QT_STATUS_NULL_POINTER = 1,
  QT_STATUS_INVALID_ARGUMENT = 2,
  QT_STATUS_PARSE = 3,
  QT_STATUS_OUT_OF_RANGE = 4,
  QT_STATUS_PROFILE_LIMIT = 5,
  QT_STATUS_SOLVER = 6,
  QT_STATUS_BUFFER_TOO_SMALL = 7,
  QT_STATUS_PANIC = 8,
} QtStatus;

/**
 * Opaque graph handle.
 */
typedef struct QtGraph QtGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread (empty after success).
 * Valid until the next call on the same thread.
 */
const char *qt_last_error(void);

/**
 * Library version, static storage.
 */
const char *qt_version(void);

/**
 * Parses graph6 into a new handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum QtStatus qt_graph_from_graph6(const char *text, struct QtGraph **out);

/**
 * Builds a graph on `n` vertices from `m` pairs stored flat in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * m` values (may be null when `m = 0`).
 */
enum QtStatus qt_graph_from_edges(size_t n, const size_t *edges, size_t m, struct QtGraph **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void qt_graph_free(struct QtGraph *g);

/**
 * # Safety
 * `g` must be a live handle, `out` valid.
 */
enum QtStatus qt_graph_order(const struct QtGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle, `out` valid.
 */
enum QtStatus qt_graph_edge_count(const struct QtGraph *g, size_t *out);

/**
 * Writes graph6 plus a nul into `buf`. `needed` (optional) receives the
 * required size including the nul; a short buffer gives `BufferTooSmall`.
 *
 * # Safety
 * `buf` must hold `len` bytes (may be null when `len = 0`).
 */
enum QtStatus qt_graph_to_graph6(const struct QtGraph *g, char *buf, size_t len, size_t *needed);

/**
 * Signless Laplacian spectral radius and its residual.
 *
 * # Safety
 * `g` must be a live handle; `value` valid; `residual` may be null.
 */
enum QtStatus qt_q_radius(const struct QtGraph *g, double tol, double *value, double *residual);

/**
 * Adjacency spectral radius and its residual.
 *
 * # Safety
 * As `qt_q_radius`.
 */
enum QtStatus qt_lambda_radius(const struct QtGraph *g,
                               double tol,
                               double *value,
                               double *residual);

/**
 * `q` of the complete multipartite graph with `k` part sizes.
 *
 * # Safety
 * `sizes` must point to `k` values.
 */
enum QtStatus qt_q_multipartite(const size_t *sizes, size_t k, double *out);

/**
 * Number of `r`-cliques.
 *
 * # Safety
 * `g` must be a live handle, `out` valid.
 */
enum QtStatus qt_count_cliques(const struct QtGraph *g, size_t r, uint64_t *out);

/**
 * Edit distance to the balanced complete `k`-partite graph.
 *
 * # Safety
 * `g` must be a live handle, `out` valid.
 */
enum QtStatus qt_edit_distance(const struct QtGraph *g, size_t k, size_t *out);

/**
 * Runs a reduction (`algorithm` 1 or 2) and returns its trace as JSON.
 * Parameters are fractions `num/den`.
 *
 * # Safety
 * `g` must be a live handle, `out` valid; free the string with `qt_string_free`.
 */
enum QtStatus qt_reduce_json(const struct QtGraph *g,
                             uint32_t algorithm,
                             int64_t gamma_num,
                             int64_t gamma_den,
                             int64_t alpha_num,
                             int64_t alpha_den,
                             int64_t beta_num,
                             int64_t beta_den,
                             char **out);

/**
 * Runs a verification suite and returns its report as JSON; `k = 0`
 * means no `k`.
 *
 * # Safety
 * `suite` must be a nul-terminated string, `out` valid.
 */
enum QtStatus qt_verify_json(const char *suite, size_t n_max, size_t k, char **out);

/**
 * Releases a string returned by the library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QTURAN_H */
