/* C interface of the tdf treedepth solver. */

#ifndef TDF_H
#define TDF_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C API call.
 */
typedef enum {
  /**
   * Success.
   */
  TDF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TDF_STATUS_NULL_ARGUMENT = 1,
  /**
   * The input graph or tree text could not be parsed.
   */
  TDF_STATUS_PARSE_ERROR = 2,
  /**
   * The decomposition is not valid for the graph.
   */
  TDF_STATUS_INVALID_TREE = 3,
  /**
   * An argument was out of range.
   */
  TDF_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The implementation panicked; this is a bug.
   */
  TDF_STATUS_INTERNAL = 5,
} TdfStatus;

/**
 * Opaque decomposition handle.
 */
typedef struct TdfDecomposition TdfDecomposition;

/**
 * Opaque graph handle.
 */
typedef struct TdfGraph TdfGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread.
 *
 * The pointer stays valid until the next failing call on the same
 * thread. Never free it.
 */
const char *tdf_last_error(void);

/**
 * Parses a graph in `.gr` format from a byte buffer.
 *
 * On success stores a new handle in `*out`; free it with
 * [`tdf_graph_free`].
 *
 * # Safety
 * `data` must point to `len` readable bytes and `out` to a writable
 * pointer slot.
 */
TdfStatus tdf_graph_parse(const uint8_t *data, uintptr_t len, TdfGraph **out);

/**
 * Frees a graph handle; accepts null.
 *
 * # Safety
 * `g` must be null or a pointer returned by [`tdf_graph_parse`] that has
 * not been freed yet.
 */
void tdf_graph_free(TdfGraph *g);

/**
 * Number of vertices.
 *
 * # Safety
 * `g` must be a live graph handle.
 */
uint32_t tdf_graph_vertex_count(const TdfGraph *g);

/**
 * Number of distinct undirected edges.
 *
 * # Safety
 * `g` must be a live graph handle.
 */
uint64_t tdf_graph_edge_count(const TdfGraph *g);

/**
 * Runs the full solve pipeline.
 *
 * `time_limit_ms` of 0 means no wall-clock limit and `max_rounds` of 0
 * means the default escalation depth; passing 0 for both solves with the
 * default bounded effort. On success stores a new decomposition handle
 * in `*out`; free it with [`tdf_decomposition_free`].
 *
 * # Safety
 * `g` must be a live graph handle and `out` a writable pointer slot.
 */
TdfStatus tdf_solve(const TdfGraph *g,
                    uint64_t seed,
                    uint64_t time_limit_ms,
                    uint32_t max_rounds,
                    TdfDecomposition **out);

/**
 * Frees a decomposition handle; accepts null.
 *
 * # Safety
 * `d` must be null or a live decomposition handle.
 */
void tdf_decomposition_free(TdfDecomposition *d);

/**
 * Depth of the decomposition.
 *
 * # Safety
 * `d` must be a live decomposition handle.
 */
uint32_t tdf_decomposition_depth(const TdfDecomposition *d);

/**
 * Parent of 1-based `vertex`, `0` for roots, `UINT32_MAX` when the
 * vertex is out of range.
 *
 * # Safety
 * `d` must be a live decomposition handle.
 */
uint32_t tdf_decomposition_parent(const TdfDecomposition *d, uint32_t vertex);

/**
 * Serializes the decomposition in `.tree` format into a NUL-terminated
 * string stored in `*out`; free it with [`tdf_string_free`].
 *
 * # Safety
 * `d` must be a live decomposition handle and `out` a writable slot.
 */
TdfStatus tdf_decomposition_to_tree(const TdfDecomposition *d, char **out);

/**
 * Frees a string returned by this library; accepts null.
 *
 * # Safety
 * `s` must be null or a string returned by [`tdf_decomposition_to_tree`]
 * that has not been freed yet.
 */
void tdf_string_free(char *s);

/**
 * Checks a parent vector against a graph.
 *
 * `parents` holds `n` entries, 1-based with `0` for roots, and `n` must
 * equal the graph's vertex count. Returns [`TdfStatus::Ok`] for a valid
 * decomposition of claimed depth `claimed_depth`, otherwise
 * [`TdfStatus::InvalidTree`] with the violation in [`tdf_last_error`].
 *
 * # Safety
 * `g` must be a live graph handle and `parents` must point to `n`
 * readable entries.
 */
TdfStatus tdf_verify(const TdfGraph *g,
                     const uint32_t *parents,
                     uintptr_t n,
                     uint32_t claimed_depth);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TDF_H */
