#ifndef PIGRAPH_H
#define PIGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PigraphStatus {
  PIGRAPH_STATUS_OK = 0,
  // The answer is no: the graph is rejected or the ordering is invalid.
  PIGRAPH_STATUS_REJECTED = 1,
  PIGRAPH_STATUS_NULL_POINTER = 2,
  PIGRAPH_STATUS_VERTEX_OUT_OF_RANGE = 3,
  PIGRAPH_STATUS_SELF_LOOP = 4,
  PIGRAPH_STATUS_DUPLICATE_EDGE = 5,
  PIGRAPH_STATUS_NOT_PERMUTATION = 6,
  PIGRAPH_STATUS_PARSE_ERROR = 7,
  PIGRAPH_STATUS_BUFFER_TOO_SMALL = 8,
  PIGRAPH_STATUS_INVALID_UTF8 = 9,
  PIGRAPH_STATUS_INTERNAL = 10,
} PigraphStatus;

typedef enum PigraphStage {
  PIGRAPH_STAGE_ACCEPTED = 0,
  PIGRAPH_STAGE_NOT_COCOMPARABILITY = 1,
  PIGRAPH_STAGE_AUX_NOT_BIPARTITE = 2,
  PIGRAPH_STAGE_PHI_UNSAT = 3,
} PigraphStage;

typedef struct PigraphGraph PigraphGraph;

typedef struct PigraphOutcome PigraphOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// A short static description of `status`.
const char *pigraph_status_message(enum PigraphStatus status);

// Builds a graph on `n` vertices from `m` edges given as `2m` endpoints.
//
// # Safety
// `edges` must point to `2 * m` readable values (or be null when `m == 0`)
// and `out` must be writable.
enum PigraphStatus pigraph_graph_new(size_t n,
                                     const size_t *edges,
                                     size_t m,
                                     struct PigraphGraph **out);

// Parses the text graph format (`n m` then `m` lines `u v`).
//
// # Safety
// `text` must be a NUL-terminated string and `out` must be writable.
enum PigraphStatus pigraph_graph_parse(const char *text, struct PigraphGraph **out);

// # Safety
// `g` must come from `pigraph_graph_new` or `pigraph_graph_parse` and not
// have been freed; null is ignored.
void pigraph_graph_free(struct PigraphGraph *g);

// # Safety
// `g` must be a live graph handle or null (which yields 0).
size_t pigraph_graph_vertex_count(const struct PigraphGraph *g);

// # Safety
// `g` must be a live graph handle or null (which yields 0).
size_t pigraph_graph_edge_count(const struct PigraphGraph *g);

// Runs the recognizer. Returns `Ok` whatever the verdict; inspect the
// outcome with `pigraph_outcome_stage`.
//
// # Safety
// `g` must be a live graph handle and `out` must be writable.
enum PigraphStatus pigraph_recognize(const struct PigraphGraph *g, struct PigraphOutcome **out);

// # Safety
// `o` must come from `pigraph_recognize` and not have been freed; null is
// ignored.
void pigraph_outcome_free(struct PigraphOutcome *o);

// # Safety
// `o` must be a live outcome handle.
enum PigraphStage pigraph_outcome_stage(const struct PigraphOutcome *o);

// Copies the apex ordering into `buf`. Returns `Rejected` (with
// `*written == 0`) if the graph was rejected.
//
// # Safety
// `o` must be a live outcome handle, `buf` must have room for `len` values
// and `written` must be writable.
enum PigraphStatus pigraph_outcome_ordering(const struct PigraphOutcome *o,
                                            size_t *buf,
                                            size_t len,
                                            size_t *written);

// Copies the rejection witness as a flat list of arcs `u0 v0 u1 v1 ...`:
// the forcing chain, the odd cycle of vertex pairs, or the closed chain of
// forced arcs. Accepted outcomes have an empty witness.
//
// # Safety
// As for `pigraph_outcome_ordering`.
enum PigraphStatus pigraph_outcome_witness(const struct PigraphOutcome *o,
                                           size_t *buf,
                                           size_t len,
                                           size_t *written);

// Checks an apex ordering: `Ok`, `Rejected`, or `NotPermutation`.
//
// # Safety
// `g` must be a live graph handle and `sigma` must point to `len` values
// (or be null when `len == 0`).
enum PigraphStatus pigraph_verify_apex_ordering(const struct PigraphGraph *g,
                                                const size_t *sigma,
                                                size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PIGRAPH_H */
