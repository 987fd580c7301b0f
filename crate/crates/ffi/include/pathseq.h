#ifndef PATHSEQ_H
#define PATHSEQ_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PathseqStatus {
  PATHSEQ_STATUS_OK = 0,
  PATHSEQ_STATUS_NULL_ARGUMENT = 1,
  PATHSEQ_STATUS_INVALID_UTF8 = 2,
  PATHSEQ_STATUS_INVALID_GRAPH = 3,
  PATHSEQ_STATUS_BUDGET_EXCEEDED = 4,
  PATHSEQ_STATUS_INVALID_INDEX = 5,
  PATHSEQ_STATUS_INVALID_SPEC = 6,
  PATHSEQ_STATUS_RECONSTRUCTION_FAILED = 7,
  PATHSEQ_STATUS_NOT_COMPARABLE = 8,
  PATHSEQ_STATUS_IO = 9,
  PATHSEQ_STATUS_PANIC = 10,
} PathseqStatus;

typedef struct PathseqGeneralized PathseqGeneralized;

typedef struct PathseqGraph PathseqGraph;

typedef struct PathseqIndex PathseqIndex;

typedef struct PathseqStarlike PathseqStarlike;

/**
 * Outcome of a bounded condition scan. Counterexample fields are meaningful
 * only when the matching `pass_*` is false.
 */
typedef struct PathseqConditions {
  bool pass_a;
  bool pass_b;
  size_t a_x;
  size_t a_y;
  size_t b_t;
  size_t b_x;
} PathseqConditions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *pathseq_last_error(void);

/**
 * Builds a graph from `edge_count` pairs stored flat in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values; `out_graph` must be writable.
 */
enum PathseqStatus pathseq_graph_new(size_t n,
                                     const size_t *edges,
                                     size_t edge_count,
                                     struct PathseqGraph **out_graph);

/**
 * Parses the `n e` header plus `u v` lines edge-list format.
 *
 * # Safety
 * `edge_list` must be a nul-terminated string; `out_graph` must be writable.
 */
enum PathseqStatus pathseq_graph_parse(const char *edge_list, struct PathseqGraph **out_graph);

/**
 * # Safety
 * `graph` must be null or a live handle from this library.
 */
void pathseq_graph_free(struct PathseqGraph *graph);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t pathseq_graph_vertex_count(const struct PathseqGraph *graph);

/**
 * # Safety
 * Handles must be live; `out_length` must be writable.
 */
enum PathseqStatus pathseq_graph_longest_path(const struct PathseqGraph *graph,
                                              uint64_t budget,
                                              size_t *out_length);

/**
 * Order-`h` invariant by path enumeration.
 *
 * # Safety
 * Handles must be live; `out_value` must be writable.
 */
enum PathseqStatus pathseq_graph_invariant(const struct PathseqGraph *graph,
                                           const struct PathseqIndex *index,
                                           size_t h,
                                           uint64_t budget,
                                           double *out_value);

/**
 * Writes `h_max + 1` values (orders `0..=h_max`) into `out_values`.
 *
 * # Safety
 * `out_values` must have room for `h_max + 1` doubles.
 */
enum PathseqStatus pathseq_graph_profile(const struct PathseqGraph *graph,
                                         const struct PathseqIndex *index,
                                         size_t h_max,
                                         uint64_t budget,
                                         double *out_values);

/**
 * Resolves an index identifier such as `connectivity` or `power:0.5`.
 * `seed` drives the symmetry trials for parameterized indices.
 *
 * # Safety
 * `id` must be a nul-terminated string; `out_index` must be writable.
 */
enum PathseqStatus pathseq_index_new(const char *id,
                                     uint64_t seed,
                                     struct PathseqIndex **out_index);

/**
 * # Safety
 * `index` must be null or a live handle.
 */
void pathseq_index_free(struct PathseqIndex *index);

/**
 * # Safety
 * `degrees` must point to `len` values; `out_value` must be writable.
 */
enum PathseqStatus pathseq_index_eval(const struct PathseqIndex *index,
                                      const uint32_t *degrees,
                                      size_t len,
                                      double *out_value);

/**
 * Starlike tree from branch counts: `counts[i]` branches of length `i + 1`.
 *
 * # Safety
 * `counts` must point to `len` values; `out_spec` must be writable.
 */
enum PathseqStatus pathseq_starlike_new(const size_t *counts,
                                        size_t len,
                                        struct PathseqStarlike **out_spec);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out_spec` must be writable.
 */
enum PathseqStatus pathseq_starlike_from_json(const char *json, struct PathseqStarlike **out_spec);

/**
 * # Safety
 * `spec` must be null or a live handle.
 */
void pathseq_starlike_free(struct PathseqStarlike *spec);

/**
 * Number of branches of the given length, or 0 for a null handle.
 *
 * # Safety
 * `spec` must be null or a live handle.
 */
size_t pathseq_starlike_branch_count(const struct PathseqStarlike *spec, size_t length);

/**
 * # Safety
 * `spec` must be null or a live handle.
 */
size_t pathseq_starlike_vertex_count(const struct PathseqStarlike *spec);

/**
 * # Safety
 * `spec` must be null or a live handle.
 */
size_t pathseq_starlike_longest_path(const struct PathseqStarlike *spec);

/**
 * Closed-form order-`h` invariant.
 *
 * # Safety
 * Handles must be live; `out_value` must be writable.
 */
enum PathseqStatus pathseq_starlike_invariant(const struct PathseqStarlike *spec,
                                              const struct PathseqIndex *index,
                                              size_t h,
                                              double *out_value);

/**
 * # Safety
 * `spec` must be live; `out_graph` must be writable.
 */
enum PathseqStatus pathseq_starlike_realize(const struct PathseqStarlike *spec,
                                            struct PathseqGraph **out_graph);

/**
 * Coalesces `K_clique` with a copy of `star` at its root.
 *
 * # Safety
 * `star` must be live; `out_spec` must be writable.
 */
enum PathseqStatus pathseq_generalized_new(size_t clique,
                                           const struct PathseqStarlike *star,
                                           struct PathseqGeneralized **out_spec);

/**
 * # Safety
 * `spec` must be null or a live handle.
 */
void pathseq_generalized_free(struct PathseqGeneralized *spec);

/**
 * # Safety
 * Handles must be live; `out_value` must be writable.
 */
enum PathseqStatus pathseq_generalized_invariant(const struct PathseqGeneralized *spec,
                                                 const struct PathseqIndex *index,
                                                 size_t h,
                                                 double *out_value);

/**
 * # Safety
 * `spec` must be live; `out_graph` must be writable.
 */
enum PathseqStatus pathseq_generalized_realize(const struct PathseqGeneralized *spec,
                                               struct PathseqGraph **out_graph);

/**
 * Coefficient of `L_h` in the order-`h` starlike invariant at root degree `m`.
 *
 * # Safety
 * `index` must be live; `out_value` must be writable.
 */
enum PathseqStatus pathseq_mu_coefficient(const struct PathseqIndex *index,
                                          size_t h,
                                          size_t m,
                                          double *out_value);

/**
 * Recovers a starlike tree on `n` vertices from `len` profile values.
 *
 * # Safety
 * `values` must point to `len` doubles; `out_spec` must be writable.
 */
enum PathseqStatus pathseq_reconstruct_starlike(size_t n,
                                                const double *values,
                                                size_t len,
                                                const struct PathseqIndex *index,
                                                double tol,
                                                struct PathseqStarlike **out_spec);

/**
 * First order separating two starlike trees. `out_order` is written only
 * when `*out_separated` is true.
 *
 * # Safety
 * Handles must be live; out pointers must be writable.
 */
enum PathseqStatus pathseq_distinguish_starlike(const struct PathseqStarlike *a,
                                                const struct PathseqStarlike *b,
                                                const struct PathseqIndex *index,
                                                double tol,
                                                bool *out_separated,
                                                size_t *out_order);

/**
 * Bounded scan of the distinguishability conditions; `theorem` is 7
 * (starlike) or 8 (generalized).
 *
 * # Safety
 * `index` must be live; `out_report` must be writable.
 */
enum PathseqStatus pathseq_check_conditions(const struct PathseqIndex *index,
                                            uint8_t theorem,
                                            size_t x_max,
                                            size_t t_max,
                                            double tol,
                                            struct PathseqConditions *out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATHSEQ_H */
