#ifndef SMALLGON_H
#define SMALLGON_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SgGraphClass {
  SG_GRAPH_CLASS_D_FAMILY = 0,
  SG_GRAPH_CLASS_B_FAMILY = 1,
  SG_GRAPH_CLASS_OTHER = 2,
} SgGraphClass;

typedef enum SgProblem {
  SG_PROBLEM_DN_STAR = 0,
  SG_PROBLEM_BN_STAR = 1,
} SgProblem;

/**
 * Result of every fallible call.
 */
typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  /**
   * Bad size, family parameter or other precondition.
   */
  SG_STATUS_DOMAIN = 2,
  SG_STATUS_INVALID_POLYGON = 3,
  SG_STATUS_NOT_CONVEX = 4,
  SG_STATUS_INFEASIBLE_ANGLES = 5,
  SG_STATUS_CONSTRUCTION_FAILURE = 6,
  SG_STATUS_NUMERIC = 7,
  /**
   * The solver returned a result that misses its tolerances. The handle is
   * still written.
   */
  SG_STATUS_NOT_CONVERGED = 8,
  /**
   * Output buffer too small; the required length was written back.
   */
  SG_STATUS_BUFFER_TOO_SMALL = 9,
  SG_STATUS_PANIC = 10,
} SgStatus;

/**
 * Opaque solver result.
 */
typedef struct SgOptimization SgOptimization;

/**
 * Opaque polygon with its measured metrics and diameter graph.
 */
typedef struct SgPolygon SgPolygon;

typedef struct SgMetrics {
  double perimeter;
  double width;
  double diameter;
  bool is_convex;
  bool is_small;
} SgMetrics;

typedef struct SgGraphSummary {
  size_t edge_count;
  size_t cycle_length;
  size_t pendant_count;
  enum SgGraphClass classification;
} SgGraphSummary;

typedef struct SgOptimizationSummary {
  size_t n;
  double objective;
  double residual_closure;
  double residual_anglesum;
  double projected_gradient;
  size_t iterations;
  size_t angle_count;
  bool converged;
} SgOptimizationSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into this library from the same thread.
 */
const char *sg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sg_version(void);

/**
 * Closure root `δ₀(n)` for `n = 2^s`, `s >= 4`.
 *
 * # Safety
 * `out` must be a valid pointer to a writable `double`.
 */
enum SgStatus sg_delta0(size_t n, double *out);

/**
 * Regular n-gon of unit diameter.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum SgStatus sg_polygon_regular(size_t n, struct SgPolygon **out);

/**
 * Reinhardt polygon with odd factor `m` of `n`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum SgStatus sg_polygon_reinhardt(size_t m, size_t n, struct SgPolygon **out);

/**
 * The alternating-angle polygon `D_n`, `n = 2^s`, `s >= 4`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum SgStatus sg_polygon_dn(size_t n, struct SgPolygon **out);

/**
 * Polygon from `count` interleaved `x, y` pairs. Must be convex.
 *
 * # Safety
 * `xy` must point to `2 * count` readable doubles; `out` must be writable.
 */
enum SgStatus sg_polygon_from_vertices(const double *xy, size_t count, struct SgPolygon **out);

/**
 * # Safety
 * `polygon` must be NULL or a handle from this library not yet freed.
 */
void sg_polygon_free(struct SgPolygon *polygon);

/**
 * Number of vertices, or 0 for NULL.
 *
 * # Safety
 * `polygon` must be NULL or a live handle.
 */
size_t sg_polygon_vertex_count(const struct SgPolygon *polygon);

/**
 * Writes the vertices, counter-clockwise, as interleaved `x, y` pairs into
 * `xy[..cap]` and the number of doubles needed into `len` (may be NULL).
 *
 * # Safety
 * `polygon` must be a live handle; `xy` must hold `cap` writable doubles.
 */
enum SgStatus sg_polygon_vertices(const struct SgPolygon *polygon,
                                  double *xy,
                                  size_t cap,
                                  size_t *len);

/**
 * # Safety
 * `polygon` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_polygon_metrics(const struct SgPolygon *polygon, struct SgMetrics *out);

/**
 * # Safety
 * `polygon` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_polygon_diameter_graph(const struct SgPolygon *polygon,
                                        struct SgGraphSummary *out);

/**
 * Unit-distance edges as flattened index pairs `i0, j0, i1, j1, ...`.
 *
 * # Safety
 * `polygon` must be a live handle; `pairs` must hold `cap` writable values.
 */
enum SgStatus sg_polygon_edges(const struct SgPolygon *polygon,
                               size_t *pairs,
                               size_t cap,
                               size_t *len);

/**
 * Polygon document as JSON. Release with [`sg_string_free`].
 *
 * # Safety
 * `polygon` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_polygon_to_json(const struct SgPolygon *polygon, char **out);

/**
 * Parse a polygon document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SgStatus sg_polygon_from_json(const char *json, struct SgPolygon **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void sg_string_free(char *s);

/**
 * Maximize the perimeter for `problem` at size `n`. Writes a handle on
 * [`SgStatus::Ok`] and on [`SgStatus::NotConverged`].
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum SgStatus sg_optimize(enum SgProblem problem,
                          size_t n,
                          uint64_t seed,
                          struct SgOptimization **out);

/**
 * # Safety
 * `result` must be NULL or a handle from [`sg_optimize`] not yet freed.
 */
void sg_optimization_free(struct SgOptimization *result);

/**
 * # Safety
 * `result` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_optimization_summary(const struct SgOptimization *result,
                                      struct SgOptimizationSummary *out);

/**
 * Optimal half-cycle angles.
 *
 * # Safety
 * `result` must be a live handle; `angles` must hold `cap` writable doubles.
 */
enum SgStatus sg_optimization_angles(const struct SgOptimization *result,
                                     double *angles,
                                     size_t cap,
                                     size_t *len);

/**
 * Rebuild the optimal polygon.
 *
 * # Safety
 * `result` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_optimization_polygon(const struct SgOptimization *result, struct SgPolygon **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SMALLGON_H */
