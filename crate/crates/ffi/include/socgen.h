#ifndef SOCGEN_H
#define SOCGEN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_INVALID_UTF8 = 2,
  SG_STATUS_INVALID_CONFIG = 3,
  SG_STATUS_INVALID_ARGUMENT = 4,
  SG_STATUS_IO = 5,
  SG_STATUS_PARSE = 6,
  SG_STATUS_INTERNAL = 7,
} SgStatus;

/**
 * A generated or loaded network, with node attributes when generated.
 */
typedef struct SgGraph SgGraph;

/**
 * Metrics of a graph. A `has_*` flag of false means the value is undefined
 * and the field holds 0.
 */
typedef struct SgMetrics {
  size_t nodes;
  size_t edges;
  bool has_density;
  double density;
  bool has_avg_degree;
  double avg_degree;
  bool has_clustering_coefficient;
  double clustering_coefficient;
  bool has_avg_geodesic_distance;
  double avg_geodesic_distance;
  bool has_degree_assortativity;
  double degree_assortativity;
  bool has_powerlaw;
  double powerlaw_alpha;
  size_t powerlaw_xmin;
} SgMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *sg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sg_version(void);

/**
 * Generates a network from a TOML config with an inline `[[attribute]]`
 * schema (a `schema` path resolves against the working directory).
 *
 * # Safety
 * `config_toml` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SgStatus sg_generate_toml(const char *config_toml, struct SgGraph **out);

/**
 * Generates one of the built-in reference networks, e.g. `"caltech"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SgStatus sg_generate_preset(const char *name, uint64_t seed, struct SgGraph **out);

/**
 * Loads an edge list. `node_count` of 0 infers the count from the largest id.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SgStatus sg_graph_load_edge_list(const char *path, size_t node_count, struct SgGraph **out);

/**
 * Writes the edge list (`i<TAB>j`, i < j, sorted).
 *
 * # Safety
 * `graph` must be a live handle and `path` a NUL-terminated string.
 */
enum SgStatus sg_graph_write_edge_list(const struct SgGraph *graph, const char *path);

/**
 * Node count; 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t sg_graph_node_count(const struct SgGraph *graph);

/**
 * Edge count; 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t sg_graph_edge_count(const struct SgGraph *graph);

/**
 * Degree of `node`.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum SgStatus sg_graph_degree(const struct SgGraph *graph, size_t node, size_t *out);

/**
 * Computes the structural metrics.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum SgStatus sg_graph_metrics(const struct SgGraph *graph, struct SgMetrics *out);

/**
 * Full key/value report, including homophily for generated graphs. Release
 * the string with `sg_string_free`.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum SgStatus sg_graph_report(const struct SgGraph *graph, char **out);

/**
 * Releases a graph handle. Null is ignored.
 *
 * # Safety
 * `graph` must be null or a handle not yet freed.
 */
void sg_graph_free(struct SgGraph *graph);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void sg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOCGEN_H */
