/*
 * Copyright 2026 The Pentaweave Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * pentaweave C API.
 *
 * All objects are opaque handles created by pw_*_create / pw_*_generate
 * style calls and released with the matching pw_*_destroy. Every call that
 * can fail returns a pw_status; on failure the output handle is left NULL
 * and pw_last_error_message() describes the problem for the calling thread.
 * Handles are not shared between threads by the library; distinct handles
 * may be used concurrently.
 */

#ifndef PENTAWEAVE_PENTAWEAVE_H_
#define PENTAWEAVE_PENTAWEAVE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PENTAWEAVE_BUILDING_LIBRARY)
#define PW_API __declspec(dllexport)
#else
#define PW_API __declspec(dllimport)
#endif
#else
#define PW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pw_status {
  PW_OK = 0,
  PW_ERR_INVALID_PARAMETER = 1,
  PW_ERR_OUT_OF_RANGE = 2,
  PW_ERR_NON_MANIFOLD = 3,
  PW_ERR_DEGENERATE_FACE = 4,
  PW_ERR_SELF_INTERSECTION = 5,
  PW_ERR_INCONSISTENT_ORIENTATION = 6,
  PW_ERR_AMBIGUOUS_HALF_PLANE = 7,
  PW_ERR_NOT_TRIANGLE_MESH = 8,
  PW_ERR_NOT_QUAD_MESH = 9,
  PW_ERR_NOT_BIPARTITE = 10,
  PW_ERR_INVALID_TRIANGLE_COLORING = 11,
  PW_ERR_MISSING_PROVENANCE = 12,
  PW_ERR_MISSING_ORIGIN_RECORDS = 13,
  PW_ERR_NO_INTERIOR_EDGES = 14,
  PW_ERR_UNKNOWN_SEED = 15,
  PW_ERR_INSUFFICIENT_DATA = 16,
  PW_ERR_DEPTH_TOO_LARGE = 17,
  PW_ERR_SYNTAX = 18,
  PW_ERR_IO = 19,
  PW_ERR_INTERNAL = 20,
  PW_ERR_NULL_ARGUMENT = 21,
  PW_ERR_OUT_OF_MEMORY = 22
} pw_status;

/* Library version, e.g. "0.1.0". */
PW_API const char* pw_version(void);

/* Stable name of a status code, e.g. "NotTriangleMesh". */
PW_API const char* pw_status_name(pw_status status);

/* Message of the last failed call on this thread ("" if none). */
PW_API const char* pw_last_error_message(void);

/* True for failures caused by invalid input rather than a broken internal
 * invariant (PW_ERR_INTERNAL, PW_ERR_OUT_OF_MEMORY). */
PW_API int pw_status_is_validation(pw_status status);

/* ---- byte strings ------------------------------------------------------- */

typedef struct pw_string pw_string;

PW_API const char* pw_string_data(const pw_string* s); /* NUL-terminated */
PW_API size_t pw_string_size(const pw_string* s);      /* excluding NUL */
PW_API void pw_string_destroy(pw_string* s);

/* ---- meshes ------------------------------------------------------------- */

typedef struct pw_mesh pw_mesh;

/* Generator specs: "pentagon", "ngon:N", "fan:N", "grid:WxH",
 * "trigrid:WxH", "flower". */
PW_API pw_status pw_mesh_generate(const char* spec, pw_mesh** out);

/* pmesh text ("pmesh 1", "v x y", "f i j k ..." with 1-based indices). */
PW_API pw_status pw_mesh_parse(const char* text, size_t size, pw_mesh** out);
PW_API pw_status pw_mesh_read_file(const char* path, pw_mesh** out);

/* xy holds 2 * vertex_count coordinates; face k uses face_sizes[k]
 * consecutive entries of indices (0-based). */
PW_API pw_status pw_mesh_create(const double* xy, size_t vertex_count, const int32_t* face_sizes,
                                size_t face_count, const int32_t* indices, pw_mesh** out);

PW_API void pw_mesh_destroy(pw_mesh* mesh);

PW_API pw_status pw_mesh_counts(const pw_mesh* mesh, size_t* vertices, size_t* edges, size_t* faces);
PW_API pw_status pw_mesh_euler_characteristic(const pw_mesh* mesh, long long* chi);
PW_API pw_status pw_mesh_boundary_edge_count(const pw_mesh* mesh, size_t* count);
PW_API pw_status pw_mesh_vertex(const pw_mesh* mesh, size_t index, double* x, double* y);

/* Writes up to capacity vertex ids; *degree receives the face degree. */
PW_API pw_status pw_mesh_face(const pw_mesh* mesh, size_t index, int32_t* vertices, size_t capacity,
                              size_t* degree);

/* Number of faces with a reflex or straight corner (tolerance on the
 * normalized corner cross product). */
PW_API pw_status pw_mesh_nonconvex_face_count(const pw_mesh* mesh, double tolerance, size_t* count);

PW_API pw_status pw_mesh_write(const pw_mesh* mesh, pw_string** out);

/* fill: "none", "face" or "coloring" (2-coloring of a quad mesh). */
PW_API pw_status pw_mesh_svg(const pw_mesh* mesh, const char* fill, const char* palette, pw_string** out);

/* ---- subdivision -------------------------------------------------------- */

typedef struct pw_subdivision pw_subdivision;

typedef struct pw_snub_options {
  int smoothing; /* nonzero: move inner vertices (default 1) */
  int seed_edge; /* edge carrying the seed handedness at step 1 */
  int seed_flag; /* +1 or -1 */
} pw_snub_options;

PW_API pw_snub_options pw_snub_options_default(void);

/* scheme: "snub", "loop", "butterfly", "sqrt3", "midedge",
 * "catmull-clark", "doo-sabin". options may be NULL (defaults); only the
 * snub scheme reads it. */
PW_API pw_status pw_subdivide(const pw_mesh* input, const char* scheme, int steps, const pw_snub_options* options,
                              pw_subdivision** out);
PW_API void pw_subdivision_destroy(pw_subdivision* run);

/* Meshes are numbered 0 (input) .. steps. */
PW_API size_t pw_subdivision_steps(const pw_subdivision* run);

/* check: 1 when the snub count recursion holds for step t, 0 when it does
 * not, -1 where it does not apply (t = 0, classic schemes). */
PW_API pw_status pw_subdivision_counts(const pw_subdivision* run, size_t t, size_t* vertices, size_t* edges,
                                       size_t* faces, long long* euler, int* check);

/* A copy of mesh t. */
PW_API pw_status pw_subdivision_mesh(const pw_subdivision* run, size_t t, pw_mesh** out);

/* SVG of mesh t; highlight_z_middle draws the middle edges of the
 * Z-triplets of snub steps in red. fill as for pw_mesh_svg. */
PW_API pw_status pw_subdivision_svg(const pw_subdivision* run, size_t t, const char* fill, int highlight_z_middle,
                                    pw_string** out);

/* Boundary length of every mesh of a snub run. */
PW_API pw_status pw_subdivision_boundary_lengths(const pw_subdivision* run, double* lengths, size_t capacity,
                                                 size_t* count);

/* ---- fractal analysis --------------------------------------------------- */

/* 1 - slope of log L_t against t log(scale_ratio); scale_ratio <= 0 selects
 * 1/sqrt(7). */
PW_API pw_status pw_fractal_dimension(const double* lengths, size_t count, double scale_ratio, double* dimension,
                                      double* residual);

/* Box counting on the boundary loops of a mesh, 2^k boxes per side. */
PW_API pw_status pw_box_counting_dimension(const pw_mesh* mesh, int k_min, int k_max, double* dimension,
                                           double* residual);

/* L-system F -> ∇F−F+F△: symbols (UTF-8) and an SVG of the polyline.
 * Either output may be NULL. */
PW_API pw_status pw_lsystem(int depth, pw_string** symbols, pw_string** svg, size_t* segments);

typedef struct pw_raster pw_raster;

/* First-hit raster of snub refinement of input, refined locally around
 * pixels that can still be hit, for at most max_steps steps. window is
 * NULL (automatic) or {lo_x, lo_y, hi_x, hi_y}. */
PW_API pw_status pw_raster_first_hit(const pw_mesh* input, int resolution, int max_steps,
                                     const pw_snub_options* options, const double* window, pw_raster** out);
PW_API void pw_raster_destroy(pw_raster* raster);

/* saturation_step: -1 when not established. */
PW_API pw_status pw_raster_info(const pw_raster* raster, int* width, int* height, int* exhausted,
                                int* saturation_step, size_t* steps_computed);
PW_API pw_status pw_raster_new_pixels(const pw_raster* raster, size_t* counts, size_t capacity, size_t* count);

/* Step of pixel (col, row), -1 if never hit. */
PW_API pw_status pw_raster_pixel(const pw_raster* raster, int col, int row, int* step);

PW_API pw_status pw_raster_ppm(const pw_raster* raster, pw_string** out); /* binary P6 */
PW_API pw_status pw_raster_pgm(const pw_raster* raster, pw_string** out); /* binary P5 */

/* ---- weaving ------------------------------------------------------------ */

typedef struct pw_weave pw_weave;

/* mode: "snub-glue", "quad-2color", "tri-glue", "sqrt3-quadize",
 * "face-split". The input is refined by `steps` steps of the mode's scheme
 * (snub, Catmull-Clark, Loop, sqrt(3); snub for face-split) first. */
PW_API pw_status pw_weave_create(const pw_mesh* input, const char* mode, int steps, const pw_snub_options* options,
                                 pw_weave** out);
PW_API void pw_weave_destroy(pw_weave* weave);

PW_API pw_status pw_weave_counts(const pw_weave* weave, size_t* strands, size_t* crossings, size_t* visits);

/* Strand document (JSON). */
PW_API pw_status pw_weave_json(const pw_weave* weave, pw_string** out);

/* Empty string when the strand and crossing records agree. */
PW_API pw_status pw_weave_check(const pw_weave* weave, pw_string** problem);

/* Ribbons over the refined mesh, under-crossings broken. */
PW_API pw_status pw_weave_ribbon_svg(const pw_weave* weave, double width_fraction, const char* palette,
                                     pw_string** out);

/* Crossing tiles filled with the colour of the strand passing over. */
PW_API pw_status pw_weave_tiles_svg(const pw_weave* weave, const char* palette, pw_string** out);

/* Closed ribbon outlines grouped by rotation sector; sectors <= 0 uses the
 * rotational symmetry order of the input mesh. */
PW_API pw_status pw_weave_cut_template_svg(const pw_weave* weave, double width_fraction, int sectors,
                                           pw_string** out, int* group_count);

typedef struct pw_split_report {
  size_t parents;      /* coarse strand pieces touching the region */
  size_t children;     /* fine pieces in the region following them */
  size_t orphans;      /* fine pieces in the region following nothing */
  size_t min_children; /* per parent */
  size_t max_children;
} pw_split_report;

/* Strand genealogy between two weavings of the same input. trace and region
 * are boxes {lo_x, lo_y, hi_x, hi_y}: pieces are runs of strands inside
 * trace, counted when they touch region. */
PW_API pw_status pw_weave_split(const pw_weave* coarse, const pw_weave* fine, const double* trace,
                                const double* region, pw_split_report* out);

#ifdef __cplusplus
}
#endif

#endif /* PENTAWEAVE_PENTAWEAVE_H_ */
