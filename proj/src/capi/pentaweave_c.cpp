// Copyright 2026 The Pentaweave Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pentaweave/pentaweave.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pentaweave/error.hpp"
#include "pentaweave/fractal.hpp"
#include "pentaweave/io.hpp"
#include "pentaweave/mesh.hpp"
#include "pentaweave/pipeline.hpp"
#include "pentaweave/snub.hpp"
#include "pentaweave/weaving.hpp"

namespace pw = pentaweave;

struct pw_string {
  std::string value;
};

struct pw_mesh {
  pw::Mesh mesh;
};

struct pw_subdivision {
  pw::pipeline::SubdivisionRun run;
  bool snub = true;
};

struct pw_raster {
  pw::fractal::FirstHitRaster raster;
};

struct pw_weave {
  pw::Mesh input;
  pw::pipeline::WeaveRun run;
};

namespace {

thread_local std::string g_last_error;

pw_status status_of(pw::ErrorCode code) { return static_cast<pw_status>(static_cast<int>(code) + 1); }

pw_status fail(pw_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs f, translating exceptions into status codes.
template <typename F>
pw_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return PW_OK;
  } catch (const pw::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PW_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(PW_ERR_INTERNAL, std::string("Internal: ") + e.what());
  } catch (...) {
    return fail(PW_ERR_INTERNAL, "Internal: unknown exception");
  }
}

#define PW_REQUIRE(ptr)                                                      \
  do {                                                                       \
    if ((ptr) == nullptr) return fail(PW_ERR_NULL_ARGUMENT, "NullArgument: " #ptr " is NULL"); \
  } while (0)

pw_string* make_string(std::string s) { return new pw_string{std::move(s)}; }

pw::snub::SnubOptions snub_options(const pw_snub_options* o) {
  pw::snub::SnubOptions out;
  if (o == nullptr) return out;
  out.smoothing = o->smoothing != 0;
  out.seed_edge = o->seed_edge;
  out.seed_flag = o->seed_flag;
  if (out.seed_flag != 1 && out.seed_flag != -1)
    throw pw::Error(pw::ErrorCode::InvalidParameter, "seed_flag must be +1 or -1");
  return out;
}

std::optional<pw::fractal::RasterWindow> window_of(const double* w) {
  if (w == nullptr) return std::nullopt;
  return pw::fractal::RasterWindow{{w[0], w[1]}, {w[2], w[3]}};
}

pw::weave::Box box_of(const double* b) { return {{b[0], b[1]}, {b[2], b[3]}}; }

void check_index(std::size_t index, std::size_t size, const char* what) {
  if (index >= size)
    throw pw::Error(pw::ErrorCode::OutOfRange,
                    std::string(what) + " " + std::to_string(index) + " out of range (size " + std::to_string(size) +
                        ")");
}

std::string mesh_svg_with(const pw::Mesh& mesh, const char* fill, const char* palette,
                          const pw::snub::Provenance* highlight) {
  const std::string_view f = fill == nullptr ? "none" : fill;
  pw::io::SvgStyle style;
  if (palette != nullptr) {
    pw::io::palette(palette);  // validate
    style.palette = palette;
  }
  style.highlight = highlight;
  pw::weave::VertexColoring coloring;
  if (f == "none") {
    style.fill_by = pw::io::FillBy::None;
  } else if (f == "face") {
    style.fill_by = pw::io::FillBy::Face;
  } else if (f == "coloring") {
    coloring = pw::weave::two_color_vertices(mesh);
    style.fill_by = pw::io::FillBy::Coloring;
    style.coloring = &coloring;
  } else {
    throw pw::Error(pw::ErrorCode::InvalidParameter, "unknown fill '" + std::string(f) + "'");
  }
  return pw::io::mesh_svg(mesh, style);
}

}  // namespace

extern "C" {

PW_API const char* pw_version(void) { return PENTAWEAVE_VERSION; }

PW_API const char* pw_status_name(pw_status status) {
  switch (status) {
    case PW_OK: return "Ok";
    case PW_ERR_NULL_ARGUMENT: return "NullArgument";
    case PW_ERR_OUT_OF_MEMORY: return "OutOfMemory";
    default: break;
  }
  const int c = static_cast<int>(status) - 1;
  if (c >= 0 && c <= static_cast<int>(pw::ErrorCode::Internal))
    return pw::to_string(static_cast<pw::ErrorCode>(c)).data();
  return "Unknown";
}

PW_API const char* pw_last_error_message(void) { return g_last_error.c_str(); }

PW_API int pw_status_is_validation(pw_status status) {
  return status != PW_OK && status != PW_ERR_INTERNAL && status != PW_ERR_OUT_OF_MEMORY ? 1 : 0;
}

// ---- strings ----

PW_API const char* pw_string_data(const pw_string* s) { return s == nullptr ? "" : s->value.c_str(); }
PW_API size_t pw_string_size(const pw_string* s) { return s == nullptr ? 0 : s->value.size(); }
PW_API void pw_string_destroy(pw_string* s) { delete s; }

// ---- meshes ----

PW_API pw_status pw_mesh_generate(const char* spec, pw_mesh** out) {
  PW_REQUIRE(spec);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new pw_mesh{pw::generate_demo_mesh(pw::parse_demo_spec(spec))}; });
}

PW_API pw_status pw_mesh_parse(const char* text, size_t size, pw_mesh** out) {
  PW_REQUIRE(text);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new pw_mesh{pw::io::parse_mesh(std::string_view(text, size))}; });
}

PW_API pw_status pw_mesh_read_file(const char* path, pw_mesh** out) {
  PW_REQUIRE(path);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new pw_mesh{pw::io::read_mesh_file(path)}; });
}

PW_API pw_status pw_mesh_create(const double* xy, size_t vertex_count, const int32_t* face_sizes, size_t face_count,
                                const int32_t* indices, pw_mesh** out) {
  PW_REQUIRE(out);
  *out = nullptr;
  if (vertex_count > 0) PW_REQUIRE(xy);
  if (face_count > 0) {
    PW_REQUIRE(face_sizes);
    PW_REQUIRE(indices);
  }
  return guarded([&] {
    std::vector<pw::Point2> points(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) points[i] = {xy[2 * i], xy[2 * i + 1]};
    std::vector<std::vector<pw::VertexId>> faces(face_count);
    std::size_t k = 0;
    for (std::size_t f = 0; f < face_count; ++f) {
      if (face_sizes[f] < 0)
        throw pw::Error(pw::ErrorCode::InvalidParameter, "face " + std::to_string(f) + " has negative size");
      faces[f].assign(indices + k, indices + k + face_sizes[f]);
      k += static_cast<std::size_t>(face_sizes[f]);
    }
    *out = new pw_mesh{pw::Mesh::build(std::move(points), std::move(faces))};
  });
}

PW_API void pw_mesh_destroy(pw_mesh* mesh) { delete mesh; }

PW_API pw_status pw_mesh_counts(const pw_mesh* mesh, size_t* vertices, size_t* edges, size_t* faces) {
  PW_REQUIRE(mesh);
  if (vertices) *vertices = mesh->mesh.num_vertices();
  if (edges) *edges = mesh->mesh.num_edges();
  if (faces) *faces = mesh->mesh.num_faces();
  return PW_OK;
}

PW_API pw_status pw_mesh_euler_characteristic(const pw_mesh* mesh, long long* chi) {
  PW_REQUIRE(mesh);
  PW_REQUIRE(chi);
  *chi = pw::euler_characteristic(mesh->mesh);
  return PW_OK;
}

PW_API pw_status pw_mesh_boundary_edge_count(const pw_mesh* mesh, size_t* count) {
  PW_REQUIRE(mesh);
  PW_REQUIRE(count);
  *count = mesh->mesh.num_boundary_edges();
  return PW_OK;
}

PW_API pw_status pw_mesh_vertex(const pw_mesh* mesh, size_t index, double* x, double* y) {
  PW_REQUIRE(mesh);
  return guarded([&] {
    check_index(index, mesh->mesh.num_vertices(), "vertex");
    const pw::Point2 p = mesh->mesh.position(static_cast<pw::VertexId>(index));
    if (x) *x = p.x;
    if (y) *y = p.y;
  });
}

PW_API pw_status pw_mesh_face(const pw_mesh* mesh, size_t index, int32_t* vertices, size_t capacity,
                              size_t* degree) {
  PW_REQUIRE(mesh);
  if (capacity > 0) PW_REQUIRE(vertices);
  return guarded([&] {
    check_index(index, mesh->mesh.num_faces(), "face");
    const auto f = mesh->mesh.face(static_cast<pw::FaceId>(index));
    for (std::size_t i = 0; i < f.size() && i < capacity; ++i) vertices[i] = f[i];
    if (degree) *degree = f.size();
  });
}

PW_API pw_status pw_mesh_nonconvex_face_count(const pw_mesh* mesh, double tolerance, size_t* count) {
  PW_REQUIRE(mesh);
  PW_REQUIRE(count);
  return guarded([&] { *count = pw::convexity_report(mesh->mesh, tolerance).size(); });
}

PW_API pw_status pw_mesh_write(const pw_mesh* mesh, pw_string** out) {
  PW_REQUIRE(mesh);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = make_string(pw::io::write_mesh(mesh->mesh)); });
}

PW_API pw_status pw_mesh_svg(const pw_mesh* mesh, const char* fill, const char* palette, pw_string** out) {
  PW_REQUIRE(mesh);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = make_string(mesh_svg_with(mesh->mesh, fill, palette, nullptr)); });
}

// ---- subdivision ----

PW_API pw_snub_options pw_snub_options_default(void) {
  const pw::snub::SnubOptions d;
  return pw_snub_options{d.smoothing ? 1 : 0, d.seed_edge, d.seed_flag};
}

PW_API pw_status pw_subdivide(const pw_mesh* input, const char* scheme, int steps, const pw_snub_options* options,
                              pw_subdivision** out) {
  PW_REQUIRE(input);
  PW_REQUIRE(scheme);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto run = std::make_unique<pw_subdivision>();
    run->snub = pw::pipeline::parse_scheme(scheme).snub;
    run->run = pw::pipeline::run_subdivision(input->mesh, scheme, steps, snub_options(options));
    *out = run.release();
  });
}

PW_API void pw_subdivision_destroy(pw_subdivision* run) { delete run; }

PW_API size_t pw_subdivision_steps(const pw_subdivision* run) {
  return run == nullptr ? 0 : run->run.meshes.size() - 1;
}

PW_API pw_status pw_subdivision_counts(const pw_subdivision* run, size_t t, size_t* vertices, size_t* edges,
                                       size_t* faces, long long* euler, int* check) {
  PW_REQUIRE(run);
  return guarded([&] {
    check_index(t, run->run.counts.size(), "step");
    const auto& c = run->run.counts[t];
    if (vertices) *vertices = c.vertices;
    if (edges) *edges = c.edges;
    if (faces) *faces = c.faces;
    if (euler) *euler = c.euler;
    if (check) *check = c.counts_match.has_value() ? (*c.counts_match ? 1 : 0) : -1;
  });
}

PW_API pw_status pw_subdivision_mesh(const pw_subdivision* run, size_t t, pw_mesh** out) {
  PW_REQUIRE(run);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    check_index(t, run->run.meshes.size(), "step");
    *out = new pw_mesh{run->run.meshes[t]};
  });
}

PW_API pw_status pw_subdivision_svg(const pw_subdivision* run, size_t t, const char* fill, int highlight_z_middle,
                                    pw_string** out) {
  PW_REQUIRE(run);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    check_index(t, run->run.meshes.size(), "step");
    const pw::snub::Provenance* highlight = nullptr;
    if (highlight_z_middle && run->snub && t < run->run.provenance.size()) highlight = &run->run.provenance[t];
    *out = make_string(mesh_svg_with(run->run.meshes[t], fill, nullptr, highlight));
  });
}

PW_API pw_status pw_subdivision_boundary_lengths(const pw_subdivision* run, double* lengths, size_t capacity,
                                                 size_t* count) {
  PW_REQUIRE(run);
  if (capacity > 0) PW_REQUIRE(lengths);
  return guarded([&] {
    const auto& meshes = run->run.meshes;
    for (std::size_t t = 0; t < meshes.size() && t < capacity; ++t) {
      double sum = 0.0;
      for (const pw::Edge& e : meshes[t].edges())
        if (e.is_boundary()) sum += pw::distance(meshes[t].position(e.v0), meshes[t].position(e.v1));
      lengths[t] = sum;
    }
    if (count) *count = meshes.size();
  });
}

// ---- fractal ----

PW_API pw_status pw_fractal_dimension(const double* lengths, size_t count, double scale_ratio, double* dimension,
                                      double* residual) {
  if (count > 0) PW_REQUIRE(lengths);
  return guarded([&] {
    const std::vector<double> l(lengths, lengths + count);
    const auto est = scale_ratio > 0.0 ? pw::fractal::estimate_fractal_dimension(l, scale_ratio)
                                       : pw::fractal::estimate_fractal_dimension(l);
    if (dimension) *dimension = est.dimension;
    if (residual) *residual = est.residual;
  });
}

PW_API pw_status pw_box_counting_dimension(const pw_mesh* mesh, int k_min, int k_max, double* dimension,
                                           double* residual) {
  PW_REQUIRE(mesh);
  return guarded([&] {
    const auto est =
        pw::fractal::box_counting_dimension(pw::fractal::boundary_polylines(mesh->mesh), k_min, k_max);
    if (dimension) *dimension = est.dimension;
    if (residual) *residual = est.residual;
  });
}

PW_API pw_status pw_lsystem(int depth, pw_string** symbols, pw_string** svg, size_t* segments) {
  if (symbols) *symbols = nullptr;
  if (svg) *svg = nullptr;
  return guarded([&] {
    const auto curve = pw::fractal::lsystem_expand(depth);
    std::string image = svg ? pw::io::polyline_svg(curve.polyline) : std::string();
    if (segments) *segments = curve.polyline.empty() ? 0 : curve.polyline.size() - 1;
    if (symbols) *symbols = make_string(curve.symbols);
    if (svg) *svg = make_string(std::move(image));
  });
}

// ---- rasters ----

PW_API pw_status pw_raster_first_hit(const pw_mesh* input, int resolution, int max_steps,
                                     const pw_snub_options* options, const double* window, pw_raster** out) {
  PW_REQUIRE(input);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new pw_raster{pw::fractal::first_hit_raster_local(input->mesh, resolution, max_steps,
                                                             snub_options(options), window_of(window))};
  });
}

PW_API void pw_raster_destroy(pw_raster* raster) { delete raster; }

PW_API pw_status pw_raster_info(const pw_raster* raster, int* width, int* height, int* exhausted,
                                int* saturation_step, size_t* steps_computed) {
  PW_REQUIRE(raster);
  const auto& r = raster->raster;
  if (width) *width = r.width;
  if (height) *height = r.height;
  if (exhausted) *exhausted = r.exhausted ? 1 : 0;
  if (saturation_step) *saturation_step = r.saturation_step.value_or(-1);
  if (steps_computed) *steps_computed = r.new_pixels.empty() ? 0 : r.new_pixels.size() - 1;
  return PW_OK;
}

PW_API pw_status pw_raster_new_pixels(const pw_raster* raster, size_t* counts, size_t capacity, size_t* count) {
  PW_REQUIRE(raster);
  if (capacity > 0) PW_REQUIRE(counts);
  const auto& n = raster->raster.new_pixels;
  for (std::size_t i = 0; i < n.size() && i < capacity; ++i) counts[i] = n[i];
  if (count) *count = n.size();
  return PW_OK;
}

PW_API pw_status pw_raster_pixel(const pw_raster* raster, int col, int row, int* step) {
  PW_REQUIRE(raster);
  PW_REQUIRE(step);
  const auto& r = raster->raster;
  if (col < 0 || row < 0 || col >= r.width || row >= r.height)
    return fail(PW_ERR_OUT_OF_RANGE, "OutOfRange: pixel (" + std::to_string(col) + ", " + std::to_string(row) +
                                         ") outside the raster");
  *step = r.at(col, row);
  return PW_OK;
}

PW_API pw_status pw_raster_ppm(const pw_raster* raster, pw_string** out) {
  PW_REQUIRE(raster);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = make_string(pw::io::raster_ppm(raster->raster)); });
}

PW_API pw_status pw_raster_pgm(const pw_raster* raster, pw_string** out) {
  PW_REQUIRE(raster);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = make_string(pw::io::raster_pgm(raster->raster)); });
}

// ---- weaving ----

PW_API pw_status pw_weave_create(const pw_mesh* input, const char* mode, int steps, const pw_snub_options* options,
                                 pw_weave** out) {
  PW_REQUIRE(input);
  PW_REQUIRE(mode);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto w = std::make_unique<pw_weave>();
    w->input = input->mesh;
    w->run = pw::pipeline::run_weave(input->mesh, pw::pipeline::parse_weave_mode(mode), steps,
                                     snub_options(options));
    *out = w.release();
  });
}

PW_API void pw_weave_destroy(pw_weave* weave) { delete weave; }

PW_API pw_status pw_weave_counts(const pw_weave* weave, size_t* strands, size_t* crossings, size_t* visits) {
  PW_REQUIRE(weave);
  const auto& w = weave->run.level.weaving;
  if (strands) *strands = w.strands.size();
  if (crossings) *crossings = w.crossings.size();
  if (visits) {
    std::size_t n = 0;
    for (const auto& s : w.strands) n += s.visits.size();
    *visits = n;
  }
  return PW_OK;
}

PW_API pw_status pw_weave_json(const pw_weave* weave, pw_string** out) {
  PW_REQUIRE(weave);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto& run = weave->run;
    const pw::weave::VertexColoring* coloring = run.coloring.color.empty() ? nullptr : &run.coloring;
    *out = make_string(pw::io::weave_json(run.level.weaving, coloring));
  });
}

PW_API pw_status pw_weave_check(const pw_weave* weave, pw_string** problem) {
  PW_REQUIRE(weave);
  PW_REQUIRE(problem);
  *problem = nullptr;
  return guarded([&] { *problem = make_string(pw::io::check_weave(weave->run.level.weaving)); });
}

PW_API pw_status pw_weave_ribbon_svg(const pw_weave* weave, double width_fraction, const char* palette,
                                     pw_string** out) {
  PW_REQUIRE(weave);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto ribbons = pw::pipeline::weave_ribbons(weave->run, width_fraction);
    *out = make_string(
        pw::io::ribbon_svg(ribbons, &weave->run.refined, palette ? palette : "paper-maritime-12"));
  });
}

PW_API pw_status pw_weave_tiles_svg(const pw_weave* weave, const char* palette, pw_string** out) {
  PW_REQUIRE(weave);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    pw::io::SvgStyle style;
    if (palette != nullptr) {
      pw::io::palette(palette);
      style.palette = palette;
    }
    style.fill_by = pw::io::FillBy::Strand;
    style.face_color = pw::pipeline::strand_face_colors(weave->run);
    *out = make_string(pw::io::mesh_svg(weave->run.crossing_mesh, style));
  });
}

PW_API pw_status pw_weave_cut_template_svg(const pw_weave* weave, double width_fraction, int sectors,
                                           pw_string** out, int* group_count) {
  PW_REQUIRE(weave);
  PW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const int k = sectors > 0 ? sectors : pw::io::rotational_symmetry_order(weave->input);
    const auto ribbons = pw::pipeline::weave_ribbons(weave->run, width_fraction);
    pw::Point2 c{0.0, 0.0};
    for (const auto& p : weave->input.positions()) c = c + p;
    if (weave->input.num_vertices() > 0) c = c * (1.0 / static_cast<double>(weave->input.num_vertices()));
    const auto groups = pw::io::sector_groups(ribbons, c, k);
    std::string svg = pw::io::cut_template_svg(ribbons, groups);
    if (group_count) {
      std::vector<int> distinct(groups);
      std::sort(distinct.begin(), distinct.end());
      *group_count = static_cast<int>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
    }
    *out = make_string(std::move(svg));
  });
}

PW_API pw_status pw_weave_split(const pw_weave* coarse, const pw_weave* fine, const double* trace,
                                const double* region, pw_split_report* out) {
  PW_REQUIRE(coarse);
  PW_REQUIRE(fine);
  PW_REQUIRE(trace);
  PW_REQUIRE(region);
  PW_REQUIRE(out);
  return guarded([&] {
    const auto s = pw::weave::strand_split(coarse->run.level, fine->run.level, box_of(trace), box_of(region));
    pw_split_report r{};
    r.parents = s.parents.size();
    r.children = s.child_count;
    r.orphans = s.orphan_count;
    if (!s.children_per_parent.empty()) {
      r.min_children = *std::min_element(s.children_per_parent.begin(), s.children_per_parent.end());
      r.max_children = *std::max_element(s.children_per_parent.begin(), s.children_per_parent.end());
    }
    *out = r;
  });
}

}  // extern "C"
