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


// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "pentaweave/pentaweave.h"

extern "C" int pw_c_client_smoke(void);

namespace {

struct MeshDeleter {
  void operator()(pw_mesh* m) const { pw_mesh_destroy(m); }
};
struct StringDeleter {
  void operator()(pw_string* s) const { pw_string_destroy(s); }
};
struct RunDeleter {
  void operator()(pw_subdivision* r) const { pw_subdivision_destroy(r); }
};
struct RasterDeleter {
  void operator()(pw_raster* r) const { pw_raster_destroy(r); }
};
struct WeaveDeleter {
  void operator()(pw_weave* w) const { pw_weave_destroy(w); }
};
using MeshPtr = std::unique_ptr<pw_mesh, MeshDeleter>;
using StringPtr = std::unique_ptr<pw_string, StringDeleter>;
using RunPtr = std::unique_ptr<pw_subdivision, RunDeleter>;
using RasterPtr = std::unique_ptr<pw_raster, RasterDeleter>;
using WeavePtr = std::unique_ptr<pw_weave, WeaveDeleter>;

MeshPtr generate(const char* spec) {
  pw_mesh* m = nullptr;
  EXPECT_EQ(pw_mesh_generate(spec, &m), PW_OK) << pw_last_error_message();
  return MeshPtr(m);
}

std::string take(pw_string* s) {
  StringPtr p(s);
  return s ? std::string(pw_string_data(s), pw_string_size(s)) : std::string();
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(pw_version(), "0.1.0");
  EXPECT_STREQ(pw_status_name(PW_OK), "Ok");
  EXPECT_STREQ(pw_status_name(PW_ERR_NOT_BIPARTITE), "NotBipartite");
  EXPECT_STREQ(pw_status_name(PW_ERR_NULL_ARGUMENT), "NullArgument");
  EXPECT_STREQ(pw_status_name(PW_ERR_OUT_OF_MEMORY), "OutOfMemory");
  EXPECT_STREQ(pw_status_name(static_cast<pw_status>(99)), "Unknown");
  EXPECT_TRUE(pw_status_is_validation(PW_ERR_SYNTAX));
  EXPECT_TRUE(pw_status_is_validation(PW_ERR_NULL_ARGUMENT));
  EXPECT_FALSE(pw_status_is_validation(PW_ERR_INTERNAL));
  EXPECT_FALSE(pw_status_is_validation(PW_ERR_OUT_OF_MEMORY));
  EXPECT_FALSE(pw_status_is_validation(PW_OK));
}

TEST(CApi, PlainCClient) { EXPECT_EQ(pw_c_client_smoke(), 0); }

TEST(CApi, NullArguments) {
  pw_mesh* m = nullptr;
  EXPECT_EQ(pw_mesh_generate(nullptr, &m), PW_ERR_NULL_ARGUMENT);
  EXPECT_EQ(pw_mesh_generate("pentagon", nullptr), PW_ERR_NULL_ARGUMENT);
  EXPECT_NE(std::string(pw_last_error_message()).find("is NULL"), std::string::npos);
  size_t v = 0;
  EXPECT_EQ(pw_mesh_counts(nullptr, &v, nullptr, nullptr), PW_ERR_NULL_ARGUMENT);
  EXPECT_EQ(pw_subdivide(nullptr, "snub", 1, nullptr, nullptr), PW_ERR_NULL_ARGUMENT);
  EXPECT_EQ(pw_weave_counts(nullptr, nullptr, nullptr, nullptr), PW_ERR_NULL_ARGUMENT);
  EXPECT_EQ(pw_raster_pixel(nullptr, 0, 0, nullptr), PW_ERR_NULL_ARGUMENT);
  EXPECT_EQ(pw_fractal_dimension(nullptr, 3, 0.0, nullptr, nullptr), PW_ERR_NULL_ARGUMENT);
  // destroying null is a no-op
  pw_mesh_destroy(nullptr);
  pw_string_destroy(nullptr);
  pw_subdivision_destroy(nullptr);
  pw_raster_destroy(nullptr);
  pw_weave_destroy(nullptr);
  EXPECT_STREQ(pw_string_data(nullptr), "");
  EXPECT_EQ(pw_string_size(nullptr), 0u);
  EXPECT_EQ(pw_subdivision_steps(nullptr), 0u);
}

TEST(CApi, ErrorsCarryCodeAndMessage) {
  pw_mesh* m = reinterpret_cast<pw_mesh*>(0x1);
  EXPECT_EQ(pw_mesh_generate("hexagon", &m), PW_ERR_INVALID_PARAMETER);
  EXPECT_EQ(m, nullptr);
  EXPECT_NE(std::string(pw_last_error_message()).find("hexagon"), std::string::npos);

  const std::string bad = "pmesh 1\nv 0 0\nv 1 0\nv 0 1\nf 1 2 z\n";
  EXPECT_EQ(pw_mesh_parse(bad.data(), bad.size(), &m), PW_ERR_SYNTAX);
  EXPECT_NE(std::string(pw_last_error_message()).find("line 5"), std::string::npos);

  const std::string collinear = "pmesh 1\nv 0 0\nv 1 0\nv 2 0\nf 1 2 3\n";
  EXPECT_EQ(pw_mesh_parse(collinear.data(), collinear.size(), &m), PW_ERR_DEGENERATE_FACE);

  EXPECT_EQ(pw_mesh_read_file("/nonexistent/dir/x.pmesh", &m), PW_ERR_IO);

  // success leaves the message empty
  auto ok = generate("pentagon");
  EXPECT_STREQ(pw_last_error_message(), "");
}

TEST(CApi, ParseHonoursSize) {
  const std::string text = "pmesh 1\nv 0 0\nv 1 0\nv 0 1\nf 1 2 3\ngarbage";
  pw_mesh* m = nullptr;
  ASSERT_EQ(pw_mesh_parse(text.data(), text.size() - 7, &m), PW_OK) << pw_last_error_message();
  MeshPtr hold(m);
  EXPECT_EQ(pw_mesh_parse(text.data(), text.size(), &m), PW_ERR_SYNTAX);
}

TEST(CApi, CreateAndQuery) {
  const double xy[] = {0, 0, 1, 0, 1, 1, 0, 1, 2, 0, 2, 1};
  const int32_t sizes[] = {4, 4};
  const int32_t idx[] = {0, 1, 2, 3, 1, 4, 5, 2};
  pw_mesh* raw = nullptr;
  ASSERT_EQ(pw_mesh_create(xy, 6, sizes, 2, idx, &raw), PW_OK) << pw_last_error_message();
  MeshPtr m(raw);
  size_t v = 0, e = 0, f = 0, b = 0;
  long long chi = 0;
  ASSERT_EQ(pw_mesh_counts(m.get(), &v, &e, &f), PW_OK);
  EXPECT_EQ(v, 6u);
  EXPECT_EQ(e, 7u);
  EXPECT_EQ(f, 2u);
  ASSERT_EQ(pw_mesh_euler_characteristic(m.get(), &chi), PW_OK);
  EXPECT_EQ(chi, 1);
  ASSERT_EQ(pw_mesh_boundary_edge_count(m.get(), &b), PW_OK);
  EXPECT_EQ(b, 6u);
  double x = 0, y = 0;
  ASSERT_EQ(pw_mesh_vertex(m.get(), 5, &x, &y), PW_OK);
  EXPECT_EQ(x, 2.0);
  EXPECT_EQ(y, 1.0);
  EXPECT_EQ(pw_mesh_vertex(m.get(), 6, &x, &y), PW_ERR_OUT_OF_RANGE);
  int32_t face[8];
  size_t degree = 0;
  ASSERT_EQ(pw_mesh_face(m.get(), 1, face, 8, &degree), PW_OK);
  EXPECT_EQ(degree, 4u);
  EXPECT_EQ(face[0], 1);
  EXPECT_EQ(face[3], 2);
  // capacity 0 only reports the degree
  ASSERT_EQ(pw_mesh_face(m.get(), 0, nullptr, 0, &degree), PW_OK);
  EXPECT_EQ(degree, 4u);
  EXPECT_EQ(pw_mesh_face(m.get(), 2, face, 8, &degree), PW_ERR_OUT_OF_RANGE);
  size_t nonconvex = 9;
  ASSERT_EQ(pw_mesh_nonconvex_face_count(m.get(), 1e-9, &nonconvex), PW_OK);
  EXPECT_EQ(nonconvex, 0u);

  const int32_t bad_sizes[] = {4, 2};
  EXPECT_EQ(pw_mesh_create(xy, 6, bad_sizes, 2, idx, &raw), PW_ERR_DEGENERATE_FACE);
  const int32_t negative[] = {4, -1};
  EXPECT_EQ(pw_mesh_create(xy, 6, negative, 2, idx, &raw), PW_ERR_INVALID_PARAMETER);
  const int32_t bad_idx[] = {0, 1, 2, 3, 1, 4, 9, 2};
  EXPECT_EQ(pw_mesh_create(xy, 6, sizes, 2, bad_idx, &raw), PW_ERR_OUT_OF_RANGE);
}

TEST(CApi, WriteAndParseRoundTrip) {
  auto m = generate("flower");
  pw_string* s = nullptr;
  ASSERT_EQ(pw_mesh_write(m.get(), &s), PW_OK);
  const std::string text = take(s);
  EXPECT_EQ(text.rfind("pmesh 1\n", 0), 0u);
  pw_mesh* back = nullptr;
  ASSERT_EQ(pw_mesh_parse(text.data(), text.size(), &back), PW_OK);
  MeshPtr hold(back);
  ASSERT_EQ(pw_mesh_write(back, &s), PW_OK);
  EXPECT_EQ(take(s), text);
}

TEST(CApi, MeshSvgFills) {
  auto m = generate("grid:2x2");
  pw_string* s = nullptr;
  for (const char* fill : {"none", "face", "coloring"}) {
    ASSERT_EQ(pw_mesh_svg(m.get(), fill, nullptr, &s), PW_OK) << fill << ": " << pw_last_error_message();
    EXPECT_NE(take(s).find("<svg"), std::string::npos);
  }
  EXPECT_EQ(pw_mesh_svg(m.get(), "stripes", nullptr, &s), PW_ERR_INVALID_PARAMETER);
  EXPECT_EQ(s, nullptr);
  EXPECT_EQ(pw_mesh_svg(m.get(), "face", "no-such-palette", &s), PW_ERR_INVALID_PARAMETER);
  auto pent = generate("pentagon");
  EXPECT_EQ(pw_mesh_svg(pent.get(), "coloring", nullptr, &s), PW_ERR_NOT_QUAD_MESH);
}

TEST(CApi, SubdivisionRun) {
  auto m = generate("pentagon");
  pw_snub_options opts = pw_snub_options_default();
  EXPECT_EQ(opts.smoothing, 1);
  EXPECT_EQ(opts.seed_flag, 1);
  pw_subdivision* raw = nullptr;
  ASSERT_EQ(pw_subdivide(m.get(), "snub", 3, &opts, &raw), PW_OK);
  RunPtr run(raw);
  EXPECT_EQ(pw_subdivision_steps(run.get()), 3u);
  const size_t faces[] = {1, 5, 25, 125};
  for (size_t t = 0; t <= 3; ++t) {
    size_t f = 0;
    int check = 7;
    ASSERT_EQ(pw_subdivision_counts(run.get(), t, nullptr, nullptr, &f, nullptr, &check), PW_OK);
    EXPECT_EQ(f, faces[t]);
    EXPECT_EQ(check, t == 0 ? -1 : 1);
  }
  EXPECT_EQ(pw_subdivision_counts(run.get(), 4, nullptr, nullptr, nullptr, nullptr, nullptr), PW_ERR_OUT_OF_RANGE);

  pw_mesh* last = nullptr;
  ASSERT_EQ(pw_subdivision_mesh(run.get(), 3, &last), PW_OK);
  MeshPtr hold(last);
  size_t v = 0;
  pw_mesh_counts(last, &v, nullptr, nullptr);
  EXPECT_EQ(v, 256u);

  double lengths[8];
  size_t n = 0;
  ASSERT_EQ(pw_subdivision_boundary_lengths(run.get(), lengths, 8, &n), PW_OK);
  ASSERT_EQ(n, 4u);
  for (size_t t = 1; t < n; ++t) EXPECT_NEAR(lengths[t] / lengths[t - 1], 3.0 / std::sqrt(7.0), 1e-12);
  ASSERT_EQ(pw_subdivision_boundary_lengths(run.get(), nullptr, 0, &n), PW_OK);
  EXPECT_EQ(n, 4u);

  pw_string* s = nullptr;
  ASSERT_EQ(pw_subdivision_svg(run.get(), 1, "face", 1, &s), PW_OK);
  EXPECT_NE(take(s).find("#c0392b"), std::string::npos);
}

TEST(CApi, SubdivisionErrors) {
  auto quads = generate("grid:2x2");
  pw_subdivision* raw = nullptr;
  EXPECT_EQ(pw_subdivide(quads.get(), "loop", 1, nullptr, &raw), PW_ERR_NOT_TRIANGLE_MESH);
  EXPECT_EQ(raw, nullptr);
  EXPECT_EQ(pw_subdivide(quads.get(), "zigzag", 1, nullptr, &raw), PW_ERR_INVALID_PARAMETER);
  EXPECT_EQ(pw_subdivide(quads.get(), "snub", -2, nullptr, &raw), PW_ERR_INVALID_PARAMETER);
  pw_snub_options opts = pw_snub_options_default();
  opts.seed_flag = 0;
  EXPECT_EQ(pw_subdivide(quads.get(), "snub", 1, &opts, &raw), PW_ERR_INVALID_PARAMETER);
  ASSERT_EQ(pw_subdivide(quads.get(), "catmull-clark", 1, nullptr, &raw), PW_OK);
  RunPtr run(raw);
  int check = 5;
  pw_subdivision_counts(run.get(), 1, nullptr, nullptr, nullptr, nullptr, &check);
  EXPECT_EQ(check, -1);
  double lengths[4];
  size_t n = 0;
  EXPECT_EQ(pw_subdivision_boundary_lengths(run.get(), lengths, 4, &n), PW_OK);
}

TEST(CApi, Fractal) {
  const double lengths[] = {1.0, 3.0 / std::sqrt(7.0), 9.0 / 7.0};
  double d = 0, r = 1;
  ASSERT_EQ(pw_fractal_dimension(lengths, 3, 0.0, &d, &r), PW_OK);
  EXPECT_NEAR(d, std::log(3.0) / std::log(std::sqrt(7.0)), 1e-12);
  EXPECT_EQ(pw_fractal_dimension(lengths, 2, 0.0, &d, &r), PW_ERR_INSUFFICIENT_DATA);
  EXPECT_EQ(pw_fractal_dimension(lengths, 3, 2.0, &d, &r), PW_ERR_INVALID_PARAMETER);

  pw_string* word = nullptr;
  pw_string* svg = nullptr;
  size_t segments = 0;
  ASSERT_EQ(pw_lsystem(2, &word, &svg, &segments), PW_OK);
  EXPECT_EQ(segments, 9u);
  EXPECT_EQ(take(word).substr(0, 3), "∇");
  EXPECT_NE(take(svg).find("<path"), std::string::npos);
  EXPECT_EQ(pw_lsystem(-1, &word, nullptr, nullptr), PW_ERR_INVALID_PARAMETER);
  EXPECT_EQ(word, nullptr);
  EXPECT_EQ(pw_lsystem(99, nullptr, nullptr, &segments), PW_ERR_DEPTH_TOO_LARGE);

  auto sq = generate("grid:1x1");
  ASSERT_EQ(pw_box_counting_dimension(sq.get(), 6, 12, &d, &r), PW_OK);
  EXPECT_NEAR(d, 1.0, 0.005);
}

TEST(CApi, Raster) {
  auto m = generate("pentagon");
  pw_raster* raw = nullptr;
  ASSERT_EQ(pw_raster_first_hit(m.get(), 64, 20, nullptr, nullptr, &raw), PW_OK) << pw_last_error_message();
  RasterPtr r(raw);
  int w = 0, h = 0, exhausted = 0, sat = -2;
  size_t steps = 0;
  ASSERT_EQ(pw_raster_info(r.get(), &w, &h, &exhausted, &sat, &steps), PW_OK);
  EXPECT_EQ(w, 64);
  EXPECT_EQ(h, 64);
  EXPECT_EQ(exhausted, 1);
  EXPECT_GE(sat, 1);
  size_t n = 0;
  ASSERT_EQ(pw_raster_new_pixels(r.get(), nullptr, 0, &n), PW_OK);
  EXPECT_EQ(n, steps + 1);  // step 0 included
  std::vector<size_t> counts(n);
  ASSERT_EQ(pw_raster_new_pixels(r.get(), counts.data(), counts.size(), &n), PW_OK);
  size_t total = 0;
  for (size_t c : counts) total += c;
  size_t hit = 0;
  for (int row = 0; row < h; ++row)
    for (int col = 0; col < w; ++col) {
      int s = -5;
      ASSERT_EQ(pw_raster_pixel(r.get(), col, row, &s), PW_OK);
      hit += s >= 0;
    }
  EXPECT_EQ(hit, total);
  int s = 0;
  EXPECT_EQ(pw_raster_pixel(r.get(), 64, 0, &s), PW_ERR_OUT_OF_RANGE);
  pw_string* img = nullptr;
  ASSERT_EQ(pw_raster_ppm(r.get(), &img), PW_OK);
  EXPECT_EQ(pw_string_size(img), std::string("P6\n64 64\n255\n").size() + 64 * 64 * 3);
  pw_string_destroy(img);
  ASSERT_EQ(pw_raster_pgm(r.get(), &img), PW_OK);
  EXPECT_EQ(take(img).substr(0, 3), "P5\n");

  const double window[] = {-1.0, -1.0, 1.0, 1.0};
  ASSERT_EQ(pw_raster_first_hit(m.get(), 32, 3, nullptr, window, &raw), PW_OK);
  RasterPtr small(raw);
  pw_raster_info(small.get(), &w, nullptr, &exhausted, &sat, &steps);
  EXPECT_EQ(w, 32);
  EXPECT_EQ(steps, 3u);
  EXPECT_EQ(pw_raster_first_hit(m.get(), 8, 3, nullptr, nullptr, &raw), PW_ERR_INVALID_PARAMETER);
  const double empty[] = {0.0, 0.0, 0.0, 1.0};
  EXPECT_EQ(pw_raster_first_hit(m.get(), 32, 3, nullptr, empty, &raw), PW_ERR_INVALID_PARAMETER);
}

TEST(CApi, Weave) {
  auto grid = generate("grid:4x4");
  pw_weave* raw = nullptr;
  ASSERT_EQ(pw_weave_create(grid.get(), "quad-2color", 0, nullptr, &raw), PW_OK);
  WeavePtr w(raw);
  size_t strands = 0, crossings = 0, visits = 0;
  ASSERT_EQ(pw_weave_counts(w.get(), &strands, &crossings, &visits), PW_OK);
  EXPECT_EQ(strands, 8u);
  EXPECT_EQ(crossings, 16u);
  EXPECT_EQ(visits, 32u);
  pw_string* s = nullptr;
  ASSERT_EQ(pw_weave_check(w.get(), &s), PW_OK);
  EXPECT_EQ(take(s), "");
  ASSERT_EQ(pw_weave_json(w.get(), &s), PW_OK);
  EXPECT_NE(take(s).find("\"pentaweave-weave\""), std::string::npos);
  ASSERT_EQ(pw_weave_ribbon_svg(w.get(), 0.3, nullptr, &s), PW_OK);
  EXPECT_NE(take(s).find("<svg"), std::string::npos);
  EXPECT_EQ(pw_weave_ribbon_svg(w.get(), 1.5, nullptr, &s), PW_ERR_INVALID_PARAMETER);
  ASSERT_EQ(pw_weave_tiles_svg(w.get(), "jigsaw-20", &s), PW_OK);
  take(s);
  int groups = 0;
  ASSERT_EQ(pw_weave_cut_template_svg(w.get(), 0.3, 0, &s, &groups), PW_OK);
  take(s);
  EXPECT_EQ(groups, 4);
  ASSERT_EQ(pw_weave_cut_template_svg(w.get(), 0.3, 2, &s, &groups), PW_OK);
  take(s);
  EXPECT_EQ(groups, 2);

  EXPECT_EQ(pw_weave_create(grid.get(), "tartan", 0, nullptr, &raw), PW_ERR_INVALID_PARAMETER);
  EXPECT_EQ(pw_weave_create(grid.get(), "snub-glue", 0, nullptr, &raw), PW_ERR_INVALID_PARAMETER);
  auto pent = generate("pentagon");
  EXPECT_EQ(pw_weave_create(pent.get(), "face-split", 0, nullptr, &raw), PW_ERR_NO_INTERIOR_EDGES);
  EXPECT_EQ(pw_weave_create(pent.get(), "quad-2color", 0, nullptr, &raw), PW_ERR_NOT_QUAD_MESH);
}

TEST(CApi, WeaveSplit) {
  auto grid = generate("grid:8x8");
  pw_weave* a = nullptr;
  pw_weave* b = nullptr;
  ASSERT_EQ(pw_weave_create(grid.get(), "quad-2color", 0, nullptr, &a), PW_OK);
  WeavePtr ha(a);
  ASSERT_EQ(pw_weave_create(grid.get(), "quad-2color", 1, nullptr, &b), PW_OK);
  WeavePtr hb(b);
  const double trace[] = {0.5, 0.5, 7.5, 7.5};
  const double region[] = {2.0, 2.0, 6.0, 6.0};
  pw_split_report rep{};
  ASSERT_EQ(pw_weave_split(a, b, trace, region, &rep), PW_OK);
  EXPECT_GT(rep.parents, 0u);
  EXPECT_EQ(rep.min_children, 2u);
  EXPECT_EQ(rep.max_children, 2u);
  EXPECT_EQ(rep.orphans, 0u);
  EXPECT_EQ(rep.children, 2 * rep.parents);
  EXPECT_EQ(pw_weave_split(a, b, nullptr, region, &rep), PW_ERR_NULL_ARGUMENT);
}

TEST(CApi, ReadFile) {
  const auto path = std::filesystem::temp_directory_path() / "pentaweave_capi_test.pmesh";
  {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    ASSERT_NE(f, nullptr);
    std::fputs("pmesh 1\nv 0 0\nv 1 0\nv 0 1\nf 1 2 3\n", f);
    std::fclose(f);
  }
  pw_mesh* m = nullptr;
  ASSERT_EQ(pw_mesh_read_file(path.string().c_str(), &m), PW_OK);
  MeshPtr hold(m);
  size_t f = 0;
  pw_mesh_counts(m, nullptr, nullptr, &f);
  EXPECT_EQ(f, 1u);
  std::filesystem::remove(path);
}

}  // namespace
