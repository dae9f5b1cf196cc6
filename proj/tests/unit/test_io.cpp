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


#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>

#include "json.hpp"
#include "pentaweave/io.hpp"
#include "pentaweave/pipeline.hpp"
#include "pentaweave/snub.hpp"
#include "test_util.hpp"

namespace pentaweave::io {
namespace {

using testing::gen;

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

std::string error_message(const std::string& text) {
  try {
    parse_mesh(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(Pmesh, WriteFormat) {
  const Mesh m = Mesh::build({{0, 0}, {1, 0}, {0.5, 0.25}}, {{0, 1, 2}});
  EXPECT_EQ(write_mesh(m), "pmesh 1\nv 0 0\nv 1 0\nv 0.5 0.25\nf 1 2 3\n");
}

TEST(Pmesh, CommentsBlankLinesAndCrlf) {
  const Mesh m = parse_mesh("# a square\r\npmesh 1\r\n\r\nv 0 0\r\nv 1 0\r\n  # indented comment\r\nv 1 1\r\nv 0 1\r\nf 1 2 3 4\r\n");
  EXPECT_EQ(m.num_vertices(), 4u);
  EXPECT_EQ(m.num_faces(), 1u);
}

TEST(Pmesh, RoundTripIsExact) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  for (const char* spec : {"pentagon", "grid:3x3", "fan:9", "trigrid:4x2", "flower"}) {
    const Mesh base = snub::snub_subdivide(gen(spec), 2).final_mesh();
    std::vector<Point2> pts(base.positions().begin(), base.positions().end());
    const ElementClass c = classify(base);
    for (std::size_t v = 0; v < pts.size(); ++v) {
      if (c.vertex[v] == ElementKind::Inner) pts[v] += Point2{jitter(rng), jitter(rng)} * 1e-3;
      pts[v] = pts[v] * 1e7 / 3.0;  // awkward decimals
    }
    const Mesh m = base.with_positions(pts);
    const Mesh back = parse_mesh(write_mesh(m));
    EXPECT_EQ(back.face_lists(), m.face_lists()) << spec;
    for (VertexId v = 0; v < static_cast<VertexId>(m.num_vertices()); ++v) ASSERT_EQ(back.position(v), m.position(v));
    EXPECT_EQ(write_mesh(back), write_mesh(m));
  }
}

TEST(Pmesh, SyntaxErrorsNameTheLine) {
  EXPECT_PW_ERROR(parse_mesh(""), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("pmesh 2\n"), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("v 0 0\n"), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1 extra\n"), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0\n"), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 0 0\n"), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 abc\n"), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 1e999\n"), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 nan\n"), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 0\nv 1 0\nf 1 2\n"), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 0\nv 1 0\nv 0 1\nf 1 2 x\n"), ErrorCode::SyntaxError);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nvt 0 0\n"), ErrorCode::SyntaxError);
  EXPECT_NE(error_message("pmesh 1\n# c\nv 0 0\nv 1 0\nv 0 1\n\nf 1 2 q\n").find("line 7"), std::string::npos);
}

TEST(Pmesh, IndexErrors) {
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 0\nv 1 0\nv 0 1\nf 1 2 4\n"), ErrorCode::OutOfRange);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 0\nv 1 0\nv 0 1\nf 0 1 2\n"), ErrorCode::OutOfRange);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 0\nv 1 0\nv 0 1\nf 1 2 -3\n"), ErrorCode::OutOfRange);
  EXPECT_NE(error_message("pmesh 1\nf 1 2 3\nv 0 0\nv 1 0\n").find("line 2"), std::string::npos);
  // faces may precede their vertices
  EXPECT_NO_THROW(parse_mesh("pmesh 1\nf 1 2 3\nv 0 0\nv 1 0\nv 0 1\n"));
}

TEST(Pmesh, BuildErrorsPassThrough) {
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 0\nv 1 0\nv 2 0\nf 1 2 3\n"), ErrorCode::DegenerateFace);
  EXPECT_PW_ERROR(parse_mesh("pmesh 1\nv 0 0\nv 1 0\nv 1 1\nv -1 0\nv -1 -1\nf 1 2 3\nf 1 4 5\n"),
                  ErrorCode::NonManifold);
}

TEST(Pmesh, Files) {
  const auto dir = std::filesystem::temp_directory_path() / "pentaweave_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "grid.pmesh").string();
  const Mesh m = gen("grid:2x2");
  write_text_file(path, write_mesh(m));
  EXPECT_EQ(read_mesh_file(path).face_lists(), m.face_lists());
  EXPECT_PW_ERROR(read_mesh_file((dir / "missing.pmesh").string()), ErrorCode::Io);
  EXPECT_PW_ERROR(write_text_file((dir / "no" / "such" / "dir.txt").string(), "x"), ErrorCode::Io);
  std::filesystem::remove_all(dir);
}

TEST(Palettes, NamesAndErrors) {
  for (const auto& name : palette_names()) EXPECT_FALSE(palette(name).empty()) << name;
  EXPECT_EQ(palette("paper-maritime-12").size(), 12u);
  EXPECT_EQ(palette("paper-maritime-4").size(), 4u);
  EXPECT_EQ(palette("jigsaw-20").size(), 20u);
  EXPECT_PW_ERROR(palette("rainbow"), ErrorCode::InvalidParameter);
  EXPECT_EQ(hex({255, 0, 16}), "#ff0010");
}

TEST(Palettes, FirstHitColours) {
  EXPECT_EQ(first_hit_color(-1), (Rgb{255, 255, 255}));
  EXPECT_EQ(first_hit_color(0), (Rgb{0, 0, 0}));
  for (int s = 1; s < 9; ++s) {
    const Rgb a = first_hit_color(s), b = first_hit_color(s + 1);
    EXPECT_EQ(a[0], a[1]);
    EXPECT_LT(a[0], b[0]);
  }
  for (int s = 10; s <= 14; ++s) {
    const Rgb c = first_hit_color(s);
    EXPECT_EQ(c[1], 255);
    EXPECT_LT(c[0], 255);
  }
}

TEST(WeaveJson, Structure) {
  const auto run = pipeline::run_weave(gen("grid:3x3"), pipeline::WeaveMode::QuadTwoColor, 0);
  const std::string text = weave_json(run.level.weaving, &run.coloring);
  const auto doc = nlohmann::json::parse(text);
  EXPECT_EQ(doc["format"], "pentaweave-weave");
  EXPECT_EQ(doc["version"], 1);
  EXPECT_EQ(doc["link_kind"], "edge");
  EXPECT_EQ(doc["strands"].size(), 6u);
  EXPECT_EQ(doc["crossings"].size(), 9u);
  EXPECT_EQ(doc["coloring"].size(), 16u);
  for (const auto& c : doc["crossings"]) EXPECT_NE(c["over"], c["under"]);
  for (const auto& s : doc["strands"]) EXPECT_EQ(s["crossings"].size(), s["over"].size());
  EXPECT_FALSE(nlohmann::json::parse(weave_json(run.level.weaving)).contains("coloring"));
  EXPECT_EQ(text, weave_json(run.level.weaving, &run.coloring));
}

TEST(WeaveJson, CheckFindsTampering) {
  auto w = pipeline::run_weave(gen("grid:3x3"), pipeline::WeaveMode::QuadTwoColor, 0).level.weaving;
  EXPECT_EQ(check_weave(w), "");
  auto a = w;
  a.crossings[4].over = a.crossings[4].under;
  EXPECT_NE(check_weave(a), "");
  auto b = w;
  b.strands[0].visits[0].over = !b.strands[0].visits[0].over;
  EXPECT_NE(check_weave(b), "");
  auto c = w;
  c.strands[1].visits.push_back(c.strands[1].visits.front());
  EXPECT_NE(check_weave(c), "");
}

TEST(Svg, MeshElementsAndDeterminism) {
  const Mesh m = gen("grid:2x3");
  const std::string svg = mesh_svg(m);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(count(svg, "<polygon"), m.num_faces());
  EXPECT_EQ(count(svg, "<path"), m.num_edges());
  EXPECT_EQ(count(svg, "<rect"), 0u);
  EXPECT_EQ(svg, mesh_svg(m));
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, FillModes) {
  const auto run = pipeline::run_weave(gen("grid:2x2"), pipeline::WeaveMode::QuadTwoColor, 0);
  SvgStyle style;
  style.fill_by = FillBy::Face;
  style.palette = "paper-maritime-4";
  const std::string faces = mesh_svg(run.crossing_mesh, style);
  for (const auto& c : palette("paper-maritime-4")) EXPECT_NE(faces.find(hex(c)), std::string::npos);
  style.fill_by = FillBy::Coloring;
  EXPECT_PW_ERROR(mesh_svg(run.crossing_mesh, style), ErrorCode::InvalidParameter);
  style.coloring = &run.coloring;
  EXPECT_EQ(count(mesh_svg(run.crossing_mesh, style), "<rect"), run.crossing_mesh.num_vertices());
  style.palette = "nope";
  style.fill_by = FillBy::Face;
  EXPECT_PW_ERROR(mesh_svg(run.crossing_mesh, style), ErrorCode::InvalidParameter);
}

TEST(Svg, HighlightMarksZMiddleEdges) {
  const auto run = pipeline::run_subdivision(make_pentagon(), "snub", 1);
  SvgStyle style;
  style.highlight = &run.provenance.back();
  const std::string plain = mesh_svg(run.meshes.back());
  const std::string marked = mesh_svg(run.meshes.back(), style);
  EXPECT_NE(plain, marked);
  EXPECT_EQ(count(marked, "<path"), run.meshes.back().num_edges());
}

TEST(Svg, ViewBoxFlipsY) {
  const Mesh m = Mesh::build({{0, 0}, {10, 0}, {10, 5}, {0, 5}}, {{0, 1, 2, 3}});
  const std::string svg = mesh_svg(m);
  std::smatch match;
  ASSERT_TRUE(std::regex_search(svg, match, std::regex("viewBox=\"([^\"]+)\"")));
  double x = 0, y = 0, w = 0, h = 0;
  ASSERT_EQ(std::sscanf(match[1].str().c_str(), "%lf %lf %lf %lf", &x, &y, &w, &h), 4);
  EXPECT_NEAR(x, -0.2, 1e-12);
  EXPECT_NEAR(y, -5.1, 1e-12);
  EXPECT_NEAR(w, 10.4, 1e-12);
  EXPECT_NEAR(h, 5.2, 1e-12);
}

TEST(Svg, RibbonsAndPieces) {
  const auto run = pipeline::run_weave(gen("grid:3x3"), pipeline::WeaveMode::QuadTwoColor, 0);
  const auto ribbons = pipeline::weave_ribbons(run);
  const std::string svg = ribbon_svg(ribbons, &run.refined);
  EXPECT_EQ(svg, ribbon_svg(ribbons, &run.refined));
  std::size_t pieces = 0;
  for (const auto& r : ribbons) pieces += ribbon_pieces(r).size();
  // every gap splits a ribbon
  std::size_t gaps = 0;
  for (const auto& r : ribbons) gaps += r.gaps.size();
  EXPECT_GE(pieces, ribbons.size());
  EXPECT_LE(pieces, ribbons.size() + gaps);
  EXPECT_EQ(count(polyline_svg({{0, 0}, {1, 1}, {2, 0}}), "<path"), 1u);
}

TEST(CutTemplate, SymmetryOrder) {
  EXPECT_EQ(rotational_symmetry_order(make_pentagon()), 5);
  EXPECT_EQ(rotational_symmetry_order(gen("grid:4x4")), 4);
  EXPECT_EQ(rotational_symmetry_order(gen("grid:4x2")), 2);
  EXPECT_EQ(rotational_symmetry_order(gen("ngon:12")), 12);
  EXPECT_EQ(rotational_symmetry_order(make_pentagon_flower()), 5);
  EXPECT_EQ(rotational_symmetry_order(Mesh::build({{0, 0}, {3, 0}, {0, 1}}, {{0, 1, 2}})), 1);
}

TEST(CutTemplate, SectorGroups) {
  const Mesh grid = gen("grid:8x8");
  const auto run = pipeline::run_weave(grid, pipeline::WeaveMode::QuadTwoColor, 0);
  const auto ribbons = pipeline::weave_ribbons(run);
  const auto groups = sector_groups(ribbons, {4.0, 4.0}, 4);
  ASSERT_EQ(groups.size(), ribbons.size());
  std::vector<int> per(4, 0);
  for (int g : groups) {
    ASSERT_GE(g, 0);
    ASSERT_LT(g, 4);
    ++per[g];
  }
  for (int n : per) EXPECT_EQ(n, 4);
  const std::string svg = cut_template_svg(ribbons, groups);
  EXPECT_EQ(count(svg, "<g "), 4u);
  EXPECT_PW_ERROR(sector_groups(ribbons, {4.0, 4.0}, 0), ErrorCode::InvalidParameter);
}

TEST(CutTemplate, OutlineIsClosed) {
  weave::Ribbon r;
  r.centerline = {{0, 0}, {2, 0}};
  r.width = 0.5;
  const auto loops = ribbon_outline(r);
  ASSERT_EQ(loops.size(), 1u);
  ASSERT_GE(loops[0].size(), 4u);
  double area = 0.0;
  for (std::size_t i = 0; i < loops[0].size(); ++i)
    area += cross(loops[0][i], loops[0][(i + 1) % loops[0].size()]);
  EXPECT_NEAR(std::abs(area) / 2.0, 1.0, 1e-12);
}

TEST(Rasters, Headers) {
  fractal::FirstHitRaster r;
  r.width = 3;
  r.height = 2;
  r.step = {-1, 0, 1, 2, 3, -1};
  const std::string pgm = raster_pgm(r);
  ASSERT_EQ(pgm.size(), std::string("P5\n3 2\n255\n").size() + 6);
  EXPECT_EQ(pgm.rfind("P5\n3 2\n255\n", 0), 0u);
  EXPECT_EQ(static_cast<unsigned char>(pgm[pgm.size() - 6]), 255);
  EXPECT_EQ(static_cast<unsigned char>(pgm[pgm.size() - 5]), 0);
  EXPECT_EQ(static_cast<unsigned char>(pgm[pgm.size() - 2]), 3 * 255 / 4);
  const std::string ppm = raster_ppm(r);
  EXPECT_EQ(ppm.rfind("P6\n3 2\n255\n", 0), 0u);
  EXPECT_EQ(ppm.size(), std::string("P6\n3 2\n255\n").size() + 18);
}

}  // namespace
}  // namespace pentaweave::io
