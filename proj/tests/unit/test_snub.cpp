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

#include <algorithm>
#include <cmath>
#include <map>

#include "oracles/snub_oracle.hpp"
#include "pentaweave/pipeline.hpp"
#include "pentaweave/snub.hpp"
#include "test_util.hpp"

namespace pentaweave::snub {
namespace {

using testing::gen;
using testing::to_soup;

TEST(ZTriplet, UnitEdgePoints) {
  const auto z = z_triplet_points({0, 0}, {1, 0}, +1);
  const double r3 = std::sqrt(3.0);
  EXPECT_NEAR(z[0].x, 5.0 / 14.0, 1e-15);
  EXPECT_NEAR(z[0].y, r3 / 14.0, 1e-15);
  EXPECT_NEAR(z[1].x, 9.0 / 14.0, 1e-15);
  EXPECT_NEAR(z[1].y, -r3 / 14.0, 1e-15);
  const auto m = z_triplet_points({0, 0}, {1, 0}, -1);
  EXPECT_NEAR(m[0].y, -r3 / 14.0, 1e-15);
  EXPECT_NEAR(m[1].y, r3 / 14.0, 1e-15);
}

TEST(ZTriplet, ThreeEqualSegmentsWithSixtyDegreeBends) {
  const Point2 a{0.3, -1.2}, b{2.1, 0.4};
  const auto z = z_triplet_points(a, b, +1);
  const double len = distance(a, b);
  for (double s : {distance(a, z[0]), distance(z[0], z[1]), distance(z[1], b)})
    EXPECT_NEAR(s, len / std::sqrt(7.0), 1e-14);
  const Point2 d1 = z[0] - a, d2 = z[1] - z[0], d3 = b - z[1];
  EXPECT_NEAR(std::atan2(cross(d1, d2), dot(d1, d2)), -kPi / 3.0, 1e-14);
  EXPECT_NEAR(std::atan2(cross(d2, d3), dot(d2, d3)), kPi / 3.0, 1e-14);
  // leaves the edge at atan(sqrt3 / 5)
  EXPECT_NEAR(std::atan2(cross(b - a, d1), dot(b - a, d1)), ZTripletGeometry::alpha, 1e-14);
  EXPECT_NEAR(ZTripletGeometry::alpha, std::atan2(std::sqrt(3.0), 5.0), 1e-16);
}

TEST(Orientation, UniformOnConnectedMesh) {
  const Mesh m = gen("grid:3x3");
  for (int flag : {+1, -1}) {
    const ZOrientation o = assign_z_orientations(m, 5, flag);
    ASSERT_EQ(o.chirality.size(), m.num_edges());
    for (auto c : o.chirality) EXPECT_EQ(c, flag);
    EXPECT_NO_THROW(check_z_orientation(m, o));
  }
}

TEST(Orientation, Errors) {
  const Mesh m = gen("grid:2x2");
  EXPECT_PW_ERROR(assign_z_orientations(m, 0, 0), ErrorCode::InvalidParameter);
  EXPECT_PW_ERROR(assign_z_orientations(m, 99, 1), ErrorCode::InvalidParameter);
  EXPECT_PW_ERROR(assign_z_orientations(m, -1, 1), ErrorCode::InvalidParameter);
  ZOrientation o = assign_z_orientations(m);
  o.chirality[3] = -1;
  EXPECT_PW_ERROR(check_z_orientation(m, o), ErrorCode::InconsistentOrientation);
  o.chirality[3] = 0;
  EXPECT_PW_ERROR(check_z_orientation(m, o), ErrorCode::InvalidParameter);
  o.chirality.pop_back();
  EXPECT_PW_ERROR(check_z_orientation(m, o), ErrorCode::InvalidParameter);
}

// Brute-force turtle construction, merged by position, vs the library.
class BruteForce : public ::testing::TestWithParam<std::pair<const char*, bool>> {};

TEST_P(BruteForce, MatchesOracle) {
  const auto [spec, smoothing] = GetParam();
  const Mesh m = gen(spec);
  SnubOptions opts;
  opts.smoothing = smoothing;
  const auto h = snub_subdivide(m, 2, opts);
  oracle::Soup soup = to_soup(m);
  for (int t = 1; t <= 2; ++t) {
    soup = oracle::snub_step(soup, smoothing);
    std::string why;
    EXPECT_TRUE(oracle::same_mesh(soup, to_soup(h.meshes[t]), 1e-11, &why)) << spec << " t=" << t << ": " << why;
  }
}

INSTANTIATE_TEST_SUITE_P(Inputs, BruteForce,
                         ::testing::Values(std::make_pair("pentagon", true), std::make_pair("pentagon", false),
                                           std::make_pair("grid:3x3", true), std::make_pair("fan:6", true),
                                           std::make_pair("flower", false)));

TEST(Snub, MirrorSeedGivesMirrorImage) {
  // the pentagon is symmetric about the y axis
  SnubOptions left, right;
  right.seed_flag = -1;
  const Mesh a = snub_subdivide(make_pentagon(), 2, left).final_mesh();
  const Mesh b = snub_subdivide(make_pentagon(), 2, right).final_mesh();
  oracle::Soup reflected = to_soup(a);
  for (auto& p : reflected.points) p[0] = -p[0];
  std::string why;
  EXPECT_TRUE(oracle::same_mesh(reflected, to_soup(b), 1e-12, &why)) << why;
  EXPECT_FALSE(oracle::same_mesh(to_soup(a), to_soup(b), 1e-9, nullptr));
}

TEST(Snub, ProvenanceAfterOneStep) {
  const auto h = snub_subdivide(make_pentagon(), 1);
  const Provenance& p = h.steps[0].provenance;
  std::map<VertexTag, int> vt;
  std::map<EdgeTag, int> et;
  for (auto t : p.vertex) ++vt[t];
  for (auto t : p.edge) ++et[t];
  EXPECT_EQ(vt[VertexTag::Original], 5);
  EXPECT_EQ(vt[VertexTag::ZVertex], 10);
  EXPECT_EQ(vt[VertexTag::Barycenter], 1);
  EXPECT_EQ(et[EdgeTag::ZMiddle], 5);
  EXPECT_EQ(et[EdgeTag::ZOuter], 10);
  EXPECT_EQ(et[EdgeTag::Spoke], 5);
  EXPECT_EQ(et[EdgeTag::Original], 0);
  // every pentagon has one Z-middle edge
  const Mesh& m = h.final_mesh();
  for (FaceId f = 0; f < static_cast<FaceId>(m.num_faces()); ++f) {
    EXPECT_EQ(m.face_degree(f), 5);
    int middles = 0;
    for (EdgeId e : m.face_edges(f)) middles += p.edge[e] == EdgeTag::ZMiddle;
    EXPECT_EQ(middles, 1) << "face " << f;
  }
}

TEST(Snub, OuterVerticesStayPut) {
  const Mesh m = gen("grid:2x2");
  SnubOptions raw;
  raw.smoothing = false;
  const auto [plain, rec0] = snub_step(m, raw);
  const auto [smoothed, rec1] = snub_step(m, {});
  const ElementClass c = classify(smoothed);
  ASSERT_EQ(plain.num_vertices(), smoothed.num_vertices());
  std::size_t moved = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(plain.num_vertices()); ++v) {
    if (c.vertex[v] == ElementKind::Outer) {
      EXPECT_EQ(plain.position(v), smoothed.position(v));
    } else {
      moved += distance(plain.position(v), smoothed.position(v)) > 1e-12;
    }
  }
  EXPECT_GT(moved, 0u);
  EXPECT_EQ(rec1.fixed_vertices.size(), m.num_boundary_edges() * 3);
}

TEST(Snub, PredictedCountsMatch) {
  for (const char* spec : {"pentagon", "grid:4x3", "fan:7", "trigrid:3x3", "flower"}) {
    const auto run = pipeline::run_subdivision(gen(spec), "snub", 3);
    for (std::size_t t = 1; t < run.counts.size(); ++t) {
      ASSERT_TRUE(run.counts[t].counts_match.has_value());
      EXPECT_TRUE(*run.counts[t].counts_match) << spec << " t=" << t;
      const auto p = pipeline::predicted_snub_counts(run.meshes[t - 1]);
      EXPECT_EQ(p.vertices, run.counts[t].vertices);
      EXPECT_EQ(p.edges, run.counts[t].edges);
      EXPECT_EQ(p.faces, run.counts[t].faces);
    }
  }
}

TEST(Snub, ParentsAndChildren) {
  const Mesh m = gen("grid:2x2");
  const auto [fine, rec] = snub_step(m, {});
  ASSERT_EQ(rec.vertex_parent.size(), fine.num_vertices());
  ASSERT_EQ(rec.face_parent.size(), fine.num_faces());
  ASSERT_EQ(rec.edge_children.size(), m.num_edges());
  for (EdgeId e = 0; e < static_cast<EdgeId>(m.num_edges()); ++e) {
    // the three children chain from v0 to v1
    const Edge& old = m.edge(e);
    VertexId at = old.v0;
    for (EdgeId c : rec.edge_children[e]) {
      const Edge& ce = fine.edge(c);
      ASSERT_TRUE(ce.v0 == at || ce.v1 == at) << "edge " << e;
      at = ce.other(at);
    }
    EXPECT_EQ(at, old.v1);
  }
  std::vector<int> per_face(m.num_faces(), 0);
  for (const auto& fp : rec.face_parent) ++per_face[fp[0]];
  for (int n : per_face) EXPECT_EQ(n, 4);
}

TEST(Snub, NegativeStepsRejected) {
  EXPECT_PW_ERROR(snub_subdivide(make_pentagon(), -1), ErrorCode::InvalidParameter);
  const auto h = snub_subdivide(make_pentagon(), 0);
  EXPECT_EQ(h.meshes.size(), 1u);
  EXPECT_PW_ERROR(h.provenance(3), ErrorCode::OutOfRange);
}

}  // namespace
}  // namespace pentaweave::snub
