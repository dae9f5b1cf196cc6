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

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pentaweave/geometry.hpp"

namespace pentaweave {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using FaceId = std::int32_t;

inline constexpr std::int32_t kInvalid = -1;

// Undirected edge. Face `left` traverses it v0 -> v1, face `right` (if any)
// traverses it v1 -> v0. Edges are numbered in order of first appearance
// when walking faces in order, corners in order.
struct Edge {
  VertexId v0 = kInvalid;
  VertexId v1 = kInvalid;
  FaceId left = kInvalid;
  FaceId right = kInvalid;

  bool is_boundary() const { return right == kInvalid; }
  VertexId other(VertexId v) const { return v == v0 ? v1 : v0; }
};

struct BuildOptions {
  // Reorient clockwise faces, reject zero-area faces and zero-length edges.
  // Disable only for purely combinatorial meshes (e.g. torus identifications).
  bool geometric_checks = true;
  // O(E^2) segment-segment test.
  bool check_self_intersections = false;
  // Accept vertices where boundary cycles touch (an even number of boundary
  // edges above two). Edge adjacency stays valid; faces_around is empty there.
  bool allow_pinched_vertices = false;
};

// Indexed planar polygon mesh. Immutable after construction; connectivity is
// shared between meshes that only differ in vertex positions.
class Mesh {
 public:
  Mesh();

  // Throws Error(OutOfRange | DegenerateFace | NonManifold | InvalidParameter
  // | SelfIntersection).
  static Mesh build(std::vector<Point2> points,
                    std::vector<std::vector<VertexId>> faces,
                    const BuildOptions& options = {});

  std::size_t num_vertices() const { return positions_.size(); }
  std::size_t num_edges() const;
  std::size_t num_faces() const;

  std::span<const Point2> positions() const { return positions_; }
  const Point2& position(VertexId v) const { return positions_[v]; }

  std::span<const VertexId> face(FaceId f) const;
  std::span<const EdgeId> face_edges(FaceId f) const;
  int face_degree(FaceId f) const;
  std::vector<std::vector<VertexId>> face_lists() const;

  const Edge& edge(EdgeId e) const;
  std::span<const Edge> edges() const;
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

  std::span<const EdgeId> vertex_edges(VertexId v) const;
  std::span<const FaceId> vertex_faces(VertexId v) const;
  int degree(VertexId v) const { return static_cast<int>(vertex_edges(v).size()); }

  std::size_t num_boundary_edges() const;
  std::size_t face_degree_sum() const;

  // Vertex centroid of a face.
  Point2 barycenter(FaceId f) const;
  double signed_area(FaceId f) const;

  // Same connectivity, new positions (one per vertex, finite).
  Mesh with_positions(std::vector<Point2> positions) const;

  // Faces around an interior vertex in counterclockwise order. Empty for
  // boundary or isolated vertices.
  std::vector<FaceId> faces_around(VertexId v) const;
  // Position of v in the cycle of f, or -1.
  int corner_of(FaceId f, VertexId v) const;

  bool same_connectivity(const Mesh& other) const { return topology_ == other.topology_; }

 private:
  struct Topology;

  std::shared_ptr<const Topology> topology_;
  std::vector<Point2> positions_;
};

enum class ElementKind : std::uint8_t { Inner, Outer };

struct ElementClass {
  std::vector<ElementKind> vertex;
  std::vector<ElementKind> edge;

  std::size_t inner_vertex_count() const;
  std::size_t inner_edge_count() const;
};

// Edge is Inner iff it has two incident faces; vertex is Inner iff it has at
// least one edge and all its edges are Inner.
ElementClass classify(const Mesh& mesh);

long long euler_characteristic(const Mesh& mesh);

inline constexpr double kDefaultConvexityTolerance = 1e-9;

// Faces with some corner turning clockwise by more than `tolerance`
// (normalized cross product of consecutive edge directions).
std::vector<FaceId> convexity_report(const Mesh& mesh,
                                     double tolerance = kDefaultConvexityTolerance);

// Throws Error(SelfIntersection) naming the first offending edge pair.
void validate_no_self_intersections(const Mesh& mesh);

// Demo inputs.
struct DemoSpec {
  enum class Kind { Pentagon, Ngon, SquareGrid, FanNgon, TriangleGrid, PentagonFlower };
  Kind kind = Kind::Pentagon;
  int n = 5;
  int width = 1;
  int height = 1;
};

// Parses "pentagon", "ngon:24", "grid:4x4", "fan:24", "trigrid:4x4", "flower".
DemoSpec parse_demo_spec(const std::string& text);

// pentagon: regular, unit circumradius, first vertex at angle pi/2.
// ngon(n): same convention. square_grid(w,h): unit squares from the origin.
// fan_ngon(n): ngon triangulated from its centroid (centroid is vertex n).
// tri_grid(w,h): square grid split along the (1,1) diagonals.
// pentagon_flower: regular pentagon with its five edge-reflected neighbors.
Mesh generate_demo_mesh(const DemoSpec& spec);

Mesh make_pentagon();
Mesh make_ngon(int n);
Mesh make_square_grid(int width, int height);
Mesh make_fan_ngon(int n);
Mesh make_triangle_grid(int width, int height);
Mesh make_pentagon_flower();

}  // namespace pentaweave
