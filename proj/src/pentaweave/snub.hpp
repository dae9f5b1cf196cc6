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

// Pentagon snub subdivision.
//
// One refinement step replaces every edge by a Z-shaped chain of three equal
// segments with 2pi/3 bends, adds a vertex at each face's barycenter, connects
// each barycenter to the Z-vertex lying on its side of every edge of the face,
// and finally moves every inner vertex to the mean of the barycenters of its
// incident faces. Every face of the result is a pentagon, whatever the input.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pentaweave/mesh.hpp"

namespace pentaweave::snub {

// Geometry of one Z-triplet. Segments are |e|/sqrt(7) long; the first one
// leaves the edge at angle alpha = atan(sqrt(3)/5).
struct ZTripletGeometry {
  static constexpr double sqrt3 = 1.7320508075688772935;
  static constexpr double sqrt7 = 2.6457513110645905905;
  static const double alpha;
  static constexpr double segment_ratio = 1.0 / sqrt7;
  static constexpr double bend_angle = 2.0 * kPi / 3.0;
};

// The two inner points of the Z replacing a -> b. `chirality` +1 turns the
// first segment counterclockwise (to the left of a -> b). The Z is centrally
// symmetric, so reversing the edge gives the same two points swapped.
std::array<Point2, 2> z_triplet_points(Point2 a, Point2 b, int chirality);

// Handedness of the Z placed on each edge. Handedness is a property of the
// undirected edge: seen from either endpoint the first segment turns the same
// way. A face receives only pentagons when all of its edges share one
// handedness; the two Z-vertices of an edge then sit on alternating sides
// when walking any face boundary.
struct ZOrientation {
  std::vector<std::int8_t> chirality;  // +1 / -1 per edge

  // Side (+1 left, -1 right) of the Z-vertex adjacent to the tail of the
  // directed edge, relative to that direction.
  int tail_vertex_side(EdgeId e) const { return chirality[e]; }
};

// Breadth-first propagation from the seed over edges sharing a face; each
// further connected component is seeded at its lowest edge with the same
// flag. Throws InvalidParameter for a bad seed.
ZOrientation assign_z_orientations(const Mesh& mesh, EdgeId seed_edge = 0, int seed_flag = +1);

// Throws InconsistentOrientation naming the first face with mixed handedness.
void check_z_orientation(const Mesh& mesh, const ZOrientation& orientation);

enum class EdgeTag : std::uint8_t { Original, ZMiddle, ZOuter, Spoke };
enum class VertexTag : std::uint8_t { Original, ZVertex, Barycenter };

struct Provenance {
  std::vector<VertexTag> vertex;
  std::vector<EdgeTag> edge;
};

Provenance original_provenance(const Mesh& mesh);

// Result of the edge replacement: every source face of n sides is now a
// 3n-cycle. Source vertices keep their ids; edge e's Z-vertices are
// V + 2e (next to edge(e).v0) and V + 2e + 1 (next to edge(e).v1).
struct ZTripletStage {
  Mesh mesh;
  Provenance provenance;
  ZOrientation orientation;
  std::size_t source_vertex_count = 0;

  VertexId z_vertex(EdgeId source_edge, int near_end) const {
    return static_cast<VertexId>(source_vertex_count + 2 * static_cast<std::size_t>(source_edge) + near_end);
  }
};

ZTripletStage replace_edges_with_z_triplets(const Mesh& source, const ZOrientation& orientation);

// Adds one isolated vertex per source face at the vertex centroid of the
// source face (ids V + 2E + f).
struct BarycenterStage {
  ZTripletStage z;
  std::vector<VertexId> barycenter;  // per source face

  const Mesh& mesh() const { return z.mesh; }
};

BarycenterStage insert_barycenters(const Mesh& source, ZTripletStage stage);

struct ConnectResult {
  Mesh mesh;
  Provenance provenance;
  std::vector<std::array<std::int32_t, 2>> face_parent;  // (source face, sector index)
  // Z-vertices whose half-plane choice disagrees with the barycenter's side
  // or with the closest-barycenter rule. Logged, never fatal.
  int halfplane_disagreements = 0;
};

// Connects the Z-vertices to barycenters by the half-plane rule and splits
// each 3n-cycle into n faces. Throws AmbiguousHalfPlane if a Z-vertex lies on
// its edge's line.
ConnectResult connect_new_vertices(const Mesh& source, const BarycenterStage& stage,
                                   const ElementClass& source_classes);

// Simultaneous move of each inner vertex to the mean barycenter of its faces.
Mesh smooth_inner_vertices(const Mesh& mesh, const ElementClass& classes);

struct VertexParent {
  enum class Kind : std::uint8_t { Carried, ZVertex, Barycenter };
  Kind kind = Kind::Carried;
  std::int32_t source = kInvalid;  // old vertex, source edge or source face
};

// Bookkeeping for the step M_t -> M_{t+1}.
struct StepRecord {
  Provenance provenance;                                  // on M_{t+1}
  ZOrientation orientation;                               // on M_t
  std::vector<VertexParent> vertex_parent;                // per vertex of M_{t+1}
  std::vector<std::array<std::int32_t, 2>> face_parent;   // per face of M_{t+1}
  std::vector<std::array<EdgeId, 3>> edge_children;       // per edge of M_t, from its v0
  std::vector<VertexId> fixed_vertices;                   // outer vertices of M_{t+1}
  int halfplane_disagreements = 0;
};

struct SubdivisionHistory {
  std::vector<Mesh> meshes;       // M_0 .. M_t
  std::vector<StepRecord> steps;  // steps[t] maps M_t to M_{t+1}

  std::size_t step_count() const { return steps.size(); }
  const Mesh& final_mesh() const { return meshes.back(); }
  // Provenance of M_t (all Original for t = 0).
  Provenance provenance(std::size_t t) const;
};

struct SnubOptions {
  bool smoothing = true;
  EdgeId seed_edge = 0;
  int seed_flag = +1;
};

// Fresh orientation is derived for every step from the lowest edge (or the
// configured seed at step 1).
SubdivisionHistory snub_subdivide(const Mesh& mesh, int steps, const SnubOptions& options = {});

// One step of operations 1-4 (or 1-3) with its record.
std::pair<Mesh, StepRecord> snub_step(const Mesh& mesh, const SnubOptions& options);

}  // namespace pentaweave::snub
