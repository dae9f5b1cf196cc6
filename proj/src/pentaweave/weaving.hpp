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

// Weaving patterns read off subdivided meshes.
//
// Snub meshes: pentagons sharing a Z-middle edge are glued into octagons.
// The vertex of a pentagon opposite its Z-middle edge is an endpoint of the
// Z-middle edge of some other tile; that pentagon therefore links its own
// tile (outgoing) to the other tile (incoming). Every tile has an outgoing
// port and an incoming port, each joined to at most two links, and strands
// are the connected components of the port graph. A strand owns the tiles it
// leaves through (drawn on top) and passes beneath the tiles it enters.
//
// Quad meshes: each quad is a crossing of the two strands running between
// its opposite edges. With a proper two-colouring of the vertices, the strand
// entering across an edge with its c1 endpoint on the left passes over.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "pentaweave/classic.hpp"
#include "pentaweave/mesh.hpp"
#include "pentaweave/snub.hpp"

namespace pentaweave::weave {

enum class Color : std::uint8_t { C1 = 1, C2 = 2 };

struct VertexColoring {
  std::vector<Color> color;

  Color operator[](VertexId v) const { return color[v]; }
  std::size_t size() const { return color.size(); }
  VertexColoring swapped() const;
};

// A glued tile: one face (singleton) or two faces sharing `shared_edge`.
struct Tile {
  std::vector<FaceId> faces;
  EdgeId shared_edge = kInvalid;
  std::vector<VertexId> polygon;  // counterclockwise outline

  bool is_pair() const { return faces.size() == 2; }
};

struct GluedTiling {
  std::vector<Tile> tiles;
  std::vector<std::int32_t> tile_of_face;  // per face of the glued mesh

  std::size_t pair_count() const;
  std::size_t singleton_count() const;
};

using StrandId = std::int32_t;

// One crossing per tile (snub) or per quad face.
struct Crossing {
  std::int32_t tile = kInvalid;
  StrandId over = kInvalid;
  StrandId under = kInvalid;
};

struct Visit {
  std::int32_t crossing = kInvalid;
  bool over = false;
};

struct Strand {
  std::vector<Visit> visits;
  // links[i] joins visits[i] and visits[i + 1] (and, for closed strands,
  // links.back() joins the last visit to the first): a mesh edge for quad
  // weavings, the linking pentagon for snub weavings.
  std::vector<std::int32_t> links;
  bool closed = false;
  int color = 0;
};

struct Weaving {
  enum class LinkKind : std::uint8_t { Edge, Face };

  LinkKind link_kind = LinkKind::Edge;
  std::vector<Crossing> crossings;
  std::vector<Strand> strands;

  std::size_t visit_count() const;
};

// --- snub -----------------------------------------------------------------

// Throws MissingProvenance unless every face has exactly one Z-middle edge.
GluedTiling glue_snub_pairs(const Mesh& mesh, const snub::Provenance& provenance);

// For a snub pentagon: the vertex opposite its Z-middle edge.
VertexId opposite_vertex(const Mesh& mesh, FaceId face, EdgeId z_middle);

Weaving trace_snub_strands(const GluedTiling& tiling, const Mesh& mesh, const snub::Provenance& provenance);

// --- quads ------------------------------------------------------------------

// Breadth-first from the lowest-index uncoloured vertex with c1. Throws
// NotQuadMesh, NotBipartite.
VertexColoring two_color_vertices(const Mesh& mesh);

// Throws NotQuadMesh, or NotBipartite if `coloring` is not proper.
Weaving quad_weaving(const Mesh& mesh, const VertexColoring& coloring);

// A quad mesh derived from another mesh, sharing its vertex ids. Tile i is
// quad face i for i < quads.num_faces(); leftover faces follow as singletons.
struct QuadTiling {
  Mesh quads;
  GluedTiling tiling;
  VertexColoring coloring;
};

// --- triangles ----------------------------------------------------------------

// Throws InvalidTriangleColoring unless every triangle has exactly one c1.
void triangle_coloring_check(const Mesh& mesh, const VertexColoring& coloring);

// Proper 3-colouring of a triangle mesh's vertices (vertex 0's class is c1,
// the other two classes c2), propagated face to face. Throws NotTriangleMesh,
// or InvalidTriangleColoring when no such colouring exists.
VertexColoring three_color_triangles(const Mesh& mesh);

// Old vertices keep colours; an edge vertex between c1 and c2 becomes c2,
// between two c2 vertices c1. Result is validated on step.mesh.
VertexColoring loop_color_update(const VertexColoring& old_coloring, const Mesh& old_mesh,
                                 const classic::SchemeStepResult& step);

// Merges triangles across their c2-c2 edges. A c2-c2 edge on the boundary
// leaves its triangle as a singleton.
QuadTiling glue_triangle_pairs(const Mesh& mesh, const VertexColoring& coloring);

// Removes the flipped edges of a sqrt(3) step: quads (a, c_g, b, c_f) with
// old vertices c1 and face centres c2. Throws MissingOriginRecords.
QuadTiling sqrt3_quadization(const classic::SchemeStepResult& step);

// Face centres joined to their face's vertices, original edges removed: one
// quad per interior edge. Throws NoInteriorEdges.
struct FaceSplitWeaving {
  QuadTiling quads;
  Weaving weaving;
};
FaceSplitWeaving general_face_split_weaving(const Mesh& mesh);

// --- geometry ---------------------------------------------------------------

// Vertex centroid of each tile's outline.
std::vector<Point2> tile_centers(const GluedTiling& tiling, const Mesh& mesh);

// Same for quad weavings, where tiles are faces.
std::vector<Point2> face_centers(const Mesh& mesh);

struct Ribbon {
  StrandId strand = kInvalid;
  int color = 0;
  bool closed = false;
  std::vector<Point2> centerline;
  double width = 0.0;
  // Centerline indices of crossings passed beneath; each gap is
  // gap_length long, centred on that point.
  std::vector<std::size_t> gaps;
  double gap_length = 0.0;
};

// Centerline through tile centres and the link points between them (edge
// midpoints for quad weavings, pentagon centroids for snub weavings).
// Width is width_fraction times the mean edge length of the visited tiles.
// Throws InvalidParameter unless 0 < width_fraction < 1.
std::vector<Ribbon> strand_ribbons(const Weaving& weaving, const Mesh& mesh,
                                   const std::vector<Point2>& crossing_centers,
                                   const std::vector<std::vector<VertexId>>& crossing_polygons,
                                   double width_fraction);

// Number of distinct strands visiting a crossing whose centre lies in the
// open box.
std::size_t count_strands_in_box(const Weaving& weaving, const std::vector<Point2>& crossing_centers,
                                 Point2 lo, Point2 hi);

// --- refinement genealogy -------------------------------------------------------

struct Box {
  Point2 lo;
  Point2 hi;
  bool contains(Point2 p) const { return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y; }
};

// A weaving together with the centre and outline of every crossing.
struct WovenLevel {
  Weaving weaving;
  std::vector<Point2> centers;
  std::vector<std::vector<Point2>> outlines;
};

WovenLevel woven_level(Weaving weaving, const GluedTiling& tiling, const Mesh& mesh);
// Quad weavings: crossing i is face i.
WovenLevel woven_level(Weaving weaving, const Mesh& quads);

// A piece is a maximal run of consecutive visits of one strand whose crossing
// centres lie inside `trace`.
struct Piece {
  StrandId strand = kInvalid;
  std::vector<Visit> visits;
};
std::vector<Piece> strand_pieces(const WovenLevel& level, const Box& trace);

// Each piece of `fine` is assigned to the piece of `coarse` it follows: every
// visit votes for the coarse pieces through the coarse crossing containing the
// visit's centre; the most votes wins (lowest index on ties). Parents are the
// coarse pieces touching `region`, children the fine pieces touching `region`
// whose assigned parent is one of them.
struct StrandSplit {
  std::vector<std::size_t> parents;              // coarse piece indices
  std::vector<std::size_t> children_per_parent;  // parallel to parents
  std::size_t child_count = 0;
  std::size_t orphan_count = 0;  // fine pieces in region with no parent at all

  // True iff every parent has exactly `k` children and nothing is orphaned.
  bool uniform(std::size_t k) const;
};
StrandSplit strand_split(const WovenLevel& coarse, const WovenLevel& fine, const Box& trace, const Box& region);

}  // namespace pentaweave::weave
