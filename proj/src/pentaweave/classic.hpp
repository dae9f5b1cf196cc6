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

// Classic planar subdivision steps: Loop, butterfly, sqrt(3), mid-edge,
// Catmull-Clark and Doo-Sabin. Each step reports where every output vertex
// came from; the weaving constructions only consume those records and the
// connectivity.

#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "pentaweave/mesh.hpp"

namespace pentaweave::classic {

struct VertexOrigin {
  enum class Kind : std::uint8_t {
    OldVertex,        // index = vertex of the input
    EdgeMidpointOf,   // index = edge of the input
    FaceCenterOf,     // index = face of the input
    CornerOf,         // index = face, corner = position of the vertex in it
    BoundaryChordOf,  // index = boundary vertex; mean of its two boundary edge midpoints
  };
  Kind kind = Kind::OldVertex;
  std::int32_t index = kInvalid;
  std::int32_t corner = kInvalid;

  friend bool operator==(const VertexOrigin&, const VertexOrigin&) = default;
};

struct SchemeStepResult {
  Mesh mesh;
  std::vector<VertexOrigin> vertex_origin;  // one per output vertex
  // sqrt(3) only: output edges created by flipping an input edge, with the
  // input edge they replace.
  std::vector<std::pair<EdgeId, EdgeId>> flipped_edges;
};

enum class Scheme { Loop, Butterfly, Sqrt3, Midedge, CatmullClark, DooSabin };

// "loop", "butterfly", "sqrt3", "midedge", "catmull-clark", "doo-sabin".
Scheme parse_scheme(std::string_view name);
std::string_view scheme_name(Scheme scheme);

// Throws NotTriangleMesh for the triangle schemes.
SchemeStepResult loop_step(const Mesh& mesh);
SchemeStepResult butterfly_step(const Mesh& mesh);
SchemeStepResult sqrt3_step(const Mesh& mesh);
SchemeStepResult midedge_step(const Mesh& mesh);
SchemeStepResult catmull_clark_step(const Mesh& mesh);
// Two mid-edge steps; origins are composed to CornerOf(face, corner) of the
// input, or BoundaryChordOf for the chords of kept boundary faces.
SchemeStepResult doo_sabin_step(const Mesh& mesh);

SchemeStepResult apply_step(Scheme scheme, const Mesh& mesh);

// Loop's vertex weight for an interior vertex of degree n.
double loop_beta(int n);
// sqrt(3) relaxation weight for an interior vertex of degree n.
double sqrt3_alpha(int n);

}  // namespace pentaweave::classic
