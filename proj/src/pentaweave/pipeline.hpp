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

// Whole runs as the command-line tool performs them: repeated subdivision
// with per-step count checks, and refinement followed by a weaving
// construction.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pentaweave/classic.hpp"
#include "pentaweave/mesh.hpp"
#include "pentaweave/snub.hpp"
#include "pentaweave/weaving.hpp"

namespace pentaweave::pipeline {

// "snub" or one of the classic scheme names.
struct SchemeChoice {
  bool snub = true;
  classic::Scheme classic = classic::Scheme::Loop;
};
// Throws InvalidParameter for unknown names.
SchemeChoice parse_scheme(std::string_view name);

struct StepCounts {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  long long euler = 0;
  // Snub steps only: the predicted counts from the previous mesh.
  std::optional<bool> counts_match;
};

struct SubdivisionRun {
  std::vector<Mesh> meshes;  // input first
  std::vector<StepCounts> counts;  // per mesh
  // Snub only.
  std::vector<snub::Provenance> provenance;
  int halfplane_disagreements = 0;
};

// Snub prediction for one step from M: V + 2E + F vertices, 3E + sum of
// face degrees edges, sum of face degrees faces.
StepCounts predicted_snub_counts(const Mesh& mesh);

SubdivisionRun run_subdivision(const Mesh& input, std::string_view scheme, int steps,
                               const snub::SnubOptions& options = {});

enum class WeaveMode { SnubGlue, QuadTwoColor, TriangleGlue, Sqrt3Quads, FaceSplit };

// "snub-glue", "quad-2color", "tri-glue", "sqrt3-quadize", "face-split".
WeaveMode parse_weave_mode(std::string_view name);
std::string_view weave_mode_name(WeaveMode mode);

struct WeaveRun {
  WeaveMode mode = WeaveMode::SnubGlue;
  Mesh refined;        // the subdivided input
  Mesh crossing_mesh;  // mesh whose faces/tiles are the crossings
  std::vector<std::vector<VertexId>> crossing_polygons;
  weave::VertexColoring coloring;  // quad modes
  snub::Provenance provenance;     // snub mode
  weave::WovenLevel level;
};

// Refines `input` by `steps` steps of the mode's scheme (snub, Catmull-Clark,
// Loop, sqrt(3); face-split uses snub steps, possibly none), then weaves.
// Snub and sqrt(3) modes need steps >= 1.
WeaveRun run_weave(const Mesh& input, WeaveMode mode, int steps, const snub::SnubOptions& options = {});

// Ribbons for a weave run.
std::vector<weave::Ribbon> weave_ribbons(const WeaveRun& run, double width_fraction = 0.3);

// Tile index per face of the crossing mesh, colour = owning (over) strand's
// colour; faces outside any tile get -1.
std::vector<int> strand_face_colors(const WeaveRun& run);

}  // namespace pentaweave::pipeline
