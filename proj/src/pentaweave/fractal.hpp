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

// Fractal behaviour of snub refinement: the boundary curve, its L-system,
// length growth and dimension, curves traced through the interior, and the
// first-hit raster.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pentaweave/mesh.hpp"
#include "pentaweave/snub.hpp"

namespace pentaweave::fractal {

inline constexpr int kDefaultDepthCap = 12;

// The limit of the refined boundary stays within this fraction of an edge's
// length from the edge (numerically 0.12976).
inline constexpr double kBoundaryDeviation = 0.135;

// Rule F -> ∇F−F+F△ with ∇/△ turning by +/-alpha and +/− by +/-pi/3.
// Symbols are UTF-8.
struct LSystemCurve {
  std::string symbols;
  std::vector<Point2> polyline;  // from (0,0) to (1,0)
};

// Throws InvalidParameter for depth < 0, DepthTooLarge above the cap.
LSystemCurve lsystem_expand(int depth, int depth_cap = kDefaultDepthCap);

// Sum of boundary edge lengths of every mesh in the history.
std::vector<double> boundary_lengths(const snub::SubdivisionHistory& history);

struct DimensionEstimate {
  double dimension = 1.0;
  double residual = 0.0;  // RMS deviation of the log-log fit
};

// One minus the slope of log L_t against log s_t with s_t = scale_ratio^t.
// Throws InsufficientData below 3 entries, InvalidParameter for non-positive
// lengths or a ratio outside (0, 1).
DimensionEstimate estimate_fractal_dimension(const std::vector<double>& lengths,
                                             double scale_ratio = 1.0 / snub::ZTripletGeometry::sqrt7);

// Box counting on a square grid of 2^k cells per side over the bounding
// square of the polylines, k = k_min..k_max; slope of log N against k log 2.
DimensionEstimate box_counting_dimension(const std::vector<std::vector<Point2>>& polylines, int k_min = 4,
                                         int k_max = 10);

// Closed boundary loops of a mesh as position sequences (first point
// repeated at the end).
std::vector<std::vector<Point2>> boundary_polylines(const Mesh& mesh);

// A curve of M_t0 followed through refinement, each edge replaced by its
// three children per step.
struct TrackedCurve {
  EdgeId seed = kInvalid;
  std::vector<std::vector<VertexId>> chain;  // per step from t0
  std::vector<double> lengths;
  std::vector<double> endpoint_distance;
  // Both endpoints keep their position at every step.
  bool endpoints_fixed = false;
};

struct CurveFamily {
  std::size_t t0 = 0;
  std::vector<TrackedCurve> curves;
};

// Throws UnknownSeed for edges not in M_t0 (or t0 beyond the history).
CurveFamily track_inner_curves(const snub::SubdivisionHistory& history, std::size_t t0,
                               const std::vector<EdgeId>& seeds);

// Vertex chain of M_{t+1} replacing the chain of M_t.
std::vector<VertexId> refine_chain(const snub::SubdivisionHistory& history, std::size_t t,
                                   const std::vector<VertexId>& chain);

struct RasterWindow {
  Point2 lo;
  Point2 hi;
};

// Square window around the bounding box of `mesh` grown by the boundary
// deviation of its longest boundary edge, 2% margin on each side.
RasterWindow default_window(const Mesh& mesh);

// Pixel (col, row) covers [col, col + 1) x [row, row + 1) in image
// coordinates; row 0 is the top of the window.
struct FirstHitRaster {
  int width = 0;
  int height = 0;
  RasterWindow window;
  std::vector<std::int16_t> step;  // row-major, -1 = never hit
  std::vector<std::size_t> new_pixels;  // per step of the history
  // No later step can colour another pixel (local rasters only).
  bool exhausted = false;
  // Last step that coloured a pixel: for history rasters, if a later step
  // exists that coloured none; for local rasters, once exhausted.
  std::optional<int> saturation_step;

  std::int16_t at(int col, int row) const { return step[static_cast<std::size_t>(row) * width + col]; }
};

// Throws InvalidParameter for resolution < 16 or an empty window.
FirstHitRaster first_hit_raster(const snub::SubdivisionHistory& history, int resolution,
                                const std::optional<RasterWindow>& window = std::nullopt);

// Same raster without keeping whole meshes: each step refines only the faces
// within a few edge lengths of pixels that can still be hit. Vertices whose
// positions may differ from the full refinement (near the cuts) are tracked
// and never counted; Internal is thrown if such a vertex could matter.
// Stops when no pixel can be hit any more (exhausted) or after max_steps.
inline constexpr double kPruneMargin = 4.0;
FirstHitRaster first_hit_raster_local(const Mesh& input, int resolution, int max_steps,
                                      const snub::SnubOptions& options = {},
                                      const std::optional<RasterWindow>& window = std::nullopt);

}  // namespace pentaweave::fractal
