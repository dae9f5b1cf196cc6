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

// Readers and writers: the pmesh text format, weave documents (JSON), SVG
// figures and cut templates, binary PGM/PPM rasters. All writers are
// deterministic.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pentaweave/fractal.hpp"
#include "pentaweave/mesh.hpp"
#include "pentaweave/snub.hpp"
#include "pentaweave/weaving.hpp"

namespace pentaweave::io {

// --- pmesh --------------------------------------------------------------------
//
//   pmesh 1
//   v <x> <y>            one per vertex, 17 significant digits
//   f <i1> <i2> ... <ik> one per face, 1-based vertex indices
//
// Blank lines and lines starting with '#' are ignored.

void write_mesh(std::ostream& out, const Mesh& mesh);
std::string write_mesh(const Mesh& mesh);

// Throws SyntaxError or OutOfRange naming the line; build errors
// (NonManifold, DegenerateFace, ...) come from Mesh::build.
Mesh parse_mesh(std::istream& in, const BuildOptions& options = {});
Mesh parse_mesh(std::string_view text, const BuildOptions& options = {});

// File variants; throw Io when the file cannot be opened or written.
Mesh read_mesh_file(const std::string& path, const BuildOptions& options = {});
void write_text_file(const std::string& path, std::string_view content);

// --- colours ------------------------------------------------------------------

using Rgb = std::array<std::uint8_t, 3>;

// "paper-maritime-12", "paper-maritime-4", "jigsaw-20". Throws
// InvalidParameter for other names.
const std::vector<Rgb>& palette(std::string_view name);
std::vector<std::string> palette_names();
std::string hex(Rgb c);

// First-hit colours: step 0 black, steps 1-9 dark to bright, 10-12 turning
// green, later steps bright green; never-hit pixels white.
Rgb first_hit_color(int step);

// --- weave documents ----------------------------------------------------------

// {"format": "pentaweave-weave", "version": 1, "link_kind": ..., "strands":
// [...], "crossings": [...], "coloring": [...]}. The coloring is omitted
// when empty.
std::string weave_json(const weave::Weaving& weaving, const weave::VertexColoring* coloring = nullptr);

// Every crossing names two distinct strands (or one at a loose end), and
// each strand's visit list agrees with the crossing records. Returns an
// empty string when consistent, otherwise the first problem found.
std::string check_weave(const weave::Weaving& weaving);

// --- SVG ----------------------------------------------------------------------

enum class FillBy { None, Face, Coloring, Strand };

struct SvgStyle {
  FillBy fill_by = FillBy::None;
  // Stroke width in model units; 0 picks 3% of the mean edge length.
  double stroke_width = 0.0;
  std::string palette = "paper-maritime-12";
  // Face: colour index per face (default: face id). Strand: per face.
  std::vector<int> face_color;
  // Coloring: c1 vertices drawn as dark squares, c2 as light ones.
  const weave::VertexColoring* coloring = nullptr;
  // Draws Z-middle edges heavier and in red.
  const snub::Provenance* highlight = nullptr;
};

// Faces by id (polygon), then edges by id (path), then vertex markers
// (rect, Coloring only; InvalidParameter without a coloring). viewBox is the bounding box plus 2% on each side, y flipped.
std::string mesh_svg(const Mesh& mesh, const SvgStyle& style = {});

// Ribbons in strand order over an optional faint mesh; under-crossings are
// broken by each ribbon's gap length.
std::string ribbon_svg(const std::vector<weave::Ribbon>& ribbons, const Mesh* backdrop = nullptr,
                       std::string_view palette_name = "paper-maritime-12");

// Open centreline pieces left after removing the gaps of a ribbon.
std::vector<std::vector<Point2>> ribbon_pieces(const weave::Ribbon& ribbon);

// Polyline (e.g. an L-system curve) as a single path.
std::string polyline_svg(const std::vector<Point2>& points, double stroke_width = 0.0);

// --- cut templates ------------------------------------------------------------

// Largest k in 2..12 such that rotating the vertex set by 2 pi / k about
// its centroid maps it onto itself (within tol); 1 if none.
int rotational_symmetry_order(const Mesh& mesh, double tol = 1e-9);

// Group of each ribbon: the sector (of k around `center`) holding the
// centroid of its centreline.
std::vector<int> sector_groups(const std::vector<weave::Ribbon>& ribbons, Point2 center, int k);

// Closed outline of a ribbon: centreline offset by half the width on both
// sides, joined by flat ends (closed ribbons give two loops).
std::vector<std::vector<Point2>> ribbon_outline(const weave::Ribbon& ribbon);

// One <g> per group (ascending), each holding the outlines of its ribbons
// as closed paths.
std::string cut_template_svg(const std::vector<weave::Ribbon>& ribbons, const std::vector<int>& groups);

// --- rasters ------------------------------------------------------------------

// P5: grey level 255 for never hit, otherwise step * 255 / (max step + 1).
std::string raster_pgm(const fractal::FirstHitRaster& raster);
// P6 with first_hit_color.
std::string raster_ppm(const fractal::FirstHitRaster& raster);

}  // namespace pentaweave::io
