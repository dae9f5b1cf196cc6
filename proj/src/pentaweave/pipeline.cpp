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

#include "pentaweave/pipeline.hpp"

#include <string>

#include "pentaweave/error.hpp"

namespace pentaweave::pipeline {

namespace {

StepCounts counts_of(const Mesh& m) {
  StepCounts c;
  c.vertices = m.num_vertices();
  c.edges = m.num_edges();
  c.faces = m.num_faces();
  c.euler = euler_characteristic(m);
  return c;
}

void require_steps(int steps, int minimum) {
  if (steps < minimum)
    throw Error(ErrorCode::InvalidParameter,
                "steps must be >= " + std::to_string(minimum) + ", got " + std::to_string(steps));
}

}  // namespace

SchemeChoice parse_scheme(std::string_view name) {
  if (name == "snub") return {};
  return {false, classic::parse_scheme(name)};
}

StepCounts predicted_snub_counts(const Mesh& mesh) {
  StepCounts c;
  const std::size_t sum = mesh.face_degree_sum();
  c.vertices = mesh.num_vertices() + 2 * mesh.num_edges() + mesh.num_faces();
  c.edges = 3 * mesh.num_edges() + sum;
  c.faces = sum;
  return c;
}

SubdivisionRun run_subdivision(const Mesh& input, std::string_view scheme, int steps,
                               const snub::SnubOptions& options) {
  require_steps(steps, 0);
  const SchemeChoice choice = parse_scheme(scheme);
  SubdivisionRun run;
  run.meshes.push_back(input);
  run.counts.push_back(counts_of(input));
  if (choice.snub) {
    run.provenance.push_back(snub::original_provenance(input));
    snub::SnubOptions step_options = options;
    for (int t = 0; t < steps; ++t) {
      const StepCounts want = predicted_snub_counts(run.meshes.back());
      auto [next, record] = snub::snub_step(run.meshes.back(), step_options);
      step_options.seed_edge = 0;
      StepCounts got = counts_of(next);
      got.counts_match = got.vertices == want.vertices && got.edges == want.edges && got.faces == want.faces;
      run.halfplane_disagreements += record.halfplane_disagreements;
      run.provenance.push_back(std::move(record.provenance));
      run.meshes.push_back(std::move(next));
      run.counts.push_back(got);
    }
    return run;
  }
  for (int t = 0; t < steps; ++t) {
    run.meshes.push_back(classic::apply_step(choice.classic, run.meshes.back()).mesh);
    run.counts.push_back(counts_of(run.meshes.back()));
  }
  return run;
}

WeaveMode parse_weave_mode(std::string_view name) {
  if (name == "snub-glue") return WeaveMode::SnubGlue;
  if (name == "quad-2color") return WeaveMode::QuadTwoColor;
  if (name == "tri-glue") return WeaveMode::TriangleGlue;
  if (name == "sqrt3-quadize") return WeaveMode::Sqrt3Quads;
  if (name == "face-split") return WeaveMode::FaceSplit;
  throw Error(ErrorCode::InvalidParameter, "unknown weave mode '" + std::string(name) + "'");
}

std::string_view weave_mode_name(WeaveMode mode) {
  switch (mode) {
    case WeaveMode::SnubGlue: return "snub-glue";
    case WeaveMode::QuadTwoColor: return "quad-2color";
    case WeaveMode::TriangleGlue: return "tri-glue";
    case WeaveMode::Sqrt3Quads: return "sqrt3-quadize";
    case WeaveMode::FaceSplit: return "face-split";
  }
  return "unknown";
}

WeaveRun run_weave(const Mesh& input, WeaveMode mode, int steps, const snub::SnubOptions& options) {
  WeaveRun run;
  run.mode = mode;
  auto quad_level = [&](weave::QuadTiling q) {
    run.crossing_mesh = std::move(q.quads);
    run.coloring = std::move(q.coloring);
    run.crossing_polygons = run.crossing_mesh.face_lists();
    run.level = weave::woven_level(weave::quad_weaving(run.crossing_mesh, run.coloring), run.crossing_mesh);
  };

  switch (mode) {
    case WeaveMode::SnubGlue: {
      require_steps(steps, 1);
      auto history = snub::snub_subdivide(input, steps, options);
      run.refined = history.final_mesh();
      run.provenance = history.provenance(static_cast<std::size_t>(steps));
      const auto tiling = weave::glue_snub_pairs(run.refined, run.provenance);
      run.crossing_mesh = run.refined;
      for (const auto& tile : tiling.tiles) run.crossing_polygons.push_back(tile.polygon);
      run.level = weave::woven_level(weave::trace_snub_strands(tiling, run.refined, run.provenance), tiling,
                                     run.refined);
      break;
    }
    case WeaveMode::QuadTwoColor: {
      require_steps(steps, 0);
      Mesh m = input;
      for (int t = 0; t < steps; ++t) m = classic::catmull_clark_step(m).mesh;
      run.refined = m;
      weave::QuadTiling q;
      q.coloring = weave::two_color_vertices(m);
      q.quads = std::move(m);
      quad_level(std::move(q));
      break;
    }
    case WeaveMode::TriangleGlue: {
      require_steps(steps, 0);
      Mesh m = input;
      weave::VertexColoring col = weave::three_color_triangles(m);
      for (int t = 0; t < steps; ++t) {
        auto step = classic::loop_step(m);
        col = weave::loop_color_update(col, m, step);
        m = std::move(step.mesh);
      }
      run.refined = m;
      quad_level(weave::glue_triangle_pairs(m, col));
      break;
    }
    case WeaveMode::Sqrt3Quads: {
      require_steps(steps, 1);
      Mesh m = input;
      for (int t = 0; t + 1 < steps; ++t) m = classic::sqrt3_step(m).mesh;
      auto last = classic::sqrt3_step(m);
      run.refined = last.mesh;
      quad_level(weave::sqrt3_quadization(last));
      break;
    }
    case WeaveMode::FaceSplit: {
      require_steps(steps, 0);
      Mesh m = steps > 0 ? snub::snub_subdivide(input, steps, options).final_mesh() : input;
      run.refined = m;
      auto split = weave::general_face_split_weaving(m);
      run.crossing_mesh = std::move(split.quads.quads);
      run.coloring = std::move(split.quads.coloring);
      run.crossing_polygons = run.crossing_mesh.face_lists();
      run.level = weave::woven_level(std::move(split.weaving), run.crossing_mesh);
      break;
    }
  }
  return run;
}

std::vector<weave::Ribbon> weave_ribbons(const WeaveRun& run, double width_fraction) {
  return weave::strand_ribbons(run.level.weaving, run.crossing_mesh, run.level.centers, run.crossing_polygons,
                               width_fraction);
}

std::vector<int> strand_face_colors(const WeaveRun& run) {
  const auto& w = run.level.weaving;
  auto color_of_crossing = [&](std::int32_t c) {
    const weave::StrandId s = w.crossings[c].over;
    return s == kInvalid ? -1 : w.strands[s].color;
  };
  std::vector<int> out(run.crossing_mesh.num_faces(), -1);
  if (run.mode == WeaveMode::SnubGlue) {
    // crossing c is tile c
    const auto tiling = weave::glue_snub_pairs(run.refined, run.provenance);
    for (FaceId f = 0; f < static_cast<FaceId>(out.size()); ++f) {
      const std::int32_t t = tiling.tile_of_face[f];
      if (t != kInvalid) out[f] = color_of_crossing(t);
    }
    return out;
  }
  for (FaceId f = 0; f < static_cast<FaceId>(std::min(out.size(), w.crossings.size())); ++f)
    out[f] = color_of_crossing(f);
  return out;
}

}  // namespace pentaweave::pipeline
