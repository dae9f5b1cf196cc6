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

#include "pentaweave/snub.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "pentaweave/error.hpp"

namespace pentaweave::snub {

const double ZTripletGeometry::alpha = std::atan(ZTripletGeometry::sqrt3 / 5.0);

namespace {

constexpr double kHalfPlaneTolerance = 1e-12;

// Meshes assembled here are counterclockwise by construction; skip the
// reorientation pass so face cycles stay exactly as emitted.
const BuildOptions kTrusted{.geometric_checks = false, .check_self_intersections = false};

}  // namespace

std::array<Point2, 2> z_triplet_points(Point2 a, Point2 b, int chirality) {
  const Point2 d = b - a;
  const double s = chirality >= 0 ? 1.0 : -1.0;
  // Rotation by alpha scaled to 1/sqrt(7): (5 + i s sqrt3) / 14.
  const Point2 w{(5.0 * d.x - s * ZTripletGeometry::sqrt3 * d.y) / 14.0,
                 (s * ZTripletGeometry::sqrt3 * d.x + 5.0 * d.y) / 14.0};
  return {a + w, b - w};
}

ZOrientation assign_z_orientations(const Mesh& mesh, EdgeId seed_edge, int seed_flag) {
  const auto edge_count = static_cast<EdgeId>(mesh.num_edges());
  if (seed_flag != 1 && seed_flag != -1) {
    throw Error(ErrorCode::InvalidParameter, "seed flag must be +1 or -1, got " + std::to_string(seed_flag));
  }
  if (edge_count == 0) return {};
  if (seed_edge < 0 || seed_edge >= edge_count) {
    throw Error(ErrorCode::InvalidParameter, "seed edge " + std::to_string(seed_edge) + " out of range");
  }

  ZOrientation out;
  out.chirality.assign(edge_count, 0);
  std::deque<EdgeId> queue;

  auto flood = [&](EdgeId start) {
    out.chirality[start] = static_cast<std::int8_t>(seed_flag);
    queue.push_back(start);
    while (!queue.empty()) {
      const EdgeId e = queue.front();
      queue.pop_front();
      const Edge& edge = mesh.edge(e);
      for (FaceId f : {edge.left, edge.right}) {
        if (f == kInvalid) continue;
        for (EdgeId g : mesh.face_edges(f)) {
          if (out.chirality[g] == 0) {
            out.chirality[g] = out.chirality[e];
            queue.push_back(g);
          } else if (out.chirality[g] != out.chirality[e]) {
            throw Error(ErrorCode::InconsistentOrientation,
                        "edges " + std::to_string(e) + " and " + std::to_string(g) + " of face " +
                            std::to_string(f) + " disagree");
          }
        }
      }
    }
  };

  flood(seed_edge);
  for (EdgeId e = 0; e < edge_count; ++e) {
    if (out.chirality[e] == 0) flood(e);
  }
  return out;
}

void check_z_orientation(const Mesh& mesh, const ZOrientation& orientation) {
  if (orientation.chirality.size() != mesh.num_edges()) {
    throw Error(ErrorCode::InvalidParameter, "orientation has " + std::to_string(orientation.chirality.size()) +
                                                 " flags for " + std::to_string(mesh.num_edges()) + " edges");
  }
  for (std::size_t e = 0; e < orientation.chirality.size(); ++e) {
    const int c = orientation.chirality[e];
    if (c != 1 && c != -1) {
      throw Error(ErrorCode::InvalidParameter, "edge " + std::to_string(e) + " has flag " + std::to_string(c));
    }
  }
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    const auto edges = mesh.face_edges(f);
    for (EdgeId e : edges) {
      if (orientation.chirality[e] != orientation.chirality[edges[0]]) {
        throw Error(ErrorCode::InconsistentOrientation,
                    "face " + std::to_string(f) + " mixes Z handedness (edges " + std::to_string(edges[0]) +
                        " and " + std::to_string(e) + ")");
      }
    }
  }
}

Provenance original_provenance(const Mesh& mesh) {
  return {std::vector<VertexTag>(mesh.num_vertices(), VertexTag::Original),
          std::vector<EdgeTag>(mesh.num_edges(), EdgeTag::Original)};
}

ZTripletStage replace_edges_with_z_triplets(const Mesh& source, const ZOrientation& orientation) {
  check_z_orientation(source, orientation);

  const std::size_t nv = source.num_vertices();
  const std::size_t ne = source.num_edges();

  ZTripletStage stage;
  stage.orientation = orientation;
  stage.source_vertex_count = nv;

  std::vector<Point2> points(source.positions().begin(), source.positions().end());
  points.reserve(nv + 2 * ne);
  for (EdgeId e = 0; e < static_cast<EdgeId>(ne); ++e) {
    const Edge& edge = source.edge(e);
    const auto z = z_triplet_points(source.position(edge.v0), source.position(edge.v1), orientation.chirality[e]);
    points.push_back(z[0]);
    points.push_back(z[1]);
  }

  std::vector<std::vector<VertexId>> faces(source.num_faces());
  for (FaceId f = 0; f < static_cast<FaceId>(source.num_faces()); ++f) {
    const auto verts = source.face(f);
    const auto edges = source.face_edges(f);
    auto& cycle = faces[f];
    cycle.reserve(3 * verts.size());
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const EdgeId e = edges[k];
      const bool forward = source.edge(e).v0 == verts[k];
      cycle.push_back(verts[k]);
      cycle.push_back(stage.z_vertex(e, forward ? 0 : 1));
      cycle.push_back(stage.z_vertex(e, forward ? 1 : 0));
    }
  }

  stage.mesh = Mesh::build(std::move(points), std::move(faces), kTrusted);

  stage.provenance.vertex.assign(nv + 2 * ne, VertexTag::ZVertex);
  std::fill(stage.provenance.vertex.begin(), stage.provenance.vertex.begin() + nv, VertexTag::Original);
  stage.provenance.edge.assign(stage.mesh.num_edges(), EdgeTag::ZOuter);
  for (EdgeId e = 0; e < static_cast<EdgeId>(stage.mesh.num_edges()); ++e) {
    const Edge& edge = stage.mesh.edge(e);
    if (edge.v0 >= static_cast<VertexId>(nv) && edge.v1 >= static_cast<VertexId>(nv) &&
        (edge.v0 - nv) / 2 == (edge.v1 - nv) / 2) {
      stage.provenance.edge[e] = EdgeTag::ZMiddle;
    }
  }
  return stage;
}

BarycenterStage insert_barycenters(const Mesh& source, ZTripletStage stage) {
  std::vector<Point2> points(stage.mesh.positions().begin(), stage.mesh.positions().end());
  BarycenterStage out;
  out.barycenter.reserve(source.num_faces());
  for (FaceId f = 0; f < static_cast<FaceId>(source.num_faces()); ++f) {
    out.barycenter.push_back(static_cast<VertexId>(points.size()));
    points.push_back(source.barycenter(f));
  }
  stage.provenance.vertex.resize(points.size(), VertexTag::Barycenter);
  stage.mesh = Mesh::build(std::move(points), stage.mesh.face_lists(), kTrusted);
  out.z = std::move(stage);
  return out;
}

ConnectResult connect_new_vertices(const Mesh& source, const BarycenterStage& stage,
                                   const ElementClass& source_classes) {
  const ZTripletStage& z = stage.z;
  const Mesh& work = stage.mesh();
  const auto nv = static_cast<VertexId>(z.source_vertex_count);
  const auto ne = static_cast<EdgeId>(source.num_edges());

  ConnectResult result;

  // Face of the source mesh each Z-vertex is joined to (kInvalid = none).
  std::vector<FaceId> target(2 * static_cast<std::size_t>(ne), kInvalid);
  for (EdgeId e = 0; e < ne; ++e) {
    const Edge& edge = source.edge(e);
    const Point2 a = source.position(edge.v0);
    const Point2 b = source.position(edge.v1);
    const double scale = dot(b - a, b - a);
    for (int end = 0; end < 2; ++end) {
      const VertexId zv = z.z_vertex(e, end);
      const double side = orient(a, b, work.position(zv));
      if (std::abs(side) <= kHalfPlaneTolerance * scale) {
        throw Error(ErrorCode::AmbiguousHalfPlane,
                    "Z-vertex " + std::to_string(zv) + " lies on the line of edge " + std::to_string(e));
      }
      const FaceId chosen = side > 0 ? edge.left : edge.right;
      // Outer edges only feed their single face.
      if (source_classes.edge[e] == ElementKind::Outer && chosen != edge.left) continue;
      target[2 * e + end] = chosen;

      // Cross-checks against the geometric reading of the rule.
      const Point2 c = work.position(stage.barycenter[chosen]);
      bool disagree = orient(a, b, c) * side <= 0.0;
      if (!edge.is_boundary()) {
        const FaceId other = chosen == edge.left ? edge.right : edge.left;
        const Point2 o = work.position(stage.barycenter[other]);
        if (distance(o, work.position(zv)) < distance(c, work.position(zv))) disagree = true;
      }
      if (disagree) ++result.halfplane_disagreements;
    }
  }

  std::vector<std::vector<VertexId>> faces;
  faces.reserve(source.face_degree_sum());
  result.face_parent.reserve(source.face_degree_sum());
  std::vector<std::size_t> spokes;
  for (FaceId f = 0; f < static_cast<FaceId>(source.num_faces()); ++f) {
    const auto cycle = work.face(f);
    spokes.clear();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const VertexId v = cycle[i];
      if (v >= nv && target[v - nv] == f) spokes.push_back(i);
    }
    if (spokes.size() != static_cast<std::size_t>(source.face_degree(f))) {
      throw Error(ErrorCode::InconsistentOrientation,
                  "face " + std::to_string(f) + " received " + std::to_string(spokes.size()) + " spokes for " +
                      std::to_string(source.face_degree(f)) + " sides");
    }
    const VertexId c = stage.barycenter[f];
    for (std::size_t j = 0; j < spokes.size(); ++j) {
      const std::size_t from = spokes[j];
      const std::size_t to = spokes[(j + 1) % spokes.size()];
      std::vector<VertexId> face{c};
      for (std::size_t i = from;; i = (i + 1) % cycle.size()) {
        face.push_back(cycle[i]);
        if (i == to) break;
      }
      faces.push_back(std::move(face));
      result.face_parent.push_back({f, static_cast<std::int32_t>(j)});
    }
  }

  result.mesh = Mesh::build(std::vector<Point2>(work.positions().begin(), work.positions().end()),
                            std::move(faces), kTrusted);

  result.provenance.vertex = z.provenance.vertex;
  result.provenance.edge.resize(result.mesh.num_edges());
  for (EdgeId e = 0; e < static_cast<EdgeId>(result.mesh.num_edges()); ++e) {
    const Edge& edge = result.mesh.edge(e);
    const VertexTag t0 = result.provenance.vertex[edge.v0];
    const VertexTag t1 = result.provenance.vertex[edge.v1];
    if (t0 == VertexTag::Barycenter || t1 == VertexTag::Barycenter) {
      result.provenance.edge[e] = EdgeTag::Spoke;
    } else if (t0 == VertexTag::ZVertex && t1 == VertexTag::ZVertex && (edge.v0 - nv) / 2 == (edge.v1 - nv) / 2) {
      result.provenance.edge[e] = EdgeTag::ZMiddle;
    } else {
      result.provenance.edge[e] = EdgeTag::ZOuter;
    }
  }
  return result;
}

Mesh smooth_inner_vertices(const Mesh& mesh, const ElementClass& classes) {
  std::vector<Point2> centers(mesh.num_faces());
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) centers[f] = mesh.barycenter(f);

  std::vector<Point2> points(mesh.positions().begin(), mesh.positions().end());
  for (VertexId v = 0; v < static_cast<VertexId>(mesh.num_vertices()); ++v) {
    if (classes.vertex[v] != ElementKind::Inner) continue;
    const auto faces = mesh.vertex_faces(v);
    if (faces.empty()) continue;
    Point2 sum;
    for (FaceId f : faces) sum += centers[f];
    points[v] = sum / static_cast<double>(faces.size());
  }
  return mesh.with_positions(std::move(points));
}

std::pair<Mesh, StepRecord> snub_step(const Mesh& mesh, const SnubOptions& options) {
  StepRecord record;
  const ElementClass classes = classify(mesh);
  record.orientation = assign_z_orientations(mesh, mesh.num_edges() == 0 ? 0 : options.seed_edge, options.seed_flag);

  BarycenterStage stage = insert_barycenters(mesh, replace_edges_with_z_triplets(mesh, record.orientation));
  ConnectResult connected = connect_new_vertices(mesh, stage, classes);

  record.provenance = std::move(connected.provenance);
  record.face_parent = std::move(connected.face_parent);
  record.halfplane_disagreements = connected.halfplane_disagreements;

  const std::size_t nv = mesh.num_vertices();
  const std::size_t ne = mesh.num_edges();
  record.vertex_parent.resize(connected.mesh.num_vertices());
  for (std::size_t v = 0; v < record.vertex_parent.size(); ++v) {
    if (v < nv) {
      record.vertex_parent[v] = {VertexParent::Kind::Carried, static_cast<std::int32_t>(v)};
    } else if (v < nv + 2 * ne) {
      record.vertex_parent[v] = {VertexParent::Kind::ZVertex, static_cast<std::int32_t>((v - nv) / 2)};
    } else {
      record.vertex_parent[v] = {VertexParent::Kind::Barycenter, static_cast<std::int32_t>(v - nv - 2 * ne)};
    }
  }

  record.edge_children.resize(ne);
  for (EdgeId e = 0; e < static_cast<EdgeId>(ne); ++e) {
    const Edge& edge = mesh.edge(e);
    const VertexId chain[4] = {edge.v0, stage.z.z_vertex(e, 0), stage.z.z_vertex(e, 1), edge.v1};
    for (int k = 0; k < 3; ++k) {
      const auto child = connected.mesh.find_edge(chain[k], chain[k + 1]);
      if (!child) {
        throw Error(ErrorCode::Internal, "edge " + std::to_string(e) + " lost Z segment " + std::to_string(k));
      }
      record.edge_children[e][k] = *child;
    }
  }

  const ElementClass refined = classify(connected.mesh);
  for (VertexId v = 0; v < static_cast<VertexId>(connected.mesh.num_vertices()); ++v) {
    if (refined.vertex[v] == ElementKind::Outer) record.fixed_vertices.push_back(v);
  }

  Mesh next = options.smoothing ? smooth_inner_vertices(connected.mesh, refined) : std::move(connected.mesh);
  return {std::move(next), std::move(record)};
}

Provenance SubdivisionHistory::provenance(std::size_t t) const {
  if (t >= meshes.size()) throw Error(ErrorCode::OutOfRange, "step " + std::to_string(t) + " not in history");
  if (t == 0) return original_provenance(meshes[0]);
  return steps[t - 1].provenance;
}

SubdivisionHistory snub_subdivide(const Mesh& mesh, int steps, const SnubOptions& options) {
  if (steps < 0) throw Error(ErrorCode::InvalidParameter, "steps must be >= 0, got " + std::to_string(steps));
  SubdivisionHistory history;
  history.meshes.reserve(steps + 1);
  history.meshes.push_back(mesh);
  SnubOptions step_options = options;
  for (int t = 0; t < steps; ++t) {
    auto [next, record] = snub_step(history.meshes.back(), step_options);
    history.meshes.push_back(std::move(next));
    history.steps.push_back(std::move(record));
    step_options.seed_edge = 0;
  }
  return history;
}

}  // namespace pentaweave::snub
