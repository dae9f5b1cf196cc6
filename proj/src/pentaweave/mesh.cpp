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

#include "pentaweave/mesh.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "pentaweave/error.hpp"

namespace pentaweave {

struct Mesh::Topology {
  std::vector<std::int32_t> face_offsets{0};
  std::vector<VertexId> face_vertices;
  std::vector<EdgeId> face_edges;
  std::vector<Edge> edges;
  std::vector<std::int32_t> vertex_edge_offsets;
  std::vector<EdgeId> vertex_edges;
  std::vector<std::int32_t> vertex_face_offsets;
  std::vector<FaceId> vertex_faces;
  std::size_t boundary_edges = 0;
};

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  const auto lo = static_cast<std::uint32_t>(std::min(a, b));
  const auto hi = static_cast<std::uint32_t>(std::max(a, b));
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

double polygon_area(std::span<const Point2> points, std::span<const VertexId> cycle) {
  double twice = 0.0;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const Point2& a = points[cycle[k]];
    const Point2& b = points[cycle[(k + 1) % cycle.size()]];
    twice += cross(a, b);
  }
  return 0.5 * twice;
}

// Compressed adjacency lists from (key, value) pairs, values kept in
// insertion order per key.
void compress(std::size_t key_count, const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs,
              std::vector<std::int32_t>& offsets, std::vector<std::int32_t>& values) {
  offsets.assign(key_count + 1, 0);
  for (const auto& [k, v] : pairs) ++offsets[k + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  values.resize(pairs.size());
  std::vector<std::int32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [k, v] : pairs) values[cursor[k]++] = v;
}

}  // namespace

Mesh::Mesh() : topology_(std::make_shared<Topology>()) {}

Mesh Mesh::build(std::vector<Point2> points, std::vector<std::vector<VertexId>> faces,
                 const BuildOptions& options) {
  const auto vertex_count = static_cast<std::int64_t>(points.size());
  if (vertex_count > std::numeric_limits<std::int32_t>::max()) {
    throw Error(ErrorCode::InvalidParameter, "too many vertices");
  }
  for (std::size_t v = 0; v < points.size(); ++v) {
    if (!is_finite(points[v])) {
      throw Error(ErrorCode::InvalidParameter,
                  "vertex " + std::to_string(v) + " has a non-finite coordinate");
    }
  }

  auto topo = std::make_shared<Topology>();
  std::size_t corner_total = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    auto& cycle = faces[f];
    const std::string name = "face " + std::to_string(f);
    if (cycle.size() < 3) {
      throw Error(ErrorCode::DegenerateFace, name + " has fewer than 3 vertices");
    }
    for (VertexId v : cycle) {
      if (v < 0 || v >= vertex_count) {
        throw Error(ErrorCode::OutOfRange,
                    name + " references vertex " + std::to_string(v) + " of " +
                        std::to_string(vertex_count));
      }
    }
    std::vector<VertexId> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::DegenerateFace, name + " repeats a vertex");
    }
    if (options.geometric_checks) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        const VertexId a = cycle[k];
        const VertexId b = cycle[(k + 1) % cycle.size()];
        if (points[a] == points[b]) {
          throw Error(ErrorCode::DegenerateFace, name + " has a zero-length edge " +
                                                     std::to_string(a) + "-" + std::to_string(b));
        }
      }
      const double area = polygon_area(points, cycle);
      if (!(std::abs(area) > 0.0)) {
        throw Error(ErrorCode::DegenerateFace, name + " has zero area");
      }
      if (area < 0.0) std::reverse(cycle.begin(), cycle.end());
    }
    corner_total += cycle.size();
  }

  topo->face_offsets.reserve(faces.size() + 1);
  topo->face_vertices.reserve(corner_total);
  topo->face_edges.reserve(corner_total);
  std::unordered_map<std::uint64_t, EdgeId> edge_index;
  edge_index.reserve(corner_total);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& cycle = faces[f];
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const VertexId a = cycle[k];
      const VertexId b = cycle[(k + 1) % cycle.size()];
      const auto fid = static_cast<FaceId>(f);
      auto [it, inserted] = edge_index.try_emplace(edge_key(a, b), static_cast<EdgeId>(topo->edges.size()));
      if (inserted) {
        topo->edges.push_back(Edge{a, b, fid, kInvalid});
      } else {
        Edge& e = topo->edges[it->second];
        const std::string where = "edge " + std::to_string(a) + "-" + std::to_string(b);
        if (e.right != kInvalid) {
          throw Error(ErrorCode::NonManifold, where + " has more than two incident faces");
        }
        if (e.v0 == a) {
          throw Error(ErrorCode::NonManifold, where + " is traversed in the same direction by faces " +
                                                  std::to_string(e.left) + " and " +
                                                  std::to_string(f));
        }
        e.right = fid;
      }
      topo->face_vertices.push_back(a);
      topo->face_edges.push_back(it->second);
    }
    topo->face_offsets.push_back(static_cast<std::int32_t>(topo->face_vertices.size()));
  }

  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(2 * topo->edges.size());
  for (std::size_t e = 0; e < topo->edges.size(); ++e) {
    pairs.emplace_back(topo->edges[e].v0, static_cast<std::int32_t>(e));
    pairs.emplace_back(topo->edges[e].v1, static_cast<std::int32_t>(e));
  }
  compress(points.size(), pairs, topo->vertex_edge_offsets, topo->vertex_edges);
  pairs.clear();
  for (std::size_t f = 0; f + 1 < topo->face_offsets.size(); ++f) {
    for (auto c = topo->face_offsets[f]; c < topo->face_offsets[f + 1]; ++c) {
      pairs.emplace_back(topo->face_vertices[c], static_cast<std::int32_t>(f));
    }
  }
  compress(points.size(), pairs, topo->vertex_face_offsets, topo->vertex_faces);

  // Boundary must be a union of disjoint simple cycles.
  std::vector<std::uint32_t> boundary_degree(points.size(), 0);
  for (const Edge& e : topo->edges) {
    if (e.is_boundary()) {
      ++topo->boundary_edges;
      ++boundary_degree[e.v0];
      ++boundary_degree[e.v1];
    }
  }
  for (std::size_t v = 0; v < points.size(); ++v) {
    const bool pinched = options.allow_pinched_vertices && boundary_degree[v] % 2 == 0;
    if (boundary_degree[v] != 0 && boundary_degree[v] != 2 && !pinched) {
      throw Error(ErrorCode::NonManifold, "vertex " + std::to_string(v) + " touches " +
                                              std::to_string(boundary_degree[v]) +
                                              " boundary edges");
    }
  }

  Mesh mesh;
  mesh.topology_ = std::move(topo);
  mesh.positions_ = std::move(points);
  if (options.check_self_intersections) validate_no_self_intersections(mesh);
  return mesh;
}

std::size_t Mesh::num_edges() const { return topology_->edges.size(); }
std::size_t Mesh::num_faces() const { return topology_->face_offsets.size() - 1; }

std::span<const VertexId> Mesh::face(FaceId f) const {
  const auto begin = topology_->face_offsets[f];
  const auto end = topology_->face_offsets[f + 1];
  return std::span<const VertexId>(topology_->face_vertices).subspan(begin, end - begin);
}

std::span<const EdgeId> Mesh::face_edges(FaceId f) const {
  const auto begin = topology_->face_offsets[f];
  const auto end = topology_->face_offsets[f + 1];
  return std::span<const EdgeId>(topology_->face_edges).subspan(begin, end - begin);
}

int Mesh::face_degree(FaceId f) const {
  return topology_->face_offsets[f + 1] - topology_->face_offsets[f];
}

std::vector<std::vector<VertexId>> Mesh::face_lists() const {
  std::vector<std::vector<VertexId>> out;
  out.reserve(num_faces());
  for (std::size_t f = 0; f < num_faces(); ++f) {
    auto cycle = face(static_cast<FaceId>(f));
    out.emplace_back(cycle.begin(), cycle.end());
  }
  return out;
}

const Edge& Mesh::edge(EdgeId e) const { return topology_->edges[e]; }
std::span<const Edge> Mesh::edges() const { return topology_->edges; }

std::optional<EdgeId> Mesh::find_edge(VertexId a, VertexId b) const {
  for (EdgeId e : vertex_edges(a)) {
    if (topology_->edges[e].other(a) == b) return e;
  }
  return std::nullopt;
}

std::span<const EdgeId> Mesh::vertex_edges(VertexId v) const {
  const auto begin = topology_->vertex_edge_offsets[v];
  const auto end = topology_->vertex_edge_offsets[v + 1];
  return std::span<const EdgeId>(topology_->vertex_edges).subspan(begin, end - begin);
}

std::span<const FaceId> Mesh::vertex_faces(VertexId v) const {
  const auto begin = topology_->vertex_face_offsets[v];
  const auto end = topology_->vertex_face_offsets[v + 1];
  return std::span<const FaceId>(topology_->vertex_faces).subspan(begin, end - begin);
}

std::size_t Mesh::num_boundary_edges() const { return topology_->boundary_edges; }
std::size_t Mesh::face_degree_sum() const { return topology_->face_vertices.size(); }

Point2 Mesh::barycenter(FaceId f) const {
  Point2 sum;
  const auto cycle = face(f);
  for (VertexId v : cycle) sum += positions_[v];
  return sum / static_cast<double>(cycle.size());
}

double Mesh::signed_area(FaceId f) const { return polygon_area(positions_, face(f)); }

Mesh Mesh::with_positions(std::vector<Point2> positions) const {
  if (positions.size() != positions_.size()) {
    throw Error(ErrorCode::InvalidParameter, "position count does not match vertex count");
  }
  for (std::size_t v = 0; v < positions.size(); ++v) {
    if (!is_finite(positions[v])) {
      throw Error(ErrorCode::InvalidParameter,
                  "vertex " + std::to_string(v) + " has a non-finite coordinate");
    }
  }
  Mesh out;
  out.topology_ = topology_;
  out.positions_ = std::move(positions);
  return out;
}

int Mesh::corner_of(FaceId f, VertexId v) const {
  const auto cycle = face(f);
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    if (cycle[k] == v) return static_cast<int>(k);
  }
  return -1;
}

std::vector<FaceId> Mesh::faces_around(VertexId v) const {
  const auto incident = vertex_faces(v);
  if (incident.empty()) return {};
  for (EdgeId e : vertex_edges(v)) {
    if (topology_->edges[e].is_boundary()) return {};
  }
  std::vector<FaceId> ring;
  FaceId f = incident.front();
  do {
    ring.push_back(f);
    const auto cycle = face(f);
    const int k = corner_of(f, v);
    // The incoming edge prev->v bounds the next face counterclockwise.
    const int prev = (k + static_cast<int>(cycle.size()) - 1) % static_cast<int>(cycle.size());
    const Edge& in = topology_->edges[face_edges(f)[prev]];
    f = in.left == f ? in.right : in.left;
    if (ring.size() > incident.size()) {
      throw Error(ErrorCode::NonManifold, "vertex " + std::to_string(v) + " has a broken face fan");
    }
  } while (f != incident.front());
  return ring;
}

std::size_t ElementClass::inner_vertex_count() const {
  return static_cast<std::size_t>(std::count(vertex.begin(), vertex.end(), ElementKind::Inner));
}

std::size_t ElementClass::inner_edge_count() const {
  return static_cast<std::size_t>(std::count(edge.begin(), edge.end(), ElementKind::Inner));
}

ElementClass classify(const Mesh& mesh) {
  ElementClass out;
  out.edge.resize(mesh.num_edges());
  for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
    out.edge[e] = mesh.edge(static_cast<EdgeId>(e)).is_boundary() ? ElementKind::Outer
                                                                   : ElementKind::Inner;
  }
  out.vertex.resize(mesh.num_vertices());
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const auto incident = mesh.vertex_edges(static_cast<VertexId>(v));
    const bool inner = !incident.empty() && std::all_of(incident.begin(), incident.end(), [&](EdgeId e) {
      return out.edge[e] == ElementKind::Inner;
    });
    out.vertex[v] = inner ? ElementKind::Inner : ElementKind::Outer;
  }
  return out;
}

long long euler_characteristic(const Mesh& mesh) {
  return static_cast<long long>(mesh.num_vertices()) - static_cast<long long>(mesh.num_edges()) +
         static_cast<long long>(mesh.num_faces());
}

std::vector<FaceId> convexity_report(const Mesh& mesh, double tolerance) {
  std::vector<FaceId> out;
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    const auto cycle = mesh.face(static_cast<FaceId>(f));
    const std::size_t n = cycle.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Point2 a = mesh.position(cycle[(k + n - 1) % n]);
      const Point2 b = mesh.position(cycle[k]);
      const Point2 c = mesh.position(cycle[(k + 1) % n]);
      const Point2 u = b - a;
      const Point2 w = c - b;
      const double turn = cross(u, w) / (length(u) * length(w));
      if (turn < -tolerance) {
        out.push_back(static_cast<FaceId>(f));
        break;
      }
    }
  }
  return out;
}

namespace {

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int d1 = sign(orient(c, d, a));
  const int d2 = sign(orient(c, d, b));
  const int d3 = sign(orient(a, b, c));
  const int d4 = sign(orient(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

}  // namespace

void validate_no_self_intersections(const Mesh& mesh) {
  const auto edges = mesh.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& e = edges[i];
      const Edge& g = edges[j];
      if (e.v0 == g.v0 || e.v0 == g.v1 || e.v1 == g.v0 || e.v1 == g.v1) continue;
      if (segments_intersect(mesh.position(e.v0), mesh.position(e.v1), mesh.position(g.v0),
                             mesh.position(g.v1))) {
        throw Error(ErrorCode::SelfIntersection,
                    "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
}

}  // namespace pentaweave
