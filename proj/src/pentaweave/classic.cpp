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

#include "pentaweave/classic.hpp"

#include <cmath>
#include <string>

#include "pentaweave/error.hpp"

namespace pentaweave::classic {

namespace {

using Kind = VertexOrigin::Kind;

// Output cycles inherit the input's counterclockwise orientation; building
// without the geometric pass keeps them verbatim (and allows purely
// combinatorial inputs such as torus identifications).
const BuildOptions kTrusted{.geometric_checks = false, .check_self_intersections = false};

void require_triangles(const Mesh& mesh, std::string_view scheme) {
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    if (mesh.face_degree(f) != 3) {
      throw Error(ErrorCode::NotTriangleMesh, std::string(scheme) + ": face " + std::to_string(f) + " has " +
                                                  std::to_string(mesh.face_degree(f)) + " vertices");
    }
  }
}

// Vertex of triangle f not on edge e.
VertexId opposite(const Mesh& mesh, FaceId f, EdgeId e) {
  const Edge& edge = mesh.edge(e);
  for (VertexId v : mesh.face(f)) {
    if (v != edge.v0 && v != edge.v1) return v;
  }
  return kInvalid;
}

// The two boundary neighbours of a boundary vertex.
std::pair<VertexId, VertexId> boundary_neighbours(const Mesh& mesh, VertexId v) {
  VertexId out[2] = {kInvalid, kInvalid};
  int n = 0;
  for (EdgeId e : mesh.vertex_edges(v)) {
    if (mesh.edge(e).is_boundary() && n < 2) out[n++] = mesh.edge(e).other(v);
  }
  return {out[0], out[1]};
}

Point2 midpoint(const Mesh& mesh, EdgeId e) {
  const Edge& edge = mesh.edge(e);
  return 0.5 * (mesh.position(edge.v0) + mesh.position(edge.v1));
}

// 1-to-4 split shared by Loop and butterfly. New vertex of edge e is V + e.
std::vector<std::vector<VertexId>> quadrisect_faces(const Mesh& mesh) {
  const auto nv = static_cast<VertexId>(mesh.num_vertices());
  std::vector<std::vector<VertexId>> faces;
  faces.reserve(4 * mesh.num_faces());
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    const auto v = mesh.face(f);
    const auto e = mesh.face_edges(f);
    const VertexId mab = nv + e[0];
    const VertexId mbc = nv + e[1];
    const VertexId mca = nv + e[2];
    faces.push_back({v[0], mab, mca});
    faces.push_back({v[1], mbc, mab});
    faces.push_back({v[2], mca, mbc});
    faces.push_back({mab, mbc, mca});
  }
  return faces;
}

std::vector<VertexOrigin> vertex_then_edge_origins(const Mesh& mesh) {
  std::vector<VertexOrigin> origin;
  origin.reserve(mesh.num_vertices() + mesh.num_edges());
  for (VertexId v = 0; v < static_cast<VertexId>(mesh.num_vertices()); ++v) origin.push_back({Kind::OldVertex, v});
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) origin.push_back({Kind::EdgeMidpointOf, e});
  return origin;
}

}  // namespace

Scheme parse_scheme(std::string_view name) {
  if (name == "loop") return Scheme::Loop;
  if (name == "butterfly") return Scheme::Butterfly;
  if (name == "sqrt3") return Scheme::Sqrt3;
  if (name == "midedge") return Scheme::Midedge;
  if (name == "catmull-clark") return Scheme::CatmullClark;
  if (name == "doo-sabin") return Scheme::DooSabin;
  throw Error(ErrorCode::InvalidParameter, "unknown scheme '" + std::string(name) + "'");
}

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Loop: return "loop";
    case Scheme::Butterfly: return "butterfly";
    case Scheme::Sqrt3: return "sqrt3";
    case Scheme::Midedge: return "midedge";
    case Scheme::CatmullClark: return "catmull-clark";
    case Scheme::DooSabin: return "doo-sabin";
  }
  return "unknown";
}

double loop_beta(int n) { return n == 3 ? 3.0 / 16.0 : 3.0 / (8.0 * n); }

double sqrt3_alpha(int n) { return (4.0 - 2.0 * std::cos(2.0 * kPi / n)) / 9.0; }

SchemeStepResult loop_step(const Mesh& mesh) {
  require_triangles(mesh, "loop");
  const ElementClass classes = classify(mesh);
  std::vector<Point2> points;
  points.reserve(mesh.num_vertices() + mesh.num_edges());

  for (VertexId v = 0; v < static_cast<VertexId>(mesh.num_vertices()); ++v) {
    const Point2 p = mesh.position(v);
    const auto edges = mesh.vertex_edges(v);
    if (edges.empty()) {
      points.push_back(p);
    } else if (classes.vertex[v] == ElementKind::Inner) {
      const int n = static_cast<int>(edges.size());
      const double beta = loop_beta(n);
      Point2 sum;
      for (EdgeId e : edges) sum += mesh.position(mesh.edge(e).other(v));
      points.push_back((1.0 - n * beta) * p + beta * sum);
    } else {
      const auto [a, b] = boundary_neighbours(mesh, v);
      points.push_back(0.75 * p + 0.125 * (mesh.position(a) + mesh.position(b)));
    }
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) {
    const Edge& edge = mesh.edge(e);
    const Point2 a = mesh.position(edge.v0);
    const Point2 b = mesh.position(edge.v1);
    if (edge.is_boundary()) {
      points.push_back(0.5 * (a + b));
    } else {
      const Point2 c = mesh.position(opposite(mesh, edge.left, e));
      const Point2 d = mesh.position(opposite(mesh, edge.right, e));
      points.push_back(0.375 * (a + b) + 0.125 * (c + d));
    }
  }

  SchemeStepResult out;
  out.mesh = Mesh::build(std::move(points), quadrisect_faces(mesh), kTrusted);
  out.vertex_origin = vertex_then_edge_origins(mesh);
  return out;
}

SchemeStepResult butterfly_step(const Mesh& mesh) {
  require_triangles(mesh, "butterfly");
  constexpr double w = 1.0 / 16.0;
  std::vector<Point2> points(mesh.positions().begin(), mesh.positions().end());
  points.reserve(mesh.num_vertices() + mesh.num_edges());

  // Wing vertex: across the edge of triangle f that joins `from` to the apex.
  auto wing = [&](FaceId f, VertexId from, VertexId apex) -> VertexId {
    const auto side = mesh.find_edge(from, apex);
    const Edge& s = mesh.edge(*side);
    if (s.is_boundary()) return kInvalid;
    return opposite(mesh, s.left == f ? s.right : s.left, *side);
  };

  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) {
    const Edge& edge = mesh.edge(e);
    if (edge.is_boundary()) {
      points.push_back(midpoint(mesh, e));
      continue;
    }
    const VertexId c = opposite(mesh, edge.left, e);
    const VertexId d = opposite(mesh, edge.right, e);
    const VertexId wings[4] = {wing(edge.left, edge.v0, c), wing(edge.left, edge.v1, c),
                               wing(edge.right, edge.v0, d), wing(edge.right, edge.v1, d)};
    bool complete = true;
    for (VertexId x : wings) complete = complete && x != kInvalid;
    if (!complete) {
      points.push_back(midpoint(mesh, e));
      continue;
    }
    Point2 p = 0.5 * (mesh.position(edge.v0) + mesh.position(edge.v1)) +
               2.0 * w * (mesh.position(c) + mesh.position(d));
    for (VertexId x : wings) p = p + (-w) * mesh.position(x);
    points.push_back(p);
  }

  SchemeStepResult out;
  out.mesh = Mesh::build(std::move(points), quadrisect_faces(mesh), kTrusted);
  out.vertex_origin = vertex_then_edge_origins(mesh);
  return out;
}

SchemeStepResult sqrt3_step(const Mesh& mesh) {
  require_triangles(mesh, "sqrt3");
  const ElementClass classes = classify(mesh);
  const auto nv = static_cast<VertexId>(mesh.num_vertices());

  std::vector<Point2> points;
  points.reserve(mesh.num_vertices() + mesh.num_faces());
  for (VertexId v = 0; v < nv; ++v) {
    const Point2 p = mesh.position(v);
    const auto edges = mesh.vertex_edges(v);
    if (classes.vertex[v] != ElementKind::Inner || edges.empty()) {
      points.push_back(p);
      continue;
    }
    const int n = static_cast<int>(edges.size());
    const double a = sqrt3_alpha(n);
    Point2 sum;
    for (EdgeId e : edges) sum += mesh.position(mesh.edge(e).other(v));
    points.push_back((1.0 - a) * p + (a / n) * sum);
  }
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) points.push_back(mesh.barycenter(f));

  std::vector<std::vector<VertexId>> faces;
  faces.reserve(3 * mesh.num_faces());
  std::vector<EdgeId> flipped_source;
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) {
    const Edge& edge = mesh.edge(e);
    const VertexId cf = nv + edge.left;
    if (edge.is_boundary()) {
      faces.push_back({edge.v0, edge.v1, cf});
    } else {
      const VertexId cg = nv + edge.right;
      faces.push_back({edge.v0, cg, cf});
      faces.push_back({edge.v1, cf, cg});
      flipped_source.push_back(e);
    }
  }

  SchemeStepResult out;
  out.mesh = Mesh::build(std::move(points), std::move(faces), kTrusted);
  out.vertex_origin.reserve(out.mesh.num_vertices());
  for (VertexId v = 0; v < nv; ++v) out.vertex_origin.push_back({Kind::OldVertex, v});
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) out.vertex_origin.push_back({Kind::FaceCenterOf, f});
  for (EdgeId e : flipped_source) {
    const Edge& edge = mesh.edge(e);
    out.flipped_edges.emplace_back(*out.mesh.find_edge(nv + edge.left, nv + edge.right), e);
  }
  return out;
}

namespace {

// Edges around a boundary vertex in counterclockwise order, from the
// boundary edge leaving v to the boundary edge entering it.
std::vector<EdgeId> boundary_fan(const Mesh& mesh, VertexId v) {
  EdgeId e = kInvalid;
  for (EdgeId x : mesh.vertex_edges(v))
    if (mesh.edge(x).is_boundary() && mesh.edge(x).v0 == v) e = x;
  std::vector<EdgeId> fan;
  while (e != kInvalid && fan.size() <= mesh.vertex_edges(v).size()) {
    fan.push_back(e);
    const Edge& edge = mesh.edge(e);
    const FaceId f = edge.v0 == v ? edge.left : edge.right;
    if (f == kInvalid) break;
    // the other edge of f at v
    const auto fe = mesh.face_edges(f);
    const int c = mesh.corner_of(f, v);
    const EdgeId in = fe[(c + fe.size() - 1) % fe.size()];
    if (in == e || mesh.edge(in).is_boundary()) {
      if (in != e) fan.push_back(in);
      break;
    }
    e = in;
  }
  return fan;
}

// Clipping every boundary corner would leave the two faces of an interior
// edge between boundary vertices touching at a single point after the next
// step. Such vertices keep a face through their edge midpoints.
bool keeps_boundary_face(const Mesh& mesh, const ElementClass& classes, VertexId v) {
  if (classes.vertex[v] == ElementKind::Inner) return false;
  for (EdgeId e : mesh.vertex_edges(v)) {
    const Edge& edge = mesh.edge(e);
    if (!edge.is_boundary() && classes.vertex[edge.other(v)] != ElementKind::Inner) return true;
  }
  return false;
}

}  // namespace

SchemeStepResult midedge_step(const Mesh& mesh) {
  const ElementClass classes = classify(mesh);
  std::vector<Point2> points;
  points.reserve(mesh.num_edges());
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) points.push_back(midpoint(mesh, e));

  std::vector<std::vector<VertexId>> faces;
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    const auto edges = mesh.face_edges(f);
    faces.emplace_back(edges.begin(), edges.end());
  }
  for (VertexId v = 0; v < static_cast<VertexId>(mesh.num_vertices()); ++v) {
    const auto ring = mesh.faces_around(v);
    if (ring.empty()) {
      // boundary corners are clipped
      if (keeps_boundary_face(mesh, classes, v)) {
        const auto fan = boundary_fan(mesh, v);
        if (fan.size() >= 3) faces.emplace_back(fan.begin(), fan.end());
      }
      continue;
    }
    std::vector<VertexId> cycle;
    cycle.reserve(ring.size());
    for (FaceId f : ring) cycle.push_back(mesh.face_edges(f)[mesh.corner_of(f, v)]);
    faces.push_back(std::move(cycle));
  }

  SchemeStepResult out;
  out.mesh = Mesh::build(std::move(points), std::move(faces), kTrusted);
  out.vertex_origin.reserve(mesh.num_edges());
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) out.vertex_origin.push_back({Kind::EdgeMidpointOf, e});
  return out;
}

SchemeStepResult doo_sabin_step(const Mesh& mesh) {
  const SchemeStepResult first = midedge_step(mesh);
  SchemeStepResult second = midedge_step(first.mesh);
  const auto face_cycles = static_cast<FaceId>(mesh.num_faces());

  // Vertex of the second step = edge of the first step. That edge is a side
  // of exactly one face-cycle of the first step (ids below face_cycles),
  // and its endpoints are two input edges meeting at a corner of that face.
  for (VertexOrigin& o : second.vertex_origin) {
    const Edge& mid = first.mesh.edge(o.index);
    const bool in_cycle = mid.left < face_cycles || (mid.right != kInvalid && mid.right < face_cycles);
    if (!in_cycle) {
      // closing chord of a kept boundary face: both ends are midpoints of
      // boundary edges at one input vertex
      const Edge& a = mesh.edge(mid.v0);
      const Edge& b = mesh.edge(mid.v1);
      const VertexId shared = (a.v0 == b.v0 || a.v0 == b.v1) ? a.v0 : a.v1;
      o = {Kind::BoundaryChordOf, shared};
      continue;
    }
    const FaceId f = mid.left < face_cycles ? mid.left : mid.right;
    const Edge& a = mesh.edge(mid.v0);
    const Edge& b = mesh.edge(mid.v1);
    const VertexId shared = (a.v0 == b.v0 || a.v0 == b.v1) ? a.v0 : a.v1;
    o = {Kind::CornerOf, f, mesh.corner_of(f, shared)};
  }
  return second;
}

SchemeStepResult catmull_clark_step(const Mesh& mesh) {
  const ElementClass classes = classify(mesh);
  const auto nv = static_cast<VertexId>(mesh.num_vertices());
  const auto ne = static_cast<EdgeId>(mesh.num_edges());
  const auto nf = static_cast<FaceId>(mesh.num_faces());

  std::vector<Point2> face_point(nf);
  for (FaceId f = 0; f < nf; ++f) face_point[f] = mesh.barycenter(f);

  std::vector<Point2> points(nv + ne + nf);
  for (EdgeId e = 0; e < ne; ++e) {
    const Edge& edge = mesh.edge(e);
    points[nv + e] = edge.is_boundary()
                         ? midpoint(mesh, e)
                         : 0.25 * (mesh.position(edge.v0) + mesh.position(edge.v1) + face_point[edge.left] +
                                   face_point[edge.right]);
  }
  for (FaceId f = 0; f < nf; ++f) points[nv + ne + f] = face_point[f];
  for (VertexId v = 0; v < nv; ++v) {
    const Point2 p = mesh.position(v);
    const auto edges = mesh.vertex_edges(v);
    if (edges.empty()) {
      points[v] = p;
    } else if (classes.vertex[v] == ElementKind::Inner) {
      const double n = static_cast<double>(edges.size());
      Point2 favg;
      for (FaceId f : mesh.vertex_faces(v)) favg += face_point[f];
      favg = favg / static_cast<double>(mesh.vertex_faces(v).size());
      Point2 ravg;
      for (EdgeId e : edges) ravg += midpoint(mesh, e);
      ravg = ravg / n;
      points[v] = (favg + 2.0 * ravg + (n - 3.0) * p) / n;
    } else {
      const auto [a, b] = boundary_neighbours(mesh, v);
      points[v] = 0.75 * p + 0.125 * (mesh.position(a) + mesh.position(b));
    }
  }

  std::vector<std::vector<VertexId>> faces;
  faces.reserve(mesh.face_degree_sum());
  for (FaceId f = 0; f < nf; ++f) {
    const auto verts = mesh.face(f);
    const auto edges = mesh.face_edges(f);
    const std::size_t n = verts.size();
    for (std::size_t k = 0; k < n; ++k) {
      faces.push_back({verts[k], nv + edges[k], nv + ne + f, nv + edges[(k + n - 1) % n]});
    }
  }

  SchemeStepResult out;
  out.mesh = Mesh::build(std::move(points), std::move(faces), kTrusted);
  out.vertex_origin = vertex_then_edge_origins(mesh);
  for (FaceId f = 0; f < nf; ++f) out.vertex_origin.push_back({Kind::FaceCenterOf, f});
  return out;
}

SchemeStepResult apply_step(Scheme scheme, const Mesh& mesh) {
  switch (scheme) {
    case Scheme::Loop: return loop_step(mesh);
    case Scheme::Butterfly: return butterfly_step(mesh);
    case Scheme::Sqrt3: return sqrt3_step(mesh);
    case Scheme::Midedge: return midedge_step(mesh);
    case Scheme::CatmullClark: return catmull_clark_step(mesh);
    case Scheme::DooSabin: return doo_sabin_step(mesh);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown scheme");
}

}  // namespace pentaweave::classic
