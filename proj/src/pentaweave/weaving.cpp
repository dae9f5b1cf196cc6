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

#include "pentaweave/weaving.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "pentaweave/error.hpp"

namespace pentaweave::weave {

namespace {

const BuildOptions kTrusted{.geometric_checks = false, .check_self_intersections = false};

struct Link {
  std::int32_t a;
  std::int32_t b;
  std::int32_t payload;
};

struct Node {
  std::int32_t crossing;
  bool over;
};

// Strands are the connected components of a graph whose nodes have at most
// two links. Paths are walked from their lower-numbered end; cycles from
// their lowest node. Strands are numbered by their lowest crossing.
Weaving trace_components(std::vector<Node> nodes, const std::vector<Link>& links, bool keep_isolated,
                         std::size_t crossing_count, Weaving::LinkKind kind) {
  std::vector<std::array<std::int32_t, 2>> adj(nodes.size(), {kInvalid, kInvalid});
  for (std::int32_t l = 0; l < static_cast<std::int32_t>(links.size()); ++l) {
    for (std::int32_t n : {links[l].a, links[l].b}) {
      auto& slot = adj[n];
      if (slot[0] == kInvalid) {
        slot[0] = l;
      } else if (slot[1] == kInvalid && !(links[l].a == links[l].b && slot[0] == l)) {
        slot[1] = l;
      } else if (!(links[l].a == links[l].b && (slot[0] == l || slot[1] == l))) {
        throw Error(ErrorCode::Internal, "strand node " + std::to_string(n) + " has more than two links");
      }
    }
  }
  auto degree = [&](std::int32_t n) { return (adj[n][0] != kInvalid) + (adj[n][1] != kInvalid); };

  std::vector<char> seen(nodes.size(), 0);
  std::vector<Strand> strands;

  auto walk = [&](std::int32_t start, bool cycle) {
    Strand s;
    s.closed = cycle;
    std::int32_t cur = start;
    std::int32_t via = kInvalid;
    while (true) {
      seen[cur] = 1;
      s.visits.push_back({nodes[cur].crossing, nodes[cur].over});
      std::int32_t next_link = kInvalid;
      for (std::int32_t l : adj[cur]) {
        if (l != kInvalid && l != via) {
          next_link = l;
          break;
        }
      }
      if (next_link == kInvalid) break;
      const Link& link = links[next_link];
      const std::int32_t next = link.a == cur ? link.b : link.a;
      s.links.push_back(link.payload);
      if (next == start && cycle) break;
      if (seen[next]) break;
      via = next_link;
      cur = next;
    }
    strands.push_back(std::move(s));
  };

  for (std::int32_t n = 0; n < static_cast<std::int32_t>(nodes.size()); ++n) {
    if (seen[n]) continue;
    if (degree(n) == 1) walk(n, false);
    if (degree(n) == 0 && keep_isolated) walk(n, false);
  }
  for (std::int32_t n = 0; n < static_cast<std::int32_t>(nodes.size()); ++n) {
    if (!seen[n] && degree(n) == 2) walk(n, true);
  }

  std::vector<std::int32_t> lowest(strands.size());
  for (std::size_t i = 0; i < strands.size(); ++i) {
    std::int32_t m = std::numeric_limits<std::int32_t>::max();
    for (const Visit& v : strands[i].visits) m = std::min(m, v.crossing);
    lowest[i] = m;
  }
  std::vector<std::size_t> order(strands.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lowest[a] < lowest[b]; });

  Weaving w;
  w.link_kind = kind;
  w.crossings.resize(crossing_count);
  for (std::size_t c = 0; c < crossing_count; ++c) w.crossings[c].tile = static_cast<std::int32_t>(c);
  for (std::size_t i = 0; i < order.size(); ++i) {
    Strand s = std::move(strands[order[i]]);
    s.color = static_cast<int>(i);
    const auto id = static_cast<StrandId>(i);
    for (const Visit& v : s.visits) {
      Crossing& c = w.crossings[v.crossing];
      (v.over ? c.over : c.under) = id;
    }
    w.strands.push_back(std::move(s));
  }
  return w;
}

void require_quads(const Mesh& mesh) {
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    if (mesh.face_degree(f) != 4) {
      throw Error(ErrorCode::NotQuadMesh,
                  "face " + std::to_string(f) + " has " + std::to_string(mesh.face_degree(f)) + " vertices");
    }
  }
}

// Outline of two faces glued across `shared` (f traverses it a -> b).
std::vector<VertexId> merge_outline(const Mesh& mesh, FaceId f, FaceId g, EdgeId shared) {
  const Edge& e = mesh.edge(shared);
  const FaceId first = e.left == f ? f : g;
  const FaceId second = first == f ? g : f;
  // first traverses v0 -> v1, second v1 -> v0.
  auto rotated = [&](FaceId face, VertexId start) {
    const auto cyc = mesh.face(face);
    const int k = mesh.corner_of(face, start);
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < cyc.size(); ++i) out.push_back(cyc[(k + i) % cyc.size()]);
    return out;
  };
  std::vector<VertexId> outline = rotated(first, e.v1);   // v1 ... v0
  const std::vector<VertexId> rest = rotated(second, e.v0);  // v0 ... v1
  outline.insert(outline.end(), rest.begin() + 1, rest.end() - 1);
  return outline;
}

Point2 centroid(const Mesh& mesh, const std::vector<VertexId>& polygon) {
  Point2 sum;
  for (VertexId v : polygon) sum += mesh.position(v);
  return sum / static_cast<double>(polygon.size());
}

}  // namespace

VertexColoring VertexColoring::swapped() const {
  VertexColoring out = *this;
  for (Color& c : out.color) c = c == Color::C1 ? Color::C2 : Color::C1;
  return out;
}

std::size_t GluedTiling::pair_count() const {
  return static_cast<std::size_t>(std::count_if(tiles.begin(), tiles.end(), [](const Tile& t) { return t.is_pair(); }));
}

std::size_t GluedTiling::singleton_count() const { return tiles.size() - pair_count(); }

std::size_t Weaving::visit_count() const {
  std::size_t n = 0;
  for (const Strand& s : strands) n += s.visits.size();
  return n;
}

// --- snub -------------------------------------------------------------------

GluedTiling glue_snub_pairs(const Mesh& mesh, const snub::Provenance& provenance) {
  if (provenance.edge.size() != mesh.num_edges()) {
    throw Error(ErrorCode::MissingProvenance, "no edge tags for this mesh");
  }
  std::vector<EdgeId> middle(mesh.num_faces(), kInvalid);
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    int count = 0;
    for (EdgeId e : mesh.face_edges(f)) {
      if (provenance.edge[e] == snub::EdgeTag::ZMiddle) {
        middle[f] = e;
        ++count;
      }
    }
    if (count != 1) {
      throw Error(ErrorCode::MissingProvenance,
                  "face " + std::to_string(f) + " has " + std::to_string(count) + " Z-middle edges");
    }
  }

  GluedTiling tiling;
  tiling.tile_of_face.assign(mesh.num_faces(), kInvalid);
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    if (tiling.tile_of_face[f] != kInvalid) continue;
    const Edge& e = mesh.edge(middle[f]);
    Tile tile;
    tile.shared_edge = middle[f];
    if (e.is_boundary()) {
      tile.faces = {f};
      const auto cyc = mesh.face(f);
      tile.polygon.assign(cyc.begin(), cyc.end());
    } else {
      const FaceId g = e.left == f ? e.right : e.left;
      tile.faces = {f, g};
      tile.polygon = merge_outline(mesh, f, g, middle[f]);
    }
    const auto id = static_cast<std::int32_t>(tiling.tiles.size());
    for (FaceId x : tile.faces) tiling.tile_of_face[x] = id;
    tiling.tiles.push_back(std::move(tile));
  }
  return tiling;
}

VertexId opposite_vertex(const Mesh& mesh, FaceId face, EdgeId z_middle) {
  const auto cyc = mesh.face(face);
  const Edge& e = mesh.edge(z_middle);
  const int n = static_cast<int>(cyc.size());
  for (int k = 0; k < n; ++k) {
    const VertexId a = cyc[k];
    const VertexId b = cyc[(k + 1) % n];
    if ((a == e.v0 && b == e.v1) || (a == e.v1 && b == e.v0)) return cyc[(k + 3) % n];
  }
  throw Error(ErrorCode::InvalidParameter, "edge " + std::to_string(z_middle) + " not on face " + std::to_string(face));
}

Weaving trace_snub_strands(const GluedTiling& tiling, const Mesh& mesh, const snub::Provenance& provenance) {
  // Tile whose Z-middle edge ends at each vertex.
  std::vector<std::int32_t> tile_at(mesh.num_vertices(), kInvalid);
  for (std::int32_t t = 0; t < static_cast<std::int32_t>(tiling.tiles.size()); ++t) {
    const Edge& e = mesh.edge(tiling.tiles[t].shared_edge);
    if (provenance.edge[tiling.tiles[t].shared_edge] != snub::EdgeTag::ZMiddle) {
      throw Error(ErrorCode::MissingProvenance, "tile " + std::to_string(t) + " is not glued on a Z-middle edge");
    }
    tile_at[e.v0] = t;
    tile_at[e.v1] = t;
  }

  std::vector<Node> nodes;
  nodes.reserve(2 * tiling.tiles.size());
  for (std::int32_t t = 0; t < static_cast<std::int32_t>(tiling.tiles.size()); ++t) {
    nodes.push_back({t, true});   // outgoing: owned, on top
    nodes.push_back({t, false});  // incoming: passed beneath
  }
  std::vector<Link> links;
  for (std::int32_t t = 0; t < static_cast<std::int32_t>(tiling.tiles.size()); ++t) {
    for (FaceId f : tiling.tiles[t].faces) {
      const VertexId o = opposite_vertex(mesh, f, tiling.tiles[t].shared_edge);
      const std::int32_t target = tile_at[o];
      if (target == kInvalid) continue;
      links.push_back({2 * t, 2 * target + 1, f});
    }
  }
  return trace_components(std::move(nodes), links, false, tiling.tiles.size(), Weaving::LinkKind::Face);
}

// --- quads ------------------------------------------------------------------

VertexColoring two_color_vertices(const Mesh& mesh) {
  require_quads(mesh);
  constexpr std::uint8_t kNone = 0;
  std::vector<std::uint8_t> color(mesh.num_vertices(), kNone);
  std::deque<VertexId> queue;
  for (VertexId root = 0; root < static_cast<VertexId>(mesh.num_vertices()); ++root) {
    if (color[root] != kNone) continue;
    color[root] = 1;
    queue.push_back(root);
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId e : mesh.vertex_edges(v)) {
        const VertexId w = mesh.edge(e).other(v);
        if (color[w] == kNone) {
          color[w] = static_cast<std::uint8_t>(3 - color[v]);
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          throw Error(ErrorCode::NotBipartite, "odd cycle through edge " + std::to_string(e) + " (vertices " +
                                                   std::to_string(v) + ", " + std::to_string(w) + ")");
        }
      }
    }
  }
  VertexColoring out;
  out.color.reserve(color.size());
  for (std::uint8_t c : color) out.color.push_back(static_cast<Color>(c));
  return out;
}

Weaving quad_weaving(const Mesh& mesh, const VertexColoring& coloring) {
  require_quads(mesh);
  if (coloring.size() != mesh.num_vertices()) {
    throw Error(ErrorCode::InvalidParameter, "coloring size does not match vertex count");
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) {
    if (coloring[mesh.edge(e).v0] == coloring[mesh.edge(e).v1]) {
      throw Error(ErrorCode::NotBipartite, "edge " + std::to_string(e) + " joins two vertices of one colour");
    }
  }

  // Node 2f + k: the strand through face f crossing edges k and k + 2. It
  // enters with face vertex k (or k + 2, same colour) on its left.
  std::vector<Node> nodes;
  nodes.reserve(2 * mesh.num_faces());
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    const auto cyc = mesh.face(f);
    nodes.push_back({f, coloring[cyc[0]] == Color::C1});
    nodes.push_back({f, coloring[cyc[1]] == Color::C1});
  }
  std::vector<Link> links;
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) {
    const Edge& edge = mesh.edge(e);
    if (edge.is_boundary()) continue;
    const int kl = mesh.corner_of(edge.left, edge.v0);
    const int kr = mesh.corner_of(edge.right, edge.v1);
    links.push_back({2 * edge.left + kl % 2, 2 * edge.right + kr % 2, e});
  }
  return trace_components(std::move(nodes), links, true, mesh.num_faces(), Weaving::LinkKind::Edge);
}

// --- triangles ----------------------------------------------------------------

void triangle_coloring_check(const Mesh& mesh, const VertexColoring& coloring) {
  if (coloring.size() != mesh.num_vertices()) {
    throw Error(ErrorCode::InvalidTriangleColoring, "coloring size does not match vertex count");
  }
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    if (mesh.face_degree(f) != 3) {
      throw Error(ErrorCode::NotTriangleMesh, "face " + std::to_string(f) + " is not a triangle");
    }
    int c1 = 0;
    for (VertexId v : mesh.face(f)) c1 += coloring[v] == Color::C1;
    if (c1 != 1) {
      throw Error(ErrorCode::InvalidTriangleColoring,
                  "triangle " + std::to_string(f) + " has " + std::to_string(c1) + " c1 vertices");
    }
  }
}

VertexColoring three_color_triangles(const Mesh& mesh) {
  const auto nf = static_cast<FaceId>(mesh.num_faces());
  for (FaceId f = 0; f < nf; ++f)
    if (mesh.face_degree(f) != 3) throw Error(ErrorCode::NotTriangleMesh, "face " + std::to_string(f) + " is not a triangle");
  std::vector<int> cls(mesh.num_vertices(), -1);
  std::vector<char> done(nf, 0);
  std::deque<FaceId> queue;
  for (FaceId seed = 0; seed < nf; ++seed) {
    if (done[seed]) continue;
    // Seed classes so that a vertex already coloured keeps its class.
    auto corners = mesh.face(seed);
    std::array<int, 3> pick{0, 1, 2};
    for (int k = 0; k < 3; ++k)
      if (cls[corners[k]] >= 0) pick = {cls[corners[k]], (cls[corners[k]] + 1) % 3, (cls[corners[k]] + 2) % 3};
    for (int k = 0; k < 3; ++k)
      if (cls[corners[k]] < 0) cls[corners[k]] = pick[k];
    done[seed] = 1;
    queue.push_back(seed);
    while (!queue.empty()) {
      const FaceId f = queue.front();
      queue.pop_front();
      auto c = mesh.face(f);
      if (cls[c[0]] < 0 || cls[c[1]] < 0 || cls[c[2]] < 0) {
        int known = 0, missing = -1;
        for (int k = 0; k < 3; ++k) {
          if (cls[c[k]] >= 0) known |= 1 << cls[c[k]];
          else missing = k;
        }
        for (int k = 0; k < 3; ++k)
          if (!(known & (1 << k))) cls[c[missing]] = k;
      }
      if (cls[c[0]] == cls[c[1]] || cls[c[1]] == cls[c[2]] || cls[c[0]] == cls[c[2]])
        throw Error(ErrorCode::InvalidTriangleColoring, "face " + std::to_string(f) + " cannot be 3-coloured");
      for (EdgeId e : mesh.face_edges(f)) {
        const Edge& edge = mesh.edge(e);
        const FaceId g = edge.left == f ? edge.right : edge.left;
        if (g == kInvalid || done[g]) continue;
        done[g] = 1;
        queue.push_back(g);
      }
    }
  }
  VertexColoring out;
  const int c1 = mesh.num_vertices() > 0 && cls[0] >= 0 ? cls[0] : 0;
  out.color.reserve(cls.size());
  for (int c : cls) out.color.push_back(c == c1 ? Color::C1 : Color::C2);
  return out;
}

VertexColoring loop_color_update(const VertexColoring& old_coloring, const Mesh& old_mesh,
                                 const classic::SchemeStepResult& step) {
  if (step.vertex_origin.size() != step.mesh.num_vertices()) {
    throw Error(ErrorCode::MissingOriginRecords, "step has no origin record per vertex");
  }
  VertexColoring out;
  out.color.reserve(step.mesh.num_vertices());
  for (std::size_t v = 0; v < step.vertex_origin.size(); ++v) {
    const classic::VertexOrigin& o = step.vertex_origin[v];
    if (o.kind == classic::VertexOrigin::Kind::OldVertex) {
      out.color.push_back(old_coloring[o.index]);
    } else if (o.kind == classic::VertexOrigin::Kind::EdgeMidpointOf) {
      const Edge& e = old_mesh.edge(o.index);
      const Color a = old_coloring[e.v0];
      const Color b = old_coloring[e.v1];
      if (a == Color::C1 && b == Color::C1) {
        throw Error(ErrorCode::InvalidTriangleColoring, "edge " + std::to_string(o.index) + " joins two c1 vertices");
      }
      out.color.push_back(a == b ? Color::C1 : Color::C2);
    } else {
      throw Error(ErrorCode::MissingOriginRecords,
                  "vertex " + std::to_string(v) + " was not made by a 1-to-4 split");
    }
  }
  triangle_coloring_check(step.mesh, out);
  return out;
}

QuadTiling glue_triangle_pairs(const Mesh& mesh, const VertexColoring& coloring) {
  triangle_coloring_check(mesh, coloring);
  QuadTiling out;
  out.coloring = coloring;
  GluedTiling& tiling = out.tiling;
  tiling.tile_of_face.assign(mesh.num_faces(), kInvalid);

  // The c2-c2 edge of each triangle.
  auto c2_edge = [&](FaceId f) {
    for (EdgeId e : mesh.face_edges(f)) {
      const Edge& edge = mesh.edge(e);
      if (coloring[edge.v0] == Color::C2 && coloring[edge.v1] == Color::C2) return e;
    }
    return kInvalid;
  };

  std::vector<FaceId> singles;
  std::vector<std::vector<VertexId>> quads;
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    if (tiling.tile_of_face[f] != kInvalid) continue;
    const EdgeId e = c2_edge(f);
    const Edge& edge = mesh.edge(e);
    if (edge.is_boundary()) {
      singles.push_back(f);
      tiling.tile_of_face[f] = -2;  // placed after the pairs
      continue;
    }
    const FaceId g = edge.left == f ? edge.right : edge.left;
    Tile tile{{f, g}, e, merge_outline(mesh, f, g, e)};
    const auto id = static_cast<std::int32_t>(tiling.tiles.size());
    tiling.tile_of_face[f] = id;
    tiling.tile_of_face[g] = id;
    quads.push_back(tile.polygon);
    tiling.tiles.push_back(std::move(tile));
  }
  for (FaceId f : singles) {
    const auto cyc = mesh.face(f);
    tiling.tile_of_face[f] = static_cast<std::int32_t>(tiling.tiles.size());
    tiling.tiles.push_back({{f}, c2_edge(f), {cyc.begin(), cyc.end()}});
  }
  // Leftover triangles can leave two quads meeting at a single vertex.
  BuildOptions pinched = kTrusted;
  pinched.allow_pinched_vertices = true;
  out.quads = Mesh::build(std::vector<Point2>(mesh.positions().begin(), mesh.positions().end()), std::move(quads),
                          pinched);
  return out;
}

QuadTiling sqrt3_quadization(const classic::SchemeStepResult& step) {
  const Mesh& mesh = step.mesh;
  if (step.vertex_origin.size() != mesh.num_vertices()) {
    throw Error(ErrorCode::MissingOriginRecords, "step has no origin record per vertex");
  }
  QuadTiling out;
  out.coloring.color.reserve(mesh.num_vertices());
  for (const classic::VertexOrigin& o : step.vertex_origin) {
    if (o.kind == classic::VertexOrigin::Kind::OldVertex) {
      out.coloring.color.push_back(Color::C1);
    } else if (o.kind == classic::VertexOrigin::Kind::FaceCenterOf) {
      out.coloring.color.push_back(Color::C2);
    } else {
      throw Error(ErrorCode::MissingOriginRecords, "origin records are not from a sqrt3 step");
    }
  }
  for (const auto& [flipped, source] : step.flipped_edges) {
    const Edge& e = mesh.edge(flipped);
    if (out.coloring[e.v0] != Color::C2 || out.coloring[e.v1] != Color::C2 || e.is_boundary()) {
      throw Error(ErrorCode::MissingOriginRecords, "edge " + std::to_string(flipped) + " is not a flipped edge");
    }
  }

  GluedTiling& tiling = out.tiling;
  tiling.tile_of_face.assign(mesh.num_faces(), kInvalid);
  std::vector<std::vector<VertexId>> quads;
  for (const auto& [flipped, source] : step.flipped_edges) {
    const Edge& e = mesh.edge(flipped);
    Tile tile{{e.left, e.right}, flipped, merge_outline(mesh, e.left, e.right, flipped)};
    const auto id = static_cast<std::int32_t>(tiling.tiles.size());
    tiling.tile_of_face[e.left] = id;
    tiling.tile_of_face[e.right] = id;
    quads.push_back(tile.polygon);
    tiling.tiles.push_back(std::move(tile));
  }
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    if (tiling.tile_of_face[f] != kInvalid) continue;
    const auto cyc = mesh.face(f);
    tiling.tile_of_face[f] = static_cast<std::int32_t>(tiling.tiles.size());
    tiling.tiles.push_back({{f}, kInvalid, {cyc.begin(), cyc.end()}});
  }
  out.quads =
      Mesh::build(std::vector<Point2>(mesh.positions().begin(), mesh.positions().end()), std::move(quads), kTrusted);
  return out;
}

FaceSplitWeaving general_face_split_weaving(const Mesh& mesh) {
  const auto nv = static_cast<VertexId>(mesh.num_vertices());
  std::vector<Point2> points(mesh.positions().begin(), mesh.positions().end());
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) points.push_back(mesh.barycenter(f));

  FaceSplitWeaving out;
  QuadTiling& q = out.quads;
  std::vector<std::vector<VertexId>> quads;
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) {
    const Edge& edge = mesh.edge(e);
    if (edge.is_boundary()) continue;
    std::vector<VertexId> quad{edge.v0, nv + edge.right, edge.v1, nv + edge.left};
    q.tiling.tiles.push_back({{static_cast<FaceId>(quads.size())}, e, quad});
    quads.push_back(std::move(quad));
  }
  if (quads.empty()) throw Error(ErrorCode::NoInteriorEdges, "mesh has no interior edge to weave across");

  q.tiling.tile_of_face.resize(quads.size());
  std::iota(q.tiling.tile_of_face.begin(), q.tiling.tile_of_face.end(), 0);
  q.coloring.color.assign(points.size(), Color::C2);
  std::fill(q.coloring.color.begin(), q.coloring.color.begin() + nv, Color::C1);
  q.quads = Mesh::build(std::move(points), std::move(quads), kTrusted);
  out.weaving = quad_weaving(q.quads, q.coloring);
  return out;
}

// --- geometry ---------------------------------------------------------------

std::vector<Point2> tile_centers(const GluedTiling& tiling, const Mesh& mesh) {
  std::vector<Point2> out;
  out.reserve(tiling.tiles.size());
  for (const Tile& t : tiling.tiles) out.push_back(centroid(mesh, t.polygon));
  return out;
}

std::vector<Point2> face_centers(const Mesh& mesh) {
  std::vector<Point2> out;
  out.reserve(mesh.num_faces());
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) out.push_back(mesh.barycenter(f));
  return out;
}

std::vector<Ribbon> strand_ribbons(const Weaving& weaving, const Mesh& mesh,
                                   const std::vector<Point2>& crossing_centers,
                                   const std::vector<std::vector<VertexId>>& crossing_polygons,
                                   double width_fraction) {
  if (!(width_fraction > 0.0 && width_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "ribbon width fraction must lie in (0, 1)");
  }
  auto link_point = [&](std::int32_t payload) {
    if (weaving.link_kind == Weaving::LinkKind::Edge) {
      const Edge& e = mesh.edge(payload);
      return 0.5 * (mesh.position(e.v0) + mesh.position(e.v1));
    }
    return mesh.barycenter(payload);
  };
  auto mean_edge = [&](std::int32_t crossing) {
    const auto& poly = crossing_polygons[crossing];
    double sum = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      sum += distance(mesh.position(poly[i]), mesh.position(poly[(i + 1) % poly.size()]));
    }
    return sum / static_cast<double>(poly.size());
  };

  std::vector<Ribbon> out;
  out.reserve(weaving.strands.size());
  for (StrandId s = 0; s < static_cast<StrandId>(weaving.strands.size()); ++s) {
    const Strand& strand = weaving.strands[s];
    Ribbon r;
    r.strand = s;
    r.color = strand.color;
    r.closed = strand.closed;
    double edge_sum = 0.0;
    for (std::size_t i = 0; i < strand.visits.size(); ++i) {
      const Visit& v = strand.visits[i];
      if (!v.over) r.gaps.push_back(r.centerline.size());
      r.centerline.push_back(crossing_centers[v.crossing]);
      edge_sum += mean_edge(v.crossing);
      if (i < strand.links.size()) r.centerline.push_back(link_point(strand.links[i]));
    }
    r.width = width_fraction * edge_sum / static_cast<double>(strand.visits.size());
    r.gap_length = 2.0 * r.width;
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t count_strands_in_box(const Weaving& weaving, const std::vector<Point2>& crossing_centers, Point2 lo,
                                 Point2 hi) {
  std::size_t count = 0;
  for (const Strand& s : weaving.strands) {
    for (const Visit& v : s.visits) {
      const Point2 c = crossing_centers[v.crossing];
      if (c.x > lo.x && c.x < hi.x && c.y > lo.y && c.y < hi.y) {
        ++count;
        break;
      }
    }
  }
  return count;
}

WovenLevel woven_level(Weaving weaving, const GluedTiling& tiling, const Mesh& mesh) {
  WovenLevel level;
  level.centers = tile_centers(tiling, mesh);
  level.outlines.reserve(tiling.tiles.size());
  for (const Tile& tile : tiling.tiles) {
    std::vector<Point2> outline;
    outline.reserve(tile.polygon.size());
    for (VertexId v : tile.polygon) outline.push_back(mesh.position(v));
    level.outlines.push_back(std::move(outline));
  }
  level.weaving = std::move(weaving);
  return level;
}

WovenLevel woven_level(Weaving weaving, const Mesh& quads) {
  WovenLevel level;
  level.centers = face_centers(quads);
  level.outlines.reserve(quads.num_faces());
  for (FaceId f = 0; f < static_cast<FaceId>(quads.num_faces()); ++f) {
    std::vector<Point2> outline;
    for (VertexId v : quads.face(f)) outline.push_back(quads.position(v));
    level.outlines.push_back(std::move(outline));
  }
  level.weaving = std::move(weaving);
  return level;
}

std::vector<Piece> strand_pieces(const WovenLevel& level, const Box& trace) {
  std::vector<Piece> pieces;
  const auto& strands = level.weaving.strands;
  for (StrandId s = 0; s < static_cast<StrandId>(strands.size()); ++s) {
    const auto& visits = strands[s].visits;
    const std::size_t n = visits.size();
    if (n == 0) continue;
    auto inside = [&](std::size_t i) { return trace.contains(level.centers[visits[i].crossing]); };
    // Closed strands: start the walk just after an outside visit so no run
    // is split across the seam. All-inside loops make a single piece.
    std::size_t start = 0;
    if (strands[s].closed) {
      std::size_t i = 0;
      while (i < n && inside(i)) ++i;
      if (i == n) {
        pieces.push_back({s, visits});
        continue;
      }
      start = i + 1;
    }
    bool open_run = false;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = (start + k) % n;
      if (!inside(i)) {
        open_run = false;
        continue;
      }
      if (!open_run) pieces.push_back({s, {}});
      pieces.back().visits.push_back(visits[i]);
      open_run = true;
    }
  }
  return pieces;
}

namespace {

bool point_in_polygon(const std::vector<Point2>& poly, Point2 p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point2 a = poly[i];
    const Point2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

// Coarse crossing whose outline contains each point, or kInvalid. Outlines
// are bucketed on a uniform grid over their bounding boxes.
std::vector<std::int32_t> locate(const std::vector<std::vector<Point2>>& outlines, const std::vector<Point2>& points) {
  std::vector<std::int32_t> out(points.size(), kInvalid);
  if (outlines.empty()) return out;
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-lo.x, -lo.y};
  for (const auto& poly : outlines)
    for (Point2 p : poly) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
  const int cells = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(outlines.size()))));
  const double sx = (hi.x - lo.x) / cells + 1e-300;
  const double sy = (hi.y - lo.y) / cells + 1e-300;
  auto cell = [&](double v, double l, double s) { return std::clamp(static_cast<int>((v - l) / s), 0, cells - 1); };
  std::vector<std::vector<std::int32_t>> bucket(static_cast<std::size_t>(cells) * cells);
  for (std::size_t i = 0; i < outlines.size(); ++i) {
    Point2 a = outlines[i][0], b = outlines[i][0];
    for (Point2 p : outlines[i]) {
      a = {std::min(a.x, p.x), std::min(a.y, p.y)};
      b = {std::max(b.x, p.x), std::max(b.y, p.y)};
    }
    for (int y = cell(a.y, lo.y, sy); y <= cell(b.y, lo.y, sy); ++y)
      for (int x = cell(a.x, lo.x, sx); x <= cell(b.x, lo.x, sx); ++x)
        bucket[static_cast<std::size_t>(y) * cells + x].push_back(static_cast<std::int32_t>(i));
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point2 p = points[k];
    if (p.x < lo.x || p.x > hi.x || p.y < lo.y || p.y > hi.y) continue;
    for (std::int32_t i : bucket[static_cast<std::size_t>(cell(p.y, lo.y, sy)) * cells + cell(p.x, lo.x, sx)]) {
      if (point_in_polygon(outlines[i], p)) {
        out[k] = i;
        break;
      }
    }
  }
  return out;
}

}  // namespace

bool StrandSplit::uniform(std::size_t k) const {
  if (orphan_count != 0 || parents.empty()) return false;
  for (std::size_t c : children_per_parent)
    if (c != k) return false;
  return child_count == k * parents.size();
}

StrandSplit strand_split(const WovenLevel& coarse, const WovenLevel& fine, const Box& trace, const Box& region) {
  const std::vector<Piece> cp = strand_pieces(coarse, trace);
  const std::vector<Piece> fp = strand_pieces(fine, trace);

  // (crossing, over) -> coarse piece
  std::map<std::pair<std::int32_t, bool>, std::size_t> piece_of;
  for (std::size_t i = 0; i < cp.size(); ++i)
    for (const Visit& v : cp[i].visits) piece_of[{v.crossing, v.over}] = i;

  auto touches = [&](const WovenLevel& level, const Piece& piece) {
    for (const Visit& v : piece.visits)
      if (region.contains(level.centers[v.crossing])) return true;
    return false;
  };

  StrandSplit split;
  std::vector<std::int32_t> slot(cp.size(), kInvalid);
  for (std::size_t i = 0; i < cp.size(); ++i) {
    if (!touches(coarse, cp[i])) continue;
    slot[i] = static_cast<std::int32_t>(split.parents.size());
    split.parents.push_back(i);
  }
  split.children_per_parent.assign(split.parents.size(), 0);

  const std::vector<std::int32_t> host = locate(coarse.outlines, fine.centers);
  for (const Piece& piece : fp) {
    if (!touches(fine, piece)) continue;
    std::map<std::size_t, int> votes;
    for (const Visit& v : piece.visits) {
      const std::int32_t h = host[v.crossing];
      if (h == kInvalid) continue;
      for (bool over : {true, false}) {
        auto it = piece_of.find({h, over});
        if (it != piece_of.end()) ++votes[it->second];
      }
    }
    std::size_t best = 0;
    int best_votes = 0;
    for (const auto& [p, n] : votes)
      if (n > best_votes) {
        best = p;
        best_votes = n;
      }
    if (best_votes == 0) {
      ++split.orphan_count;
      continue;
    }
    if (slot[best] == kInvalid) continue;
    ++split.children_per_parent[slot[best]];
    ++split.child_count;
  }
  return split;
}

}  // namespace pentaweave::weave
