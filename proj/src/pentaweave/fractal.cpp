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

#include "pentaweave/fractal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "pentaweave/error.hpp"

namespace pentaweave::fractal {

namespace {

constexpr const char* kTurnAlpha = "∇";
constexpr const char* kTurnBack = "△";
constexpr const char* kMinus = "−";

struct Fit {
  double slope = 0.0;
  double residual = 0.0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Fit fit;
  fit.slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (my + fit.slope * (x[i] - mx));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace

LSystemCurve lsystem_expand(int depth, int depth_cap) {
  if (depth < 0) throw Error(ErrorCode::InvalidParameter, "depth " + std::to_string(depth) + " is negative");
  if (depth > depth_cap)
    throw Error(ErrorCode::DepthTooLarge, "depth " + std::to_string(depth) + " exceeds cap " + std::to_string(depth_cap));

  // Expand on single-byte tokens, translate at the end.
  std::string tokens = "F";
  for (int d = 0; d < depth; ++d) {
    std::string next;
    next.reserve(tokens.size() * 3);
    for (char c : tokens) {
      if (c == 'F')
        next += "aF-F+Fb";
      else
        next += c;
    }
    tokens = std::move(next);
  }

  LSystemCurve curve;
  const double alpha = snub::ZTripletGeometry::alpha;
  const double step = std::pow(snub::ZTripletGeometry::segment_ratio, depth);
  double heading = 0.0;
  Point2 at{0.0, 0.0};
  curve.polyline.push_back(at);
  std::size_t forward = 0;
  const std::size_t total = static_cast<std::size_t>(std::count(tokens.begin(), tokens.end(), 'F'));
  for (char c : tokens) {
    switch (c) {
      case 'F':
        ++forward;
        // Land the last point exactly on the axiom end.
        at = forward == total ? Point2{1.0, 0.0} : at + step * Point2{std::cos(heading), std::sin(heading)};
        curve.polyline.push_back(at);
        curve.symbols += 'F';
        break;
      case 'a':
        heading += alpha;
        curve.symbols += kTurnAlpha;
        break;
      case 'b':
        heading -= alpha;
        curve.symbols += kTurnBack;
        break;
      case '+':
        heading += kPi / 3.0;
        curve.symbols += '+';
        break;
      case '-':
        heading -= kPi / 3.0;
        curve.symbols += kMinus;
        break;
      default:
        break;
    }
  }
  return curve;
}

std::vector<double> boundary_lengths(const snub::SubdivisionHistory& history) {
  std::vector<double> lengths;
  lengths.reserve(history.meshes.size());
  for (const Mesh& m : history.meshes) {
    double sum = 0.0;
    for (const Edge& e : m.edges())
      if (e.is_boundary()) sum += distance(m.position(e.v0), m.position(e.v1));
    lengths.push_back(sum);
  }
  return lengths;
}

DimensionEstimate estimate_fractal_dimension(const std::vector<double>& lengths, double scale_ratio) {
  if (lengths.size() < 3)
    throw Error(ErrorCode::InsufficientData, "need at least 3 lengths, got " + std::to_string(lengths.size()));
  if (!(scale_ratio > 0.0 && scale_ratio < 1.0))
    throw Error(ErrorCode::InvalidParameter, "scale ratio must lie in (0, 1)");
  std::vector<double> x, y;
  for (std::size_t t = 0; t < lengths.size(); ++t) {
    if (!(lengths[t] > 0.0))
      throw Error(ErrorCode::InvalidParameter, "length " + std::to_string(t) + " is not positive");
    x.push_back(static_cast<double>(t) * std::log(scale_ratio));
    y.push_back(std::log(lengths[t]));
  }
  const Fit fit = least_squares(x, y);
  return {1.0 - fit.slope, fit.residual};
}

DimensionEstimate box_counting_dimension(const std::vector<std::vector<Point2>>& polylines, int k_min, int k_max) {
  if (k_min < 0 || k_max > 16 || k_max - k_min < 2)
    throw Error(ErrorCode::InvalidParameter, "box counting needs 0 <= k_min, k_max <= 16, at least 3 levels");
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-lo.x, -lo.y};
  std::size_t points = 0;
  for (const auto& line : polylines)
    for (Point2 p : line) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
      ++points;
    }
  if (points < 2) throw Error(ErrorCode::InsufficientData, "no curve to measure");
  const double side = std::max(hi.x - lo.x, hi.y - lo.y);
  if (!(side > 0.0)) throw Error(ErrorCode::InsufficientData, "curve has no extent");

  std::vector<double> x, y;
  for (int k = k_min; k <= k_max; ++k) {
    const long long n = 1LL << k;
    const double h = side / static_cast<double>(n);
    auto cell = [&](double v, double l) {
      return std::clamp(static_cast<long long>(std::floor((v - l) / h)), 0LL, n - 1);
    };
    std::unordered_set<long long> boxes;
    for (const auto& line : polylines) {
      for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        const Point2 a = line[i];
        const Point2 b = line[i + 1];
        // Dense sampling; the spacing is far below the box size.
        const int samples = 1 + static_cast<int>(std::ceil(8.0 * distance(a, b) / h));
        for (int s = 0; s <= samples; ++s) {
          const Point2 p = a + (static_cast<double>(s) / samples) * (b - a);
          boxes.insert(cell(p.y, lo.y) * n + cell(p.x, lo.x));
        }
      }
    }
    x.push_back(static_cast<double>(k) * std::log(2.0));
    y.push_back(std::log(static_cast<double>(boxes.size())));
  }
  const Fit fit = least_squares(x, y);
  return {fit.slope, fit.residual};
}

std::vector<std::vector<Point2>> boundary_polylines(const Mesh& mesh) {
  // next boundary edge along the face-left direction, keyed by tail vertex
  std::vector<EdgeId> out_edge(mesh.num_vertices(), kInvalid);
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) {
    const Edge& edge = mesh.edge(e);
    if (edge.is_boundary()) out_edge[edge.v0] = e;
  }
  std::vector<std::vector<Point2>> loops;
  std::vector<char> used(mesh.num_edges(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) {
    if (!mesh.edge(e).is_boundary() || used[e]) continue;
    std::vector<Point2> loop{mesh.position(mesh.edge(e).v0)};
    EdgeId cur = e;
    while (cur != kInvalid && !used[cur]) {
      used[cur] = 1;
      loop.push_back(mesh.position(mesh.edge(cur).v1));
      cur = out_edge[mesh.edge(cur).v1];
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

std::vector<VertexId> refine_chain(const snub::SubdivisionHistory& history, std::size_t t,
                                   const std::vector<VertexId>& chain) {
  const Mesh& mesh = history.meshes[t];
  const Mesh& next = history.meshes[t + 1];
  const snub::StepRecord& record = history.steps[t];
  std::vector<VertexId> out;
  if (chain.empty()) return out;
  out.push_back(chain.front());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto e = mesh.find_edge(chain[i], chain[i + 1]);
    if (!e) throw Error(ErrorCode::UnknownSeed, "chain vertices " + std::to_string(chain[i]) + " and " +
                                                    std::to_string(chain[i + 1]) + " are not adjacent");
    auto children = record.edge_children[*e];
    if (mesh.edge(*e).v0 != chain[i]) std::reverse(children.begin(), children.end());
    VertexId cur = chain[i];
    for (EdgeId c : children) {
      cur = next.edge(c).other(cur);
      out.push_back(cur);
    }
    if (cur != chain[i + 1]) throw Error(ErrorCode::Internal, "edge children do not end at the edge's end");
  }
  return out;
}

CurveFamily track_inner_curves(const snub::SubdivisionHistory& history, std::size_t t0,
                               const std::vector<EdgeId>& seeds) {
  if (t0 >= history.meshes.size())
    throw Error(ErrorCode::UnknownSeed, "step " + std::to_string(t0) + " is not in the history");
  const Mesh& base = history.meshes[t0];
  CurveFamily family;
  family.t0 = t0;
  for (EdgeId seed : seeds) {
    if (seed < 0 || static_cast<std::size_t>(seed) >= base.num_edges())
      throw Error(ErrorCode::UnknownSeed, "edge " + std::to_string(seed) + " is not an edge of step " +
                                              std::to_string(t0));
    TrackedCurve curve;
    curve.seed = seed;
    curve.chain.push_back({base.edge(seed).v0, base.edge(seed).v1});
    for (std::size_t t = t0; t + 1 < history.meshes.size(); ++t)
      curve.chain.push_back(refine_chain(history, t, curve.chain.back()));

    curve.endpoints_fixed = true;
    const VertexId a = curve.chain.front().front();
    const VertexId b = curve.chain.front().back();
    for (std::size_t k = 0; k < curve.chain.size(); ++k) {
      const Mesh& m = history.meshes[t0 + k];
      double len = 0.0;
      for (std::size_t i = 0; i + 1 < curve.chain[k].size(); ++i)
        len += distance(m.position(curve.chain[k][i]), m.position(curve.chain[k][i + 1]));
      curve.lengths.push_back(len);
      curve.endpoint_distance.push_back(distance(m.position(a), m.position(b)));
      if (!(m.position(a) == base.position(a)) || !(m.position(b) == base.position(b)))
        curve.endpoints_fixed = false;
    }
    family.curves.push_back(std::move(curve));
  }
  return family;
}

RasterWindow default_window(const Mesh& mesh) {
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-lo.x, -lo.y};
  for (Point2 p : mesh.positions()) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  // Refined boundaries bulge out of the input by up to a fraction of an edge.
  double longest = 0.0;
  for (const Edge& e : mesh.edges())
    if (e.is_boundary()) longest = std::max(longest, distance(mesh.position(e.v0), mesh.position(e.v1)));
  const double side = std::max(hi.x - lo.x, hi.y - lo.y) + 2.0 * kBoundaryDeviation * longest;
  const Point2 mid = 0.5 * (lo + hi);
  const double half = 0.5 * side * 1.04;
  return {{mid.x - half, mid.y - half}, {mid.x + half, mid.y + half}};
}

FirstHitRaster first_hit_raster(const snub::SubdivisionHistory& history, int resolution,
                                const std::optional<RasterWindow>& window) {
  if (resolution < 16) throw Error(ErrorCode::InvalidParameter, "resolution must be at least 16");
  if (history.meshes.empty()) throw Error(ErrorCode::InvalidParameter, "empty history");
  FirstHitRaster raster;
  raster.window = window ? *window : default_window(history.meshes.front());
  const double w = raster.window.hi.x - raster.window.lo.x;
  const double h = raster.window.hi.y - raster.window.lo.y;
  if (!(w > 0.0 && h > 0.0)) throw Error(ErrorCode::InvalidParameter, "raster window is empty");
  raster.width = resolution;
  raster.height = resolution;
  raster.step.assign(static_cast<std::size_t>(resolution) * resolution, -1);

  for (std::size_t t = 0; t < history.meshes.size(); ++t) {
    std::size_t fresh = 0;
    for (Point2 p : history.meshes[t].positions()) {
      const double u = (p.x - raster.window.lo.x) / w * resolution;
      const double v = (raster.window.hi.y - p.y) / h * resolution;
      const double col = std::floor(u);
      const double row = std::floor(v);
      if (col < 0.0 || row < 0.0 || col >= resolution || row >= resolution) continue;
      auto& px = raster.step[static_cast<std::size_t>(row) * resolution + static_cast<std::size_t>(col)];
      if (px < 0) {
        px = static_cast<std::int16_t>(t);
        ++fresh;
      }
    }
    raster.new_pixels.push_back(fresh);
  }
  for (int t = static_cast<int>(raster.new_pixels.size()) - 1; t >= 0; --t) {
    if (raster.new_pixels[t] != 0) {
      if (t + 1 < static_cast<int>(raster.new_pixels.size())) raster.saturation_step = t;
      break;
    }
  }
  return raster;
}

namespace {

struct Rect {
  Point2 lo;
  Point2 hi;
};

bool in_rect(Point2 p, const Rect& r) { return p.x >= r.lo.x && p.x <= r.hi.x && p.y >= r.lo.y && p.y <= r.hi.y; }

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  return distance(p, a + t * d);
}

bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double o1 = orient(a, b, c), o2 = orient(a, b, d);
  const double o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 <= 0 && o2 >= 0) || (o1 >= 0 && o2 <= 0)) && ((o3 <= 0 && o4 >= 0) || (o3 >= 0 && o4 <= 0));
}

// Distance between a segment and a closed rectangle.
double segment_rect_distance(Point2 a, Point2 b, const Rect& r) {
  if (in_rect(a, r) || in_rect(b, r)) return 0.0;
  const std::array<Point2, 4> c{r.lo, Point2{r.hi.x, r.lo.y}, r.hi, Point2{r.lo.x, r.hi.y}};
  for (int i = 0; i < 4; ++i)
    if (segments_cross(a, b, c[i], c[(i + 1) % 4])) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (Point2 q : c) best = std::min(best, point_segment_distance(q, a, b));
  for (Point2 q : {a, b}) {
    const double dx = std::max({r.lo.x - q.x, 0.0, q.x - r.hi.x});
    const double dy = std::max({r.lo.y - q.y, 0.0, q.y - r.hi.y});
    best = std::min(best, std::hypot(dx, dy));
  }
  return best;
}

bool point_in_polygon(const std::vector<Point2>& poly, Point2 p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point2 a = poly[i], b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

bool polygon_meets_rect(const std::vector<Point2>& poly, const Rect& r) {
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (segment_rect_distance(poly[i], poly[(i + 1) % poly.size()], r) == 0.0) return true;
  return point_in_polygon(poly, r.lo);
}

class PixelGrid {
 public:
  PixelGrid(const RasterWindow& window, int resolution)
      : window_(window), res_(resolution),
        sx_((window.hi.x - window.lo.x) / resolution), sy_((window.hi.y - window.lo.y) / resolution) {}

  // Pixel index of a point, or -1 outside the window.
  long long index(Point2 p) const {
    const double col = std::floor((p.x - window_.lo.x) / (window_.hi.x - window_.lo.x) * res_);
    const double row = std::floor((window_.hi.y - p.y) / (window_.hi.y - window_.lo.y) * res_);
    if (col < 0.0 || row < 0.0 || col >= res_ || row >= res_) return -1;
    return static_cast<long long>(row) * res_ + static_cast<long long>(col);
  }

  Rect rect(int col, int row) const {
    return {{window_.lo.x + col * sx_, window_.hi.y - (row + 1) * sy_},
            {window_.lo.x + (col + 1) * sx_, window_.hi.y - row * sy_}};
  }

  // Inclusive pixel ranges overlapping a world-space box, clamped.
  struct Range {
    int c0, c1, r0, r1;
    bool empty() const { return c0 > c1 || r0 > r1; }
  };
  Range range(Point2 lo, Point2 hi) const {
    auto clampi = [&](double v) { return static_cast<int>(std::clamp(v, -1.0, static_cast<double>(res_))); };
    Range r;
    r.c0 = std::max(0, clampi(std::floor((lo.x - window_.lo.x) / sx_)));
    r.c1 = std::min(res_ - 1, clampi(std::floor((hi.x - window_.lo.x) / sx_)));
    r.r0 = std::max(0, clampi(std::floor((window_.hi.y - hi.y) / sy_)));
    r.r1 = std::min(res_ - 1, clampi(std::floor((window_.hi.y - lo.y) / sy_)));
    return r;
  }

  int resolution() const { return res_; }

 private:
  RasterWindow window_;
  int res_;
  double sx_, sy_;
};

struct LocalMesh {
  Mesh mesh;
  std::vector<char> exact;      // per vertex: position equals the full refinement's
  std::vector<char> true_edge;  // per edge: on the boundary of the full refinement
};

std::vector<Point2> face_points(const Mesh& m, FaceId f) {
  std::vector<Point2> pts;
  for (VertexId v : m.face(f)) pts.push_back(m.position(v));
  return pts;
}

void bounds(const std::vector<Point2>& pts, Point2& lo, Point2& hi) {
  lo = hi = pts.front();
  for (Point2 p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
}

// Faces whose bounding box, grown by `margin`, reaches a live pixel; closed
// so that no vertex is pinched between kept faces.
LocalMesh prune(const LocalMesh& in, const PixelGrid& grid, const std::vector<char>& live, double margin) {
  const Mesh& m = in.mesh;
  const int res = grid.resolution();
  // summed-area table of live pixels
  std::vector<long long> sat(static_cast<std::size_t>(res + 1) * (res + 1), 0);
  for (int r = 0; r < res; ++r)
    for (int c = 0; c < res; ++c)
      sat[(r + 1) * (res + 1) + c + 1] = live[static_cast<std::size_t>(r) * res + c] + sat[r * (res + 1) + c + 1] +
                                         sat[(r + 1) * (res + 1) + c] - sat[r * (res + 1) + c];
  auto any_live = [&](const PixelGrid::Range& g) {
    if (g.empty()) return false;
    return sat[(g.r1 + 1) * (res + 1) + g.c1 + 1] - sat[g.r0 * (res + 1) + g.c1 + 1] -
               sat[(g.r1 + 1) * (res + 1) + g.c0] + sat[g.r0 * (res + 1) + g.c0] > 0;
  };

  const auto nf = static_cast<FaceId>(m.num_faces());
  std::vector<char> keep(nf, 0);
  for (FaceId f = 0; f < nf; ++f) {
    Point2 lo, hi;
    bounds(face_points(m, f), lo, hi);
    keep[f] = any_live(grid.range(lo - Point2{margin, margin}, hi + Point2{margin, margin}));
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (VertexId v = 0; v < static_cast<VertexId>(m.num_vertices()); ++v) {
      int open = 0;
      bool touched = false;
      for (EdgeId e : m.vertex_edges(v)) {
        const Edge& edge = m.edge(e);
        const bool l = keep[edge.left] != 0;
        const bool r = edge.right != kInvalid && keep[edge.right] != 0;
        touched = touched || l || r;
        open += l != r;
      }
      if (touched && open > 2) {
        for (FaceId f : m.vertex_faces(v)) {
          if (!keep[f]) {
            keep[f] = 1;
            changed = true;
          }
        }
      }
    }
  }

  std::vector<VertexId> remap(m.num_vertices(), kInvalid);
  std::vector<Point2> points;
  std::vector<char> exact;
  std::vector<std::vector<VertexId>> faces;
  for (FaceId f = 0; f < nf; ++f) {
    if (!keep[f]) continue;
    std::vector<VertexId> face;
    for (VertexId v : m.face(f)) {
      if (remap[v] == kInvalid) {
        remap[v] = static_cast<VertexId>(points.size());
        points.push_back(m.position(v));
        exact.push_back(in.exact[v]);
      }
      face.push_back(remap[v]);
    }
    faces.push_back(std::move(face));
  }
  LocalMesh out;
  out.mesh = Mesh::build(std::move(points), std::move(faces), {.geometric_checks = false});
  out.exact = std::move(exact);
  out.true_edge.assign(out.mesh.num_edges(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(m.num_edges()); ++e) {
    if (!in.true_edge[e]) continue;
    const VertexId a = remap[m.edge(e).v0], b = remap[m.edge(e).v1];
    if (a == kInvalid || b == kInvalid) continue;
    if (auto g = out.mesh.find_edge(a, b)) out.true_edge[*g] = 1;
  }
  return out;
}

LocalMesh refine(const LocalMesh& in, const snub::SnubOptions& options) {
  auto [next, record] = snub::snub_step(in.mesh, options);
  LocalMesh out;
  out.true_edge.assign(next.num_edges(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(in.mesh.num_edges()); ++e)
    if (in.true_edge[e])
      for (EdgeId c : record.edge_children[e]) out.true_edge[c] = 1;

  const auto nv = next.num_vertices();
  std::vector<char> before(nv, 0);  // position before smoothing is exact
  for (std::size_t v = 0; v < nv; ++v) {
    const snub::VertexParent& p = record.vertex_parent[v];
    switch (p.kind) {
      case snub::VertexParent::Kind::Carried:
        before[v] = in.exact[p.source];
        break;
      case snub::VertexParent::Kind::ZVertex: {
        const Edge& e = in.mesh.edge(p.source);
        before[v] = in.exact[e.v0] && in.exact[e.v1];
        break;
      }
      case snub::VertexParent::Kind::Barycenter: {
        bool all = true;
        for (VertexId u : in.mesh.face(p.source)) all = all && in.exact[u];
        before[v] = all;
        break;
      }
    }
  }
  std::vector<char> on_true(nv, 0), on_cut(nv, 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(next.num_edges()); ++e) {
    const Edge& edge = next.edge(e);
    if (!edge.is_boundary()) continue;
    auto& mark = out.true_edge[e] ? on_true : on_cut;
    mark[edge.v0] = mark[edge.v1] = 1;
  }
  out.exact.assign(nv, 0);
  for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v) {
    if (on_true[v] || !options.smoothing) {
      out.exact[v] = before[v] && (on_true[v] || !on_cut[v] || !options.smoothing);
      continue;
    }
    if (on_cut[v]) continue;
    bool all = true;
    for (FaceId f : next.vertex_faces(v))
      for (VertexId u : next.face(f)) all = all && before[u];
    out.exact[v] = all;
  }
  out.mesh = std::move(next);
  return out;
}

}  // namespace

FirstHitRaster first_hit_raster_local(const Mesh& input, int resolution, int max_steps,
                                      const snub::SnubOptions& options, const std::optional<RasterWindow>& window) {
  if (resolution < 16) throw Error(ErrorCode::InvalidParameter, "resolution must be at least 16");
  if (max_steps < 0) throw Error(ErrorCode::InvalidParameter, "max_steps must be >= 0");
  FirstHitRaster raster;
  raster.window = window ? *window : default_window(input);
  if (!(raster.window.hi.x > raster.window.lo.x && raster.window.hi.y > raster.window.lo.y))
    throw Error(ErrorCode::InvalidParameter, "raster window is empty");
  raster.width = raster.height = resolution;
  const std::size_t npx = static_cast<std::size_t>(resolution) * resolution;
  raster.step.assign(npx, -1);
  const PixelGrid grid(raster.window, resolution);

  LocalMesh cur;
  cur.mesh = input;
  cur.exact.assign(input.num_vertices(), 1);
  cur.true_edge.assign(input.num_edges(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(input.num_edges()); ++e) cur.true_edge[e] = input.edge(e).is_boundary();

  std::vector<char> live(npx, 1);
  snub::SnubOptions step_options = options;
  for (int t = 0;; ++t) {
    const Mesh& m = cur.mesh;
    // Every face reaching a pixel that can still be hit must be exact, and no
    // artificial cut may cross such a pixel.
    std::vector<char> reached(npx, 0);
    for (FaceId f = 0; f < static_cast<FaceId>(m.num_faces()); ++f) {
      const auto pts = face_points(m, f);
      Point2 lo, hi;
      bounds(pts, lo, hi);
      const auto g = grid.range(lo, hi);
      if (g.empty()) continue;
      bool face_exact = true;
      for (VertexId v : m.face(f)) face_exact = face_exact && cur.exact[v];
      for (int r = g.r0; r <= g.r1; ++r)
        for (int c = g.c0; c <= g.c1; ++c) {
          const std::size_t i = static_cast<std::size_t>(r) * resolution + c;
          if (!live[i] || !polygon_meets_rect(pts, grid.rect(c, r))) continue;
          if (!face_exact)
            throw Error(ErrorCode::Internal, "local raster lost exactness near pixel (" + std::to_string(c) + ", " +
                                                 std::to_string(r) + ") at step " + std::to_string(t));
          reached[i] = 1;
        }
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(m.num_edges()); ++e) {
      const Edge& edge = m.edge(e);
      if (!edge.is_boundary()) continue;
      const Point2 a = m.position(edge.v0), b = m.position(edge.v1);
      const double pad = cur.true_edge[e] ? kBoundaryDeviation * distance(a, b) : 0.0;
      const Point2 lo{std::min(a.x, b.x) - pad, std::min(a.y, b.y) - pad};
      const Point2 hi{std::max(a.x, b.x) + pad, std::max(a.y, b.y) + pad};
      const auto g = grid.range(lo, hi);
      if (g.empty()) continue;
      for (int r = g.r0; r <= g.r1; ++r)
        for (int c = g.c0; c <= g.c1; ++c) {
          const std::size_t i = static_cast<std::size_t>(r) * resolution + c;
          if (!live[i] || segment_rect_distance(a, b, grid.rect(c, r)) > pad) continue;
          if (!cur.true_edge[e])
            throw Error(ErrorCode::Internal, "local raster cut crosses pixel (" + std::to_string(c) + ", " +
                                                 std::to_string(r) + ") at step " + std::to_string(t));
          reached[i] = 1;
        }
    }

    std::size_t fresh = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(m.num_vertices()); ++v) {
      if (!cur.exact[v]) continue;
      const long long i = grid.index(m.position(v));
      if (i < 0 || !live[i] || raster.step[i] >= 0) continue;
      raster.step[i] = static_cast<std::int16_t>(t);
      ++fresh;
    }
    raster.new_pixels.push_back(fresh);

    std::size_t live_count = 0;
    for (std::size_t i = 0; i < npx; ++i) {
      live[i] = live[i] && reached[i] && raster.step[i] < 0;
      live_count += live[i];
    }
    if (live_count == 0) {
      raster.exhausted = true;
      break;
    }
    if (t == max_steps) break;

    double longest = 0.0;
    for (const Edge& e : m.edges()) longest = std::max(longest, distance(m.position(e.v0), m.position(e.v1)));
    cur = refine(prune(cur, grid, live, kPruneMargin * longest), step_options);
    step_options.seed_edge = 0;
  }
  for (int t = static_cast<int>(raster.new_pixels.size()) - 1; t >= 0; --t) {
    if (raster.new_pixels[t] != 0) {
      if (raster.exhausted) raster.saturation_step = t;
      break;
    }
  }
  return raster;
}

}  // namespace pentaweave::fractal
