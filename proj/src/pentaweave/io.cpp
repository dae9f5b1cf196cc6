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

#include "pentaweave/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pentaweave/error.hpp"

namespace pentaweave::io {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos) return "0.000000000";
  return s;
}

std::string repr(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Bounds {
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void add(Point2 p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  bool empty() const { return !(hi.x >= lo.x && hi.y >= lo.y); }
};

// Model y-up to SVG y-down.
std::string pt(Point2 p) { return num(p.x) + "," + num(-p.y); }

std::string svg_open(Bounds b) {
  if (b.empty()) b = {{0.0, 0.0}, {1.0, 1.0}};
  const double w = std::max(b.hi.x - b.lo.x, 1e-12);
  const double h = std::max(b.hi.y - b.lo.y, 1e-12);
  const double mx = 0.02 * w, my = 0.02 * h;
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(b.lo.x - mx) + " " +
       num(-(b.hi.y + my)) + " " + num(w + 2 * mx) + " " + num(h + 2 * my) + "\">\n";
  return s;
}

std::string path_d(const std::vector<Point2>& pts, bool closed) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) d += (i == 0 ? "M" : " L") + pt(pts[i]);
  if (closed) d += " Z";
  return d;
}

double mean_edge_length(const Mesh& mesh) {
  if (mesh.num_edges() == 0) return 1.0;
  double sum = 0.0;
  for (const Edge& e : mesh.edges()) sum += distance(mesh.position(e.v0), mesh.position(e.v1));
  return sum / static_cast<double>(mesh.num_edges());
}

[[noreturn]] void syntax(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

// --- pmesh --------------------------------------------------------------------

void write_mesh(std::ostream& out, const Mesh& mesh) { out << write_mesh(mesh); }

std::string write_mesh(const Mesh& mesh) {
  std::string s = "pmesh 1\n";
  for (Point2 p : mesh.positions()) s += "v " + repr(p.x) + " " + repr(p.y) + "\n";
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    s += "f";
    for (VertexId v : mesh.face(f)) s += " " + std::to_string(v + 1);
    s += "\n";
  }
  return s;
}

Mesh parse_mesh(std::istream& in, const BuildOptions& options) {
  std::vector<Point2> points;
  std::vector<std::vector<VertexId>> faces;
  std::vector<std::size_t> face_line;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (!header) {
      int version = 0;
      if (tag != "pmesh" || !(ss >> version)) syntax(number, "expected header 'pmesh 1'");
      if (version != 1) syntax(number, "unsupported pmesh version " + std::to_string(version));
      std::string rest;
      if (ss >> rest) syntax(number, "trailing text after header");
      header = true;
      continue;
    }
    if (tag == "v") {
      std::string xs, ys, rest;
      if (!(ss >> xs >> ys) || (ss >> rest)) syntax(number, "expected 'v x y'");
      Point2 p;
      try {
        std::size_t nx = 0, ny = 0;
        p.x = std::stod(xs, &nx);
        p.y = std::stod(ys, &ny);
        if (nx != xs.size() || ny != ys.size()) throw std::invalid_argument("junk");
      } catch (const std::exception&) {
        syntax(number, "bad coordinate");
      }
      if (!is_finite(p)) syntax(number, "coordinate is not finite");
      points.push_back(p);
    } else if (tag == "f") {
      std::vector<VertexId> face;
      std::string tok;
      while (ss >> tok) {
        long long idx = 0;
        try {
          std::size_t n = 0;
          idx = std::stoll(tok, &n);
          if (n != tok.size()) throw std::invalid_argument("junk");
        } catch (const std::exception&) {
          syntax(number, "bad vertex index '" + tok + "'");
        }
        face.push_back(idx < 1 || idx > std::numeric_limits<VertexId>::max() ? kInvalid
                                                                            : static_cast<VertexId>(idx - 1));
        if (face.back() == kInvalid)
          throw Error(ErrorCode::OutOfRange, "line " + std::to_string(number) + ": vertex index " + tok +
                                                 " out of range (indices are 1-based)");
      }
      if (face.size() < 3) syntax(number, "a face needs at least 3 vertices");
      faces.push_back(std::move(face));
      face_line.push_back(number);
    } else {
      syntax(number, "unknown record '" + tag + "'");
    }
  }
  if (!header) syntax(number, "missing header 'pmesh 1'");
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (VertexId v : faces[f])
      if (static_cast<std::size_t>(v) >= points.size())
        throw Error(ErrorCode::OutOfRange, "line " + std::to_string(face_line[f]) + ": vertex index " +
                                               std::to_string(v + 1) + " exceeds vertex count " +
                                               std::to_string(points.size()));
  return Mesh::build(std::move(points), std::move(faces), options);
}

Mesh parse_mesh(std::string_view text, const BuildOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_mesh(in, options);
}

Mesh read_mesh_file(const std::string& path, const BuildOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return parse_mesh(in, options);
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

// --- colours ------------------------------------------------------------------

const std::vector<Rgb>& palette(std::string_view name) {
  static const std::vector<Rgb> maritime12{
      {0x0b, 0x3c, 0x5d}, {0xd9, 0xb3, 0x10}, {0x32, 0x8c, 0xc1}, {0xc0, 0x39, 0x2b},
      {0x1d, 0x6a, 0x72}, {0xf2, 0xe2, 0xc4}, {0x5b, 0x8e, 0x7d}, {0xe0, 0x7a, 0x5f},
      {0x2e, 0x4a, 0x7d}, {0xa8, 0xd0, 0xe6}, {0x8c, 0x6d, 0x46}, {0x3d, 0x5a, 0x40}};
  static const std::vector<Rgb> maritime4{{0x0b, 0x3c, 0x5d}, {0xd9, 0xb3, 0x10}, {0x32, 0x8c, 0xc1},
                                          {0xc0, 0x39, 0x2b}};
  static const std::vector<Rgb> jigsaw20{
      {0xe6, 0x19, 0x4b}, {0x3c, 0xb4, 0x4b}, {0xff, 0xe1, 0x19}, {0x43, 0x63, 0xd8}, {0xf5, 0x82, 0x31},
      {0x91, 0x1e, 0xb4}, {0x46, 0xf0, 0xf0}, {0xf0, 0x32, 0xe6}, {0xbc, 0xf6, 0x0c}, {0xfa, 0xbe, 0xbe},
      {0x00, 0x80, 0x80}, {0xe6, 0xbe, 0xff}, {0x9a, 0x63, 0x24}, {0xff, 0xfa, 0xc8}, {0x80, 0x00, 0x00},
      {0xaa, 0xff, 0xc3}, {0x80, 0x80, 0x00}, {0xff, 0xd8, 0xb1}, {0x00, 0x00, 0x75}, {0x80, 0x80, 0x80}};
  if (name == "paper-maritime-12") return maritime12;
  if (name == "paper-maritime-4") return maritime4;
  if (name == "jigsaw-20") return jigsaw20;
  throw Error(ErrorCode::InvalidParameter, "unknown palette '" + std::string(name) + "'");
}

std::vector<std::string> palette_names() { return {"paper-maritime-12", "paper-maritime-4", "jigsaw-20"}; }

std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

Rgb first_hit_color(int step) {
  if (step < 0) return {255, 255, 255};
  if (step == 0) return {0, 0, 0};
  if (step <= 9) {
    const auto g = static_cast<std::uint8_t>(40 + (step - 1) * 215 / 8);
    return {g, g, g};
  }
  if (step <= 12) {
    const int k = step - 9;  // 1..3
    return {static_cast<std::uint8_t>(255 - 70 * k), 255, static_cast<std::uint8_t>(255 - 70 * k)};
  }
  return {45, 255, 45};
}

// --- weave documents ----------------------------------------------------------

std::string weave_json(const weave::Weaving& weaving, const weave::VertexColoring* coloring) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["format"] = "pentaweave-weave";
  doc["version"] = 1;
  doc["link_kind"] = weaving.link_kind == weave::Weaving::LinkKind::Edge ? "edge" : "face";
  ordered_json strands = ordered_json::array();
  for (std::size_t s = 0; s < weaving.strands.size(); ++s) {
    const weave::Strand& strand = weaving.strands[s];
    ordered_json js;
    js["id"] = s;
    js["color"] = strand.color;
    js["closed"] = strand.closed;
    ordered_json crossings = ordered_json::array();
    ordered_json over = ordered_json::array();
    for (const weave::Visit& v : strand.visits) {
      crossings.push_back(v.crossing);
      over.push_back(v.over);
    }
    js["crossings"] = std::move(crossings);
    js["over"] = std::move(over);
    js["links"] = strand.links;
    strands.push_back(std::move(js));
  }
  doc["strands"] = std::move(strands);
  ordered_json crossings = ordered_json::array();
  for (std::size_t c = 0; c < weaving.crossings.size(); ++c) {
    const weave::Crossing& x = weaving.crossings[c];
    ordered_json jc;
    jc["id"] = c;
    jc["tile"] = x.tile;
    jc["over"] = x.over == kInvalid ? ordered_json(nullptr) : ordered_json(x.over);
    jc["under"] = x.under == kInvalid ? ordered_json(nullptr) : ordered_json(x.under);
    crossings.push_back(std::move(jc));
  }
  doc["crossings"] = std::move(crossings);
  if (coloring && coloring->size() > 0) {
    ordered_json col = ordered_json::array();
    for (weave::Color c : coloring->color) col.push_back(c == weave::Color::C1 ? 1 : 2);
    doc["coloring"] = std::move(col);
  }
  return doc.dump(1) + "\n";
}

std::string check_weave(const weave::Weaving& weaving) {
  const auto nc = weaving.crossings.size();
  std::vector<int> over_seen(nc, 0), under_seen(nc, 0);
  for (std::size_t s = 0; s < weaving.strands.size(); ++s) {
    for (const weave::Visit& v : weaving.strands[s].visits) {
      if (v.crossing < 0 || static_cast<std::size_t>(v.crossing) >= nc)
        return "strand " + std::to_string(s) + " visits unknown crossing " + std::to_string(v.crossing);
      const weave::Crossing& x = weaving.crossings[v.crossing];
      const weave::StrandId expect = v.over ? x.over : x.under;
      if (expect != static_cast<weave::StrandId>(s))
        return "strand " + std::to_string(s) + " disagrees with crossing " + std::to_string(v.crossing);
      ++(v.over ? over_seen : under_seen)[v.crossing];
    }
  }
  for (std::size_t c = 0; c < nc; ++c) {
    const weave::Crossing& x = weaving.crossings[c];
    if (x.over == kInvalid) return "crossing " + std::to_string(c) + " has no over strand";
    if (x.over == x.under) return "crossing " + std::to_string(c) + " has the same strand over and under";
    if (over_seen[c] != 1) return "crossing " + std::to_string(c) + " is passed over " + std::to_string(over_seen[c]) + " times";
    if (under_seen[c] != (x.under == kInvalid ? 0 : 1))
      return "crossing " + std::to_string(c) + " is passed under " + std::to_string(under_seen[c]) + " times";
  }
  return {};
}

// --- SVG ----------------------------------------------------------------------

std::string mesh_svg(const Mesh& mesh, const SvgStyle& style) {
  if (style.fill_by == FillBy::Coloring && !style.coloring)
    throw Error(ErrorCode::InvalidParameter, "coloring fill needs a vertex coloring");
  Bounds b;
  for (Point2 p : mesh.positions()) b.add(p);
  const double stroke = style.stroke_width > 0.0 ? style.stroke_width : 0.03 * mean_edge_length(mesh);
  const auto& colors = palette(style.palette);

  std::string s = svg_open(b);
  s += "<g id=\"faces\" stroke=\"none\">\n";
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.num_faces()); ++f) {
    std::string fill = "none";
    if (style.fill_by == FillBy::Face || style.fill_by == FillBy::Strand) {
      int idx = static_cast<std::size_t>(f) < style.face_color.size() ? style.face_color[f] : f;
      fill = idx < 0 ? "#ffffff" : hex(colors[static_cast<std::size_t>(idx) % colors.size()]);
    }
    std::string points;
    for (VertexId v : mesh.face(f)) points += (points.empty() ? "" : " ") + pt(mesh.position(v));
    s += "<polygon points=\"" + points + "\" fill=\"" + fill + "\"/>\n";
  }
  s += "</g>\n<g id=\"edges\" fill=\"none\" stroke=\"#000000\" stroke-linecap=\"round\" stroke-width=\"" + num(stroke) +
       "\">\n";
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.num_edges()); ++e) {
    const Edge& edge = mesh.edge(e);
    s += "<path d=\"M" + pt(mesh.position(edge.v0)) + " L" + pt(mesh.position(edge.v1)) + "\"";
    if (style.highlight && static_cast<std::size_t>(e) < style.highlight->edge.size() &&
        style.highlight->edge[e] == snub::EdgeTag::ZMiddle)
      s += " stroke=\"#c0392b\" stroke-width=\"" + num(3.0 * stroke) + "\"";
    s += "/>\n";
  }
  s += "</g>\n";
  if (style.fill_by == FillBy::Coloring) {
    const double half = 1.5 * stroke;
    s += "<g id=\"coloring\" stroke=\"#000000\" stroke-width=\"" + num(0.3 * stroke) + "\">\n";
    for (VertexId v = 0; v < static_cast<VertexId>(std::min(mesh.num_vertices(), style.coloring->size())); ++v) {
      const Point2 p = mesh.position(v);
      s += "<rect x=\"" + num(p.x - half) + "\" y=\"" + num(-p.y - half) + "\" width=\"" + num(2 * half) +
           "\" height=\"" + num(2 * half) + "\" fill=\"" +
           ((*style.coloring)[v] == weave::Color::C1 ? "#202020" : "#f0f0f0") + "\"/>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

std::vector<std::vector<Point2>> ribbon_pieces(const weave::Ribbon& ribbon) {
  std::vector<Point2> line = ribbon.centerline;
  if (line.empty()) return {};
  if (ribbon.closed) line.push_back(line.front());
  std::vector<double> arc(line.size(), 0.0);
  for (std::size_t i = 1; i < line.size(); ++i) arc[i] = arc[i - 1] + distance(line[i - 1], line[i]);
  const double total = arc.back();

  std::vector<std::pair<double, double>> cut;
  const double g = 0.5 * ribbon.gap_length;
  for (std::size_t idx : ribbon.gaps) {
    const double a = arc[idx] - g, b = arc[idx] + g;
    if (ribbon.closed && a < 0.0) {
      cut.push_back({a + total, total});
      cut.push_back({0.0, b});
    } else if (ribbon.closed && b > total) {
      cut.push_back({a, total});
      cut.push_back({0.0, b - total});
    } else {
      cut.push_back({std::max(a, 0.0), std::min(b, total)});
    }
  }
  std::sort(cut.begin(), cut.end());
  std::vector<std::pair<double, double>> keep;
  double at = 0.0;
  for (auto [a, b] : cut) {
    if (a > at) keep.push_back({at, a});
    at = std::max(at, b);
  }
  if (at < total) keep.push_back({at, total});
  // A closed ribbon whose seam is not cut continues through it.
  bool wrap = ribbon.closed && keep.size() > 1 && keep.front().first == 0.0 && keep.back().second == total;

  auto point_at = [&](double s) {
    const std::size_t i = static_cast<std::size_t>(std::upper_bound(arc.begin(), arc.end(), s) - arc.begin());
    if (i == 0) return line.front();
    if (i >= line.size()) return line.back();
    const double len = arc[i] - arc[i - 1];
    const double t = len > 0.0 ? (s - arc[i - 1]) / len : 0.0;
    return line[i - 1] + t * (line[i] - line[i - 1]);
  };
  auto extract = [&](double a, double b, std::vector<Point2>& out) {
    if (out.empty()) out.push_back(point_at(a));
    for (std::size_t i = 0; i < line.size(); ++i)
      if (arc[i] > a && arc[i] < b) out.push_back(line[i]);
    out.push_back(point_at(b));
  };

  std::vector<std::vector<Point2>> pieces;
  for (std::size_t k = wrap ? 1 : 0; k < keep.size(); ++k) {
    std::vector<Point2> piece;
    extract(keep[k].first, keep[k].second, piece);
    if (wrap && k + 1 == keep.size()) extract(keep.front().first, keep.front().second, piece);
    if (piece.size() >= 2) pieces.push_back(std::move(piece));
  }
  return pieces;
}

std::string ribbon_svg(const std::vector<weave::Ribbon>& ribbons, const Mesh* backdrop, std::string_view palette_name) {
  const auto& colors = palette(palette_name);
  Bounds b;
  for (const auto& r : ribbons)
    for (Point2 p : r.centerline) b.add(p);
  if (backdrop)
    for (Point2 p : backdrop->positions()) b.add(p);
  std::string s = svg_open(b);
  if (backdrop) {
    const double stroke = 0.01 * mean_edge_length(*backdrop);
    s += "<g id=\"mesh\" fill=\"none\" stroke=\"#b0b0b0\" stroke-width=\"" + num(stroke) + "\">\n";
    for (const Edge& e : backdrop->edges())
      s += "<path d=\"M" + pt(backdrop->position(e.v0)) + " L" + pt(backdrop->position(e.v1)) + "\"/>\n";
    s += "</g>\n";
  }
  s += "<g id=\"ribbons\" fill=\"none\" stroke-linecap=\"butt\" stroke-linejoin=\"round\">\n";
  for (const auto& r : ribbons) {
    const std::string color = hex(colors[static_cast<std::size_t>(std::max(r.color, 0)) % colors.size()]);
    s += "<g id=\"strand-" + std::to_string(r.strand) + "\" stroke=\"" + color + "\" stroke-width=\"" + num(r.width) +
         "\">\n";
    const bool whole = r.closed && r.gaps.empty();
    if (whole) {
      s += "<path d=\"" + path_d(r.centerline, true) + "\"/>\n";
    } else {
      for (const auto& piece : ribbon_pieces(r)) s += "<path d=\"" + path_d(piece, false) + "\"/>\n";
    }
    s += "</g>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

std::string polyline_svg(const std::vector<Point2>& points, double stroke_width) {
  Bounds b;
  for (Point2 p : points) b.add(p);
  if (stroke_width <= 0.0) {
    double len = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) len += distance(points[i - 1], points[i]);
    stroke_width = points.size() > 1 ? 0.1 * len / static_cast<double>(points.size() - 1) : 0.01;
  }
  std::string s = svg_open(b);
  s += "<path d=\"" + path_d(points, false) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" +
       num(stroke_width) + "\"/>\n</svg>\n";
  return s;
}

// --- cut templates ------------------------------------------------------------

int rotational_symmetry_order(const Mesh& mesh, double tol) {
  const auto pts = mesh.positions();
  if (pts.size() < 2) return 1;
  Point2 c{0.0, 0.0};
  for (Point2 p : pts) c += p;
  c = c / static_cast<double>(pts.size());
  std::vector<Point2> sorted(pts.begin(), pts.end());
  auto less = [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); };
  std::sort(sorted.begin(), sorted.end(), less);
  for (int k = 12; k >= 2; --k) {
    bool ok = true;
    for (Point2 p : pts) {
      const Point2 q = c + rotate(p - c, 2.0 * kPi / k);
      // nearest neighbour among points with x within tol
      auto it = std::lower_bound(sorted.begin(), sorted.end(), Point2{q.x - tol, -std::numeric_limits<double>::infinity()}, less);
      bool found = false;
      for (; it != sorted.end() && it->x <= q.x + tol; ++it)
        if (std::abs(it->y - q.y) <= tol) {
          found = true;
          break;
        }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok) return k;
  }
  return 1;
}

std::vector<int> sector_groups(const std::vector<weave::Ribbon>& ribbons, Point2 center, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "sector count must be positive");
  const double sector = 2.0 * kPi / k;
  // Boundaries sit off the symmetry axes so ties are unlikely.
  const double offset = 0.25 * sector + 1e-7;
  std::vector<int> groups;
  groups.reserve(ribbons.size());
  for (const auto& r : ribbons) {
    Point2 c{0.0, 0.0};
    for (Point2 p : r.centerline) c += p;
    if (!r.centerline.empty()) c = c / static_cast<double>(r.centerline.size());
    const Point2 d = c - center;
    if (length(d) < 1e-12) {
      groups.push_back(0);
      continue;
    }
    double a = std::atan2(d.y, d.x) - offset;
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    groups.push_back(std::min(k - 1, static_cast<int>(a / sector)));
  }
  return groups;
}

namespace {

std::vector<Point2> dedupe(const std::vector<Point2>& pts) {
  std::vector<Point2> out;
  for (Point2 p : pts)
    if (out.empty() || distance(out.back(), p) > 1e-12) out.push_back(p);
  return out;
}

// Offset by `d` to the left, mitred joins (capped at 4 d).
std::vector<Point2> offset(const std::vector<Point2>& line, double d, bool closed) {
  const std::size_t n = line.size();
  std::vector<Point2> out;
  auto normal = [&](std::size_t i) {
    const Point2 t = line[(i + 1) % n] - line[i];
    const double l = length(t);
    return l > 0.0 ? Point2{-t.y / l, t.x / l} : Point2{0.0, 0.0};
  };
  for (std::size_t i = 0; i < n; ++i) {
    Point2 nrm;
    const bool has_prev = closed || i > 0;
    const bool has_next = closed || i + 1 < n;
    if (has_prev && has_next) {
      const Point2 a = normal((i + n - 1) % n), b = normal(i);
      Point2 m = a + b;
      const double l = length(m);
      if (l < 1e-12) {
        nrm = b;
      } else {
        m = m / l;
        const double c = std::max(dot(m, b), 0.25);
        nrm = m / c;
      }
    } else {
      nrm = has_next ? normal(i) : normal(i - 1);
    }
    out.push_back(line[i] + d * nrm);
  }
  return out;
}

}  // namespace

std::vector<std::vector<Point2>> ribbon_outline(const weave::Ribbon& ribbon) {
  std::vector<Point2> line = dedupe(ribbon.centerline);
  if (ribbon.closed && line.size() > 1 && distance(line.front(), line.back()) <= 1e-12) line.pop_back();
  if (line.size() < 2) return {};
  const double h = 0.5 * ribbon.width;
  if (ribbon.closed && line.size() >= 3) {
    std::vector<Point2> inner = offset(line, -h, true);
    std::reverse(inner.begin(), inner.end());
    return {offset(line, h, true), inner};
  }
  std::vector<Point2> outline = offset(line, h, false);
  std::vector<Point2> right = offset(line, -h, false);
  outline.insert(outline.end(), right.rbegin(), right.rend());
  return {outline};
}

std::string cut_template_svg(const std::vector<weave::Ribbon>& ribbons, const std::vector<int>& groups) {
  if (groups.size() != ribbons.size())
    throw Error(ErrorCode::InvalidParameter, "one group per ribbon required");
  Bounds b;
  std::vector<std::vector<std::vector<Point2>>> outlines;
  for (const auto& r : ribbons) {
    outlines.push_back(ribbon_outline(r));
    for (const auto& loop : outlines.back())
      for (Point2 p : loop) b.add(p);
  }
  std::string s = svg_open(b);
  std::set<int> ids(groups.begin(), groups.end());
  for (int g : ids) {
    s += "<g id=\"group-" + std::to_string(g) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" +
         num(ribbons.empty() ? 0.0 : 0.05 * ribbons.front().width) + "\">\n";
    for (std::size_t i = 0; i < ribbons.size(); ++i) {
      if (groups[i] != g) continue;
      std::string d;
      for (const auto& loop : outlines[i]) d += (d.empty() ? "" : " ") + path_d(loop, true);
      s += "<path id=\"strand-" + std::to_string(ribbons[i].strand) + "\" d=\"" + d + "\"/>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

// --- rasters ------------------------------------------------------------------

std::string raster_pgm(const fractal::FirstHitRaster& raster) {
  int top = 0;
  for (auto v : raster.step) top = std::max<int>(top, v);
  std::string s = "P5\n" + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n255\n";
  for (auto v : raster.step)
    s.push_back(static_cast<char>(v < 0 ? 255 : v * 255 / (top + 1)));
  return s;
}

std::string raster_ppm(const fractal::FirstHitRaster& raster) {
  std::string s = "P6\n" + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n255\n";
  for (auto v : raster.step) {
    const Rgb c = first_hit_color(v);
    s.append(reinterpret_cast<const char*>(c.data()), 3);
  }
  return s;
}

}  // namespace pentaweave::io
