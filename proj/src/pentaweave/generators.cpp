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

#include <charconv>

#include "pentaweave/error.hpp"
#include "pentaweave/mesh.hpp"

namespace pentaweave {

namespace {

std::vector<Point2> regular_polygon(int n) {
  std::vector<Point2> points;
  points.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double angle = kPi / 2.0 + 2.0 * kPi * k / n;
    points.push_back({std::cos(angle), std::sin(angle)});
  }
  return points;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::InvalidParameter, message);
}

int parse_int(std::string_view text, const std::string& spec) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidParameter, "bad integer in generator spec '" + spec + "'");
  }
  return value;
}

std::pair<int, int> parse_dims(std::string_view text, const std::string& spec) {
  const auto x = text.find('x');
  if (x == std::string_view::npos) {
    const int n = parse_int(text, spec);
    return {n, n};
  }
  return {parse_int(text.substr(0, x), spec), parse_int(text.substr(x + 1), spec)};
}

}  // namespace

Mesh make_pentagon() { return make_ngon(5); }

Mesh make_ngon(int n) {
  require(n >= 3, "ngon needs n >= 3");
  std::vector<VertexId> cycle(n);
  for (int k = 0; k < n; ++k) cycle[k] = k;
  return Mesh::build(regular_polygon(n), {cycle});
}

Mesh make_square_grid(int width, int height) {
  require(width >= 1 && height >= 1, "square grid needs width, height >= 1");
  std::vector<Point2> points;
  for (int j = 0; j <= height; ++j) {
    for (int i = 0; i <= width; ++i) points.push_back({double(i), double(j)});
  }
  auto id = [&](int i, int j) { return j * (width + 1) + i; };
  std::vector<std::vector<VertexId>> faces;
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return Mesh::build(std::move(points), std::move(faces));
}

Mesh make_fan_ngon(int n) {
  require(n >= 3, "fan needs n >= 3");
  auto points = regular_polygon(n);
  Point2 center;
  for (const auto& p : points) center += p;
  points.push_back(center / n);
  std::vector<std::vector<VertexId>> faces;
  for (int k = 0; k < n; ++k) faces.push_back({n, k, (k + 1) % n});
  return Mesh::build(std::move(points), std::move(faces));
}

Mesh make_triangle_grid(int width, int height) {
  require(width >= 1 && height >= 1, "triangle grid needs width, height >= 1");
  std::vector<Point2> points;
  for (int j = 0; j <= height; ++j) {
    for (int i = 0; i <= width; ++i) points.push_back({double(i), double(j)});
  }
  auto id = [&](int i, int j) { return j * (width + 1) + i; };
  std::vector<std::vector<VertexId>> faces;
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return Mesh::build(std::move(points), std::move(faces));
}

Mesh make_pentagon_flower() {
  auto points = regular_polygon(5);
  std::vector<std::vector<VertexId>> faces{{0, 1, 2, 3, 4}};
  for (int k = 0; k < 5; ++k) {
    const Point2 a = points[k];
    const Point2 b = points[(k + 1) % 5];
    const Point2 dir = (b - a) / distance(a, b);
    auto reflect = [&](Point2 p) {
      const Point2 rel = p - a;
      const Point2 along = dot(rel, dir) * dir;
      return a + along - (rel - along);
    };
    std::vector<VertexId> cycle{(k + 1) % 5, k};
    for (int j = 1; j <= 3; ++j) {
      cycle.push_back(static_cast<VertexId>(points.size()));
      points.push_back(reflect(points[(k + 5 - j) % 5]));
    }
    faces.push_back(std::move(cycle));
  }
  return Mesh::build(std::move(points), std::move(faces));
}

DemoSpec parse_demo_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string_view arg =
      colon == std::string::npos ? std::string_view{} : std::string_view(text).substr(colon + 1);
  DemoSpec spec;
  if (name == "pentagon" && arg.empty()) {
    spec.kind = DemoSpec::Kind::Pentagon;
  } else if (name == "flower" && arg.empty()) {
    spec.kind = DemoSpec::Kind::PentagonFlower;
  } else if (name == "ngon" && !arg.empty()) {
    spec.kind = DemoSpec::Kind::Ngon;
    spec.n = parse_int(arg, text);
  } else if (name == "fan" && !arg.empty()) {
    spec.kind = DemoSpec::Kind::FanNgon;
    spec.n = parse_int(arg, text);
  } else if ((name == "grid" || name == "trigrid") && !arg.empty()) {
    spec.kind = name == "grid" ? DemoSpec::Kind::SquareGrid : DemoSpec::Kind::TriangleGrid;
    std::tie(spec.width, spec.height) = parse_dims(arg, text);
  } else {
    throw Error(ErrorCode::InvalidParameter, "unknown generator spec '" + text + "'");
  }
  return spec;
}

Mesh generate_demo_mesh(const DemoSpec& spec) {
  switch (spec.kind) {
    case DemoSpec::Kind::Pentagon: return make_pentagon();
    case DemoSpec::Kind::Ngon: return make_ngon(spec.n);
    case DemoSpec::Kind::SquareGrid: return make_square_grid(spec.width, spec.height);
    case DemoSpec::Kind::FanNgon: return make_fan_ngon(spec.n);
    case DemoSpec::Kind::TriangleGrid: return make_triangle_grid(spec.width, spec.height);
    case DemoSpec::Kind::PentagonFlower: return make_pentagon_flower();
  }
  throw Error(ErrorCode::InvalidParameter, "unknown generator kind");
}

}  // namespace pentaweave
