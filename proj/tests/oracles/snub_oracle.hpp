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

// Slow reference implementations used only by tests. They share no code
// with the library: plain arrays, quadratic searches, turtle geometry.

#pragma once

#include <array>
#include <string>
#include <vector>

namespace oracle {

struct Soup {
  std::vector<std::array<double, 2>> points;
  std::vector<std::vector<int>> faces;  // counterclockwise
};

// Regular n-gon, unit circumradius, first vertex at angle pi/2.
Soup regular_polygon(int n);

// One snub step. Z points by turtle walk: leave each edge at the angle
// solving "three equal steps with pi/3 turns land on the far endpoint",
// turning toward the left of the face walking it counterclockwise.
// Vertices are merged by position (quadratic scan).
Soup snub_step(const Soup& in, bool smoothing);

// Mean of face barycenters for every vertex all of whose edges have two
// faces; other vertices stay.
Soup smooth(const Soup& in);

// True iff there is a vertex bijection within `tol` under which the face
// cycles coincide (as cyclic sequences). `why` explains a mismatch.
bool same_mesh(const Soup& a, const Soup& b, double tol, std::string* why);

// Classic midedge construction twice vs. the direct corner construction
// (corner = mean of vertex, its two edge midpoints and the face centroid),
// faces for every face, every edge with two faces, and every interior
// vertex.
Soup doo_sabin_direct(const Soup& in);

}  // namespace oracle
