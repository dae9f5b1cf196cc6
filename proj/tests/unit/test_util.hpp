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


#pragma once

#include <gtest/gtest.h>

#include <string>

#include "oracles/snub_oracle.hpp"
#include "pentaweave/error.hpp"
#include "pentaweave/mesh.hpp"

namespace pentaweave::testing {

// Runs `fn` and checks it throws pentaweave::Error with `code`.
template <typename Fn>
::testing::AssertionResult throws_code(Fn&& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.code() == code) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "threw " << to_string(e.code()) << " (" << e.what() << "), wanted "
                                         << to_string(code);
  } catch (const std::exception& e) {
    return ::testing::AssertionFailure() << "threw a non-library exception: " << e.what();
  }
  return ::testing::AssertionFailure() << "did not throw, wanted " << to_string(code);
}

#define EXPECT_PW_ERROR(stmt, code) EXPECT_TRUE(::pentaweave::testing::throws_code([&] { (void)(stmt); }, code))

inline Mesh gen(const std::string& spec) { return generate_demo_mesh(parse_demo_spec(spec)); }

inline oracle::Soup to_soup(const Mesh& m) {
  oracle::Soup s;
  for (const auto& p : m.positions()) s.points.push_back({p.x, p.y});
  for (const auto& f : m.face_lists()) s.faces.emplace_back(f.begin(), f.end());
  return s;
}

}  // namespace pentaweave::testing
