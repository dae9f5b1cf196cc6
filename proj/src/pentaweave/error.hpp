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

#include <stdexcept>
#include <string>
#include <string_view>

namespace pentaweave {

enum class ErrorCode {
  InvalidParameter,
  OutOfRange,
  NonManifold,
  DegenerateFace,
  SelfIntersection,
  InconsistentOrientation,
  AmbiguousHalfPlane,
  NotTriangleMesh,
  NotQuadMesh,
  NotBipartite,
  InvalidTriangleColoring,
  MissingProvenance,
  MissingOriginRecords,
  NoInteriorEdges,
  UnknownSeed,
  InsufficientData,
  DepthTooLarge,
  SyntaxError,
  Io,
  Internal,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported as Error. The message names the
// offending element (vertex, edge, face, line) where there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorCode::AmbiguousHalfPlane: return "AmbiguousHalfPlane";
    case ErrorCode::NotTriangleMesh: return "NotTriangleMesh";
    case ErrorCode::NotQuadMesh: return "NotQuadMesh";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::InvalidTriangleColoring: return "InvalidTriangleColoring";
    case ErrorCode::MissingProvenance: return "MissingProvenance";
    case ErrorCode::MissingOriginRecords: return "MissingOriginRecords";
    case ErrorCode::NoInteriorEdges: return "NoInteriorEdges";
    case ErrorCode::UnknownSeed: return "UnknownSeed";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace pentaweave
