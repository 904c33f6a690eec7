// Copyright 2026 The SceneAug Authors
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

#include "sceneaug/error.hpp"

namespace sceneaug {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kInvalidDepth: return "InvalidDepth";
    case ErrorCode::kEmptyProjection: return "EmptyProjection";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kEmptyMesh: return "EmptyMesh";
    case ErrorCode::kDegenerateMesh: return "DegenerateMesh";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kRemoteTimeout: return "RemoteTimeout";
    case ErrorCode::kRemoteProtocolError: return "RemoteProtocolError";
    case ErrorCode::kReplacementInvalid: return "ReplacementInvalid";
    case ErrorCode::kPlacementExhausted: return "PlacementExhausted";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kUnknownTask: return "UnknownTask";
  }
  return "Unknown";
}

}  // namespace sceneaug
