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

#include "sceneaug/mesh.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "sceneaug/codec.hpp"
#include "sceneaug/error.hpp"

namespace sceneaug {

void TriMesh::validate() const {
  if (triangles.empty()) Fail(ErrorCode::kEmptyMesh, "mesh has no triangles");
  const int n = static_cast<int>(vertices.size());
  for (const auto& t : triangles) {
    for (int i : t) {
      if (i < 0 || i >= n) Fail(ErrorCode::kParseError, "triangle index out of range");
    }
  }
  for (const auto& v : vertices) {
    if (!v.allFinite()) Fail(ErrorCode::kParseError, "non-finite vertex coordinate");
  }
}

Eigen::Vector3d TriMesh::bbox_min() const {
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  for (const auto& v : vertices) lo = lo.cwiseMin(v);
  return lo;
}

Eigen::Vector3d TriMesh::bbox_max() const {
  Eigen::Vector3d hi = Eigen::Vector3d::Constant(-std::numeric_limits<double>::infinity());
  for (const auto& v : vertices) hi = hi.cwiseMax(v);
  return hi;
}

void RecenterBottom(TriMesh& mesh) {
  if (mesh.vertices.empty()) return;
  const Eigen::Vector3d lo = mesh.bbox_min();
  const Eigen::Vector3d hi = mesh.bbox_max();
  const Eigen::Vector3d offset(0.5 * (lo.x() + hi.x()), 0.5 * (lo.y() + hi.y()), lo.z());
  for (auto& v : mesh.vertices) v -= offset;
}

namespace {

double ParseNumber(std::string_view token, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    Fail(ErrorCode::kParseError,
         "line " + std::to_string(line) + ": bad number '" + std::string(token) + "'");
  }
  return value;
}

int ParseIndex(std::string_view token, int vertex_count, int line) {
  const std::string_view head = token.substr(0, token.find('/'));
  long long index = 0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), index);
  if (head.empty() || ec != std::errc() || ptr != head.data() + head.size()) {
    Fail(ErrorCode::kParseError,
         "line " + std::to_string(line) + ": bad face index '" + std::string(token) + "'");
  }
  long long resolved = index > 0 ? index - 1 : vertex_count + index;
  if (index == 0 || resolved < 0 || resolved >= vertex_count) {
    Fail(ErrorCode::kParseError,
         "line " + std::to_string(line) + ": face index out of range '" + std::string(token) + "'");
  }
  return static_cast<int>(resolved);
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

TriMesh ParseObj(std::string_view text) {
  TriMesh mesh;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens[0] == "v") {
      if (tokens.size() < 4) {
        Fail(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": vertex needs 3 coordinates");
      }
      mesh.vertices.emplace_back(ParseNumber(tokens[1], line_no), ParseNumber(tokens[2], line_no),
                                 ParseNumber(tokens[3], line_no));
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) {
        Fail(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": face needs 3 vertices");
      }
      const int n = static_cast<int>(mesh.vertices.size());
      std::vector<int> poly;
      for (std::size_t i = 1; i < tokens.size(); ++i) poly.push_back(ParseIndex(tokens[i], n, line_no));
      for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        mesh.triangles.push_back({poly[0], poly[i], poly[i + 1]});
      }
    }
    if (end == text.size()) break;
  }
  mesh.validate();
  RecenterBottom(mesh);
  return mesh;
}

TriMesh LoadObj(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) Fail(ErrorCode::kIoError, "missing mesh " + path.string());
  try {
    return ParseObj(ReadFileText(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void WriteObj(const TriMesh& mesh, const std::filesystem::path& path) {
  std::ostringstream out;
  out.precision(std::numeric_limits<double>::max_digits10);  // lossless round trip
  for (const auto& v : mesh.vertices) out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  WriteFileAtomic(path, out.str());
}

namespace {

void AppendBox(TriMesh& mesh, const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
  const int base = static_cast<int>(mesh.vertices.size());
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.emplace_back((i & 1) ? hi.x() : lo.x(), (i & 2) ? hi.y() : lo.y(),
                               (i & 4) ? hi.z() : lo.z());
  }
  static constexpr int kQuads[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                                       {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  for (const auto& q : kQuads) {
    mesh.triangles.push_back({base + q[0], base + q[1], base + q[2]});
    mesh.triangles.push_back({base + q[0], base + q[2], base + q[3]});
  }
}

}  // namespace

TriMesh MakeBox(double sx, double sy, double sz) {
  TriMesh mesh;
  AppendBox(mesh, Eigen::Vector3d(-sx / 2, -sy / 2, 0.0), Eigen::Vector3d(sx / 2, sy / 2, sz));
  return mesh;
}

TriMesh MakeLathe(const std::vector<std::array<double, 2>>& profile, int segments) {
  if (profile.size() < 2 || segments < 3) {
    Fail(ErrorCode::kInvalidArgument, "lathe needs >= 2 profile points and >= 3 segments");
  }
  TriMesh mesh;
  const int rings = static_cast<int>(profile.size());
  for (const auto& [r, z] : profile) {
    for (int s = 0; s < segments; ++s) {
      const double a = 2.0 * std::numbers::pi * s / segments;
      mesh.vertices.emplace_back(r * std::cos(a), r * std::sin(a), z);
    }
  }
  auto at = [segments](int ring, int s) { return ring * segments + (s % segments); };
  for (int ring = 0; ring + 1 < rings; ++ring) {
    for (int s = 0; s < segments; ++s) {
      mesh.triangles.push_back({at(ring, s), at(ring, s + 1), at(ring + 1, s + 1)});
      mesh.triangles.push_back({at(ring, s), at(ring + 1, s + 1), at(ring + 1, s)});
    }
  }
  auto cap = [&](int ring) {
    const int center = static_cast<int>(mesh.vertices.size());
    mesh.vertices.emplace_back(0.0, 0.0, profile[ring][1]);
    for (int s = 0; s < segments; ++s) mesh.triangles.push_back({center, at(ring, s), at(ring, s + 1)});
  };
  if (profile.front()[0] > 0.0) cap(0);
  if (profile.back()[0] > 0.0) cap(rings - 1);
  RecenterBottom(mesh);
  return mesh;
}

TriMesh MakeCylinder(double radius, double height, int segments) {
  return MakeLathe({{radius, 0.0}, {radius, height}}, segments);
}

TriMesh MakeCone(double radius, double height, int segments) {
  return MakeLathe({{radius, 0.0}, {0.0, height}}, segments);
}

TriMesh MakeBowl(double radius, double height, int segments) {
  return MakeLathe({{0.55 * radius, 0.0},
                    {radius, height},
                    {0.88 * radius, height},
                    {0.45 * radius, 0.25 * height},
                    {0.0, 0.25 * height}},
                   segments);
}

TriMesh MakeDome(double radius, double height, int segments) {
  std::vector<std::array<double, 2>> profile;
  constexpr int kSteps = 8;
  for (int i = 0; i <= kSteps; ++i) {
    const double t = 0.5 * std::numbers::pi * i / kSteps;
    profile.push_back({i == kSteps ? 0.0 : radius * std::cos(t), height * std::sin(t)});
  }
  return MakeLathe(profile, segments);
}

TriMesh MakeTray(double sx, double sy, double height, double rim) {
  TriMesh mesh;
  const double floor = 0.25 * height;
  AppendBox(mesh, Eigen::Vector3d(-sx / 2, -sy / 2, 0.0), Eigen::Vector3d(sx / 2, sy / 2, floor));
  AppendBox(mesh, Eigen::Vector3d(-sx / 2, -sy / 2, 0.0), Eigen::Vector3d(sx / 2, -sy / 2 + rim, height));
  AppendBox(mesh, Eigen::Vector3d(-sx / 2, sy / 2 - rim, 0.0), Eigen::Vector3d(sx / 2, sy / 2, height));
  AppendBox(mesh, Eigen::Vector3d(-sx / 2, -sy / 2, 0.0), Eigen::Vector3d(-sx / 2 + rim, sy / 2, height));
  AppendBox(mesh, Eigen::Vector3d(sx / 2 - rim, -sy / 2, 0.0), Eigen::Vector3d(sx / 2, sy / 2, height));
  RecenterBottom(mesh);
  return mesh;
}

}  // namespace sceneaug
