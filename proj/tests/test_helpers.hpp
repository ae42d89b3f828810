// Copyright 2026 The sizecover Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Test-only oracles. Everything here is implemented independently of the
// library code paths it checks: plain loops, scalar arithmetic, and
// brute-force enumeration only.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <vector>

#include "sizecover/mesh.hpp"
#include "sizecover/param_space.hpp"
#include "sizecover/rng.hpp"

namespace testutil {

using sizecover::ParamPoint;
using sizecover::ParameterizedMesh;
using sizecover::Rng;
using sizecover::ToleranceBox;

inline ParamPoint pt(int id, std::initializer_list<double> coords) {
  ParamPoint p;
  p.id = id;
  p.coords.resize(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p.coords[i++] = c;
  return p;
}

inline Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// Closed-box membership by scalar arithmetic.
inline bool in_box(const ParamPoint& p, const ToleranceBox& b) {
  for (Eigen::Index i = 0; i < p.coords.size(); ++i) {
    if (std::fabs(p.coords[i] - b.center[i]) > b.side_lengths[i] / 2.0)
      return false;
  }
  return true;
}

// Full double-loop incidence.
inline std::vector<std::vector<int>> brute_incidence(
    const std::vector<ParamPoint>& points, const std::vector<ToleranceBox>& boxes) {
  std::vector<std::vector<int>> members(boxes.size());
  for (std::size_t b = 0; b < boxes.size(); ++b)
    for (std::size_t p = 0; p < points.size(); ++p)
      if (in_box(points[p], boxes[b])) members[b].push_back(static_cast<int>(p));
  return members;
}

// A point subset is coverable by some translate of the tolerance box iff
// its extent along every dimension fits within the side length.
inline bool coverable_by_translate(const std::vector<ParamPoint>& points,
                                   const std::vector<int>& subset,
                                   const Eigen::VectorXd& tolerances) {
  if (subset.empty()) return true;
  for (Eigen::Index i = 0; i < tolerances.size(); ++i) {
    double lo = points[subset.front()].coords[i];
    double hi = lo;
    for (int s : subset) {
      lo = std::min(lo, points[s].coords[i]);
      hi = std::max(hi, points[s].coords[i]);
    }
    if (hi - lo > tolerances[i]) return false;
  }
  return true;
}

// Plain increasing-size enumeration over all box subsets; first full cover
// found in lexicographic order wins. Returns selected box indices.
inline std::vector<int> independent_min_cover(
    const std::vector<std::vector<int>>& members, int num_points) {
  const int r = static_cast<int>(members.size());
  std::vector<bool> covered(num_points);
  auto covers_all = [&](const std::vector<int>& subset) {
    std::fill(covered.begin(), covered.end(), false);
    for (int b : subset)
      for (int p : members[b]) covered[p] = true;
    return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
  };
  for (int m = 1; m <= r; ++m) {
    std::vector<int> combo(m);
    std::iota(combo.begin(), combo.end(), 0);
    while (true) {
      if (covers_all(combo)) return combo;
      int i = m - 1;
      while (i >= 0 && combo[i] == r - m + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int j = i + 1; j < m; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return {};  // infeasible
}

// Exhaustive k-subset enumeration; returns best covered count.
inline int independent_max_coverage(const std::vector<std::vector<int>>& members,
                                    int num_points, int k) {
  const int r = static_cast<int>(members.size());
  k = std::min(k, r);
  std::vector<int> combo(k);
  std::iota(combo.begin(), combo.end(), 0);
  int best = 0;
  std::vector<bool> covered(num_points);
  while (true) {
    std::fill(covered.begin(), covered.end(), false);
    for (int b : combo)
      for (int p : members[b]) covered[p] = true;
    best = std::max(best, static_cast<int>(
                              std::count(covered.begin(), covered.end(), true)));
    int i = k - 1;
    while (i >= 0 && combo[i] == r - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return best;
}

inline std::vector<ParamPoint> random_points(Rng& rng, int n, int d,
                                             double lo = 0.0, double hi = 1.0) {
  std::vector<ParamPoint> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    ParamPoint p;
    p.id = i;
    p.coords.resize(d);
    for (int j = 0; j < d; ++j) p.coords[j] = rng.uniform(lo, hi);
    points.push_back(std::move(p));
  }
  return points;
}

inline Eigen::Matrix3d euler_rotation(double a, double b, double c) {
  return (Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(c, Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

inline ParameterizedMesh make_tetra(int id = 0) {
  ParameterizedMesh mesh;
  mesh.id = id;
  mesh.vertices.resize(3, 4);
  mesh.vertices << 0, 1, 0, 0,
                   0, 0, 1, 0,
                   0, 0, 0, 1;
  mesh.faces = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  mesh.landmarks = {0, 1, 2, 3};
  return mesh;
}

inline ParameterizedMesh random_mesh(Rng& rng, int id, int v = 12) {
  ParameterizedMesh mesh;
  mesh.id = id;
  mesh.vertices.resize(3, v);
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < 3; ++j) mesh.vertices(j, i) = rng.uniform(-0.2, 0.2);
  for (int i = 0; i + 2 < v; ++i)
    mesh.faces.push_back({i, i + 1, i + 2});
  mesh.landmarks = {0, 1, 2, 3};
  return mesh;
}

// Residual of the best rigid superimposition found by a dense rotation
// grid (Euler angles) with local refinement; translation closed-form.
inline double grid_search_alignment_residual(const Eigen::Matrix3Xd& source,
                                             const Eigen::Matrix3Xd& target) {
  const Eigen::Vector3d sc = source.rowwise().mean();
  const Eigen::Vector3d tc = target.rowwise().mean();
  const Eigen::Matrix3Xd s = source.colwise() - sc;
  const Eigen::Matrix3Xd t = target.colwise() - tc;
  auto residual = [&](double a, double b, double c) {
    return (euler_rotation(a, b, c) * s - t).squaredNorm();
  };
  const double pi = 3.14159265358979323846;
  double best = 1e300, ba = 0, bb = 0, bc = 0;
  const double coarse = 2.0 * pi / 180.0;
  for (double a = 0; a < 2 * pi; a += coarse)
    for (double b = 0; b <= pi; b += coarse)
      for (double c = 0; c < 2 * pi; c += coarse) {
        const double r = residual(a, b, c);
        if (r < best) { best = r; ba = a; bb = b; bc = c; }
      }
  double step = coarse;
  for (int round = 0; round < 12; ++round) {
    step *= 0.5;
    bool improved = true;
    while (improved) {
      improved = false;
      for (int axis = 0; axis < 3; ++axis)
        for (double sign : {-1.0, 1.0}) {
          double a = ba + (axis == 0 ? sign * step : 0);
          double b = bb + (axis == 1 ? sign * step : 0);
          double c = bc + (axis == 2 ? sign * step : 0);
          const double r = residual(a, b, c);
          if (r < best) { best = r; ba = a; bb = b; bc = c; improved = true; }
        }
    }
  }
  return best;
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("sizecover_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testutil
