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

#pragma once

#include <Eigen/Core>
#include <string>
#include <unordered_map>
#include <vector>

namespace sizecover {

/// One subject as a point in measurement space: d ordered measurements,
/// in meters.
struct ParamPoint {
  int id = 0;
  Eigen::VectorXd coords;
};

/// Axis-aligned closed box in measurement space. Side lengths are the
/// per-dimension adjustment tolerances of the product being designed; a
/// subject fits iff its point lies in the box (boundary included).
struct ToleranceBox {
  Eigen::VectorXd center;
  Eigen::VectorXd side_lengths;

  bool contains(const Eigen::VectorXd& x) const {
    return ((x - center).cwiseAbs().array() <= 0.5 * side_lengths.array())
        .all();
  }
};

enum class CandidateMode { centered, combinatorial };

/// A pool of candidate box translates plus point/box incidence in both
/// directions. box_members / point_boxes are positional (indices into
/// `points`); use member_ids() for subject ids.
struct CandidateSet {
  std::vector<ParamPoint> points;  // input points, in input order
  std::vector<ToleranceBox> boxes;
  std::vector<std::vector<int>> box_members;  // per box: point positions, ascending
  std::vector<std::vector<int>> point_boxes;  // per point: box indices, ascending
  std::unordered_map<int, int> id_to_position;
  CandidateMode mode = CandidateMode::centered;

  int dimension() const {
    return points.empty() ? 0 : static_cast<int>(points.front().coords.size());
  }

  std::vector<int> member_ids(int box) const {
    std::vector<int> ids;
    ids.reserve(box_members[box].size());
    for (int pos : box_members[box]) ids.push_back(points[pos].id);
    return ids;
  }

  /// Box indices covering the subject with the given id.
  const std::vector<int>& boxes_covering_id(int id) const {
    return point_boxes[id_to_position.at(id)];
  }
};

enum class CoverAlgorithm { greedy_all, greedy_k, shifting, oracle_min, oracle_max_k };

std::string to_string(CoverAlgorithm a);

/// Result of a covering run: the chosen boxes in pick order plus the
/// covered/uncovered partition of the input ids.
struct CoverSolution {
  std::vector<ToleranceBox> selected;
  std::vector<int> selected_indices;  // into the candidate pool; empty for shifting
  std::vector<std::vector<int>> members;  // per selected box: covered ids, ascending
  std::vector<int> covered_ids;           // ascending
  std::vector<int> uncovered_ids;         // ascending
  CoverAlgorithm algorithm = CoverAlgorithm::greedy_all;
  double coverage = 0.0;

  int k() const { return static_cast<int>(selected.size()); }
};

}  // namespace sizecover
