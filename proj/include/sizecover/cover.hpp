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
#include <cstddef>
#include <vector>

#include "sizecover/param_space.hpp"

namespace sizecover {

/// The n box translates centered at the input points. Restricting the
/// greedy cover to these costs at most a factor 2d in cover size.
CandidateSet candidate_boxes_centered(const std::vector<ParamPoint>& points,
                                      const Eigen::VectorXd& tolerances);

/// All combinatorially distinct box translates: per dimension, intervals
/// ending or starting at a subject coordinate, so at most (2n)^d boxes
/// before deduplication. Refuses with SizeCapError when (2n)^d exceeds
/// `cap` to prevent runaway enumeration.
CandidateSet candidate_boxes_combinatorial(const std::vector<ParamPoint>& points,
                                           const Eigen::VectorXd& tolerances,
                                           double cap = 1e6);

/// Greedy full cover: repeatedly select the box covering the most
/// uncovered points until none remain. O(d n r) including incidence.
CoverSolution greedy_cover_all(const CandidateSet& candidates);

/// Greedy maximum coverage with a budget of k boxes; stops early once all
/// points are covered or no candidate adds coverage.
CoverSolution greedy_cover_k(const CandidateSet& candidates, int k);

/// Shifting-strategy cover for d=2: a grid of cell width equal to the box
/// side is anchored at the minimum point coordinate, all l^2 shifted
/// partitions into lxl-cell blocks are tried, each nonempty block is
/// solved exactly, and the best shift's union is returned. The result is
/// within (1+1/l)^2 of the optimal cover size.
CoverSolution shifting_cover_2d(const std::vector<ParamPoint>& points,
                                const Eigen::VectorXd& tolerances, int l);

/// epsilon with (1+epsilon) = (1+1/l)^d.
double shifting_epsilon(int l, int d);

/// Size guards for the exact solvers; they refuse (SizeCapError) rather
/// than start an enumeration that cannot finish at desk scale.
struct OracleLimits {
  int max_points = 15;
  int max_boxes = 1000;
  int max_k = 4;
  double max_subsets = 2e8;  // k-subset enumeration guard
};

/// Minimum-cardinality cover by exhaustive search in increasing size;
/// ties broken by the lexicographically smallest candidate index set.
CoverSolution exact_min_cover(const CandidateSet& candidates,
                              const OracleLimits& limits = {});

/// Best k-subset of candidates by exhaustive enumeration (first subset in
/// lexicographic order among maxima).
CoverSolution exact_max_coverage(const CandidateSet& candidates, int k,
                                 const OracleLimits& limits = {});

}  // namespace sizecover
