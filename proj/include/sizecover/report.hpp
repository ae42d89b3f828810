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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sizecover/param_space.hpp"

namespace sizecover {

struct ReportBox {
  Eigen::VectorXd center;
  Eigen::VectorXd side_lengths;
  std::vector<int> member_ids;
};

/// Canonical record of one covering run. Serialization is deterministic:
/// the same inputs and seed always produce byte-identical report files.
/// Wall-clock timings are therefore kept out of the report; pipelines
/// write them to a separate timings file.
struct RunReport {
  std::string algorithm;       // greedy-all | greedy-k | shifting
  std::string candidate_mode;  // centered | combinatorial | block-combinatorial
  int dimension = 0;
  int num_points = 0;
  std::optional<int> k;
  std::optional<int> l;
  std::optional<double> epsilon;
  Eigen::VectorXd tolerances;
  std::vector<ReportBox> boxes;
  std::vector<int> covered_ids;
  std::vector<int> uncovered_ids;
  double train_coverage = 0.0;
  std::optional<double> holdout_coverage;
  std::uint64_t seed = 0;
  std::string comment;
};

RunReport make_report(const CoverSolution& solution,
                      const Eigen::VectorXd& tolerances, int num_points);

void save_report(const std::filesystem::path& path, const RunReport& report);
RunReport load_report(const std::filesystem::path& path);
bool operator==(const RunReport& a, const RunReport& b);

/// Scatter plot of a d=2 report: points as gray triangles, box centers as
/// black squares, box outlines. Pure rendering; never mutates the report.
std::string render_svg_scatter(const RunReport& report,
                               const std::vector<ParamPoint>& points);

void save_timings(const std::filesystem::path& path,
                  const std::map<std::string, double>& seconds);

}  // namespace sizecover
