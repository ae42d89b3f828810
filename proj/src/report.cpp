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

#include "sizecover/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sizecover/error.hpp"
#include "sizecover/io.hpp"

namespace sizecover {

using nlohmann::ordered_json;

namespace {

std::vector<double> to_vec(const Eigen::VectorXd& v) {
  return std::vector<double>(v.begin(), v.end());
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

RunReport make_report(const CoverSolution& solution,
                      const Eigen::VectorXd& tolerances, int num_points) {
  RunReport report;
  report.algorithm = to_string(solution.algorithm);
  report.dimension = static_cast<int>(tolerances.size());
  report.num_points = num_points;
  report.tolerances = tolerances;
  for (std::size_t i = 0; i < solution.selected.size(); ++i) {
    report.boxes.push_back(ReportBox{solution.selected[i].center,
                                     solution.selected[i].side_lengths,
                                     solution.members[i]});
  }
  report.covered_ids = solution.covered_ids;
  report.uncovered_ids = solution.uncovered_ids;
  report.train_coverage = solution.coverage;
  return report;
}

void save_report(const std::filesystem::path& path, const RunReport& report) {
  ordered_json j;
  j["type"] = "cover_report";
  j["algorithm"] = report.algorithm;
  j["candidate_mode"] = report.candidate_mode;
  j["dimension"] = report.dimension;
  j["num_points"] = report.num_points;
  if (report.k) j["k"] = *report.k;
  if (report.l) j["l"] = *report.l;
  if (report.epsilon) j["epsilon"] = *report.epsilon;
  j["tolerances_m"] = to_vec(report.tolerances);
  ordered_json boxes = ordered_json::array();
  for (const ReportBox& b : report.boxes) {
    boxes.push_back({{"center", to_vec(b.center)},
                     {"side_lengths", to_vec(b.side_lengths)},
                     {"member_ids", b.member_ids}});
  }
  j["boxes"] = std::move(boxes);
  j["covered_ids"] = report.covered_ids;
  j["uncovered_ids"] = report.uncovered_ids;
  j["train_coverage"] = report.train_coverage;
  if (report.holdout_coverage) j["holdout_coverage"] = *report.holdout_coverage;
  j["seed"] = report.seed;
  j["comment"] = report.comment;

  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << j.dump(2) << '\n';
}

RunReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read file: " + path.string());
  ordered_json j;
  try {
    j = ordered_json::parse(in);
    RunReport report;
    report.algorithm = j.at("algorithm").get<std::string>();
    report.candidate_mode = j.at("candidate_mode").get<std::string>();
    report.dimension = j.at("dimension").get<int>();
    report.num_points = j.at("num_points").get<int>();
    if (j.contains("k")) report.k = j["k"].get<int>();
    if (j.contains("l")) report.l = j["l"].get<int>();
    if (j.contains("epsilon")) report.epsilon = j["epsilon"].get<double>();
    report.tolerances = to_eigen(j.at("tolerances_m").get<std::vector<double>>());
    for (const auto& b : j.at("boxes")) {
      report.boxes.push_back(
          ReportBox{to_eigen(b.at("center").get<std::vector<double>>()),
                    to_eigen(b.at("side_lengths").get<std::vector<double>>()),
                    b.at("member_ids").get<std::vector<int>>()});
    }
    report.covered_ids = j.at("covered_ids").get<std::vector<int>>();
    report.uncovered_ids = j.at("uncovered_ids").get<std::vector<int>>();
    report.train_coverage = j.at("train_coverage").get<double>();
    if (j.contains("holdout_coverage"))
      report.holdout_coverage = j["holdout_coverage"].get<double>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.comment = j.at("comment").get<std::string>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid report in " + path.string() + ": " + e.what());
  }
}

bool operator==(const RunReport& a, const RunReport& b) {
  auto box_eq = [](const ReportBox& x, const ReportBox& y) {
    return x.center == y.center && x.side_lengths == y.side_lengths &&
           x.member_ids == y.member_ids;
  };
  if (a.boxes.size() != b.boxes.size()) return false;
  for (std::size_t i = 0; i < a.boxes.size(); ++i)
    if (!box_eq(a.boxes[i], b.boxes[i])) return false;
  return a.algorithm == b.algorithm && a.candidate_mode == b.candidate_mode &&
         a.dimension == b.dimension && a.num_points == b.num_points &&
         a.k == b.k && a.l == b.l && a.epsilon == b.epsilon &&
         a.tolerances == b.tolerances && a.covered_ids == b.covered_ids &&
         a.uncovered_ids == b.uncovered_ids &&
         a.train_coverage == b.train_coverage &&
         a.holdout_coverage == b.holdout_coverage && a.seed == b.seed &&
         a.comment == b.comment;
}

std::string render_svg_scatter(const RunReport& report,
                               const std::vector<ParamPoint>& points) {
  if (report.dimension != 2)
    throw std::invalid_argument("SVG scatter supported for d=2 only");

  Eigen::Vector2d lo(1e300, 1e300), hi(-1e300, -1e300);
  auto grow = [&](const Eigen::Vector2d& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  };
  for (const ParamPoint& p : points) grow(p.coords.head<2>());
  for (const ReportBox& b : report.boxes) {
    grow(b.center.head<2>() - 0.5 * b.side_lengths.head<2>());
    grow(b.center.head<2>() + 0.5 * b.side_lengths.head<2>());
  }
  const Eigen::Vector2d span = (hi - lo).cwiseMax(1e-12);
  constexpr double kSize = 720.0;
  constexpr double kMargin = 40.0;
  const double scale = (kSize - 2 * kMargin) / span.maxCoeff();
  auto sx = [&](double x) { return kMargin + (x - lo[0]) * scale; };
  auto sy = [&](double y) { return kSize - kMargin - (y - lo[1]) * scale; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize
      << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const ReportBox& b : report.boxes) {
    const double x = sx(b.center[0] - 0.5 * b.side_lengths[0]);
    const double y = sy(b.center[1] + 0.5 * b.side_lengths[1]);
    svg << "  <rect x=\"" << fixed3(x) << "\" y=\"" << fixed3(y) << "\" width=\""
        << fixed3(b.side_lengths[0] * scale) << "\" height=\""
        << fixed3(b.side_lengths[1] * scale)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  for (const ParamPoint& p : points) {
    const double x = sx(p.coords[0]);
    const double y = sy(p.coords[1]);
    svg << "  <path d=\"M " << fixed3(x) << " " << fixed3(y - 4.0) << " L "
        << fixed3(x - 4.0) << " " << fixed3(y + 4.0) << " L " << fixed3(x + 4.0)
        << " " << fixed3(y + 4.0) << " Z\" fill=\"gray\"/>\n";
  }
  for (const ReportBox& b : report.boxes) {
    svg << "  <rect x=\"" << fixed3(sx(b.center[0]) - 3.5) << "\" y=\""
        << fixed3(sy(b.center[1]) - 3.5)
        << "\" width=\"7\" height=\"7\" fill=\"black\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void save_timings(const std::filesystem::path& path,
                  const std::map<std::string, double>& seconds) {
  ordered_json j;
  for (const auto& [phase, s] : seconds) j[phase] = s;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace sizecover
