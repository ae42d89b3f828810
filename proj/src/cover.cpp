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

#include "sizecover/cover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "sizecover/error.hpp"

namespace sizecover {

std::string to_string(CoverAlgorithm a) {
  switch (a) {
    case CoverAlgorithm::greedy_all: return "greedy-all";
    case CoverAlgorithm::greedy_k: return "greedy-k";
    case CoverAlgorithm::shifting: return "shifting";
    case CoverAlgorithm::oracle_min: return "oracle-min";
    case CoverAlgorithm::oracle_max_k: return "oracle-max-k";
  }
  return "unknown";
}

namespace {

void validate_instance(const std::vector<ParamPoint>& points,
                       const Eigen::VectorXd& tolerances) {
  if (points.empty()) throw std::invalid_argument("empty input");
  const Eigen::Index d = tolerances.size();
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!std::isfinite(tolerances[i]) || tolerances[i] <= 0.0)
      throw std::invalid_argument("invalid tolerance");
  }
  for (const ParamPoint& p : points) {
    if (p.coords.size() != d) throw std::invalid_argument("dimension mismatch");
    if (!p.coords.allFinite())
      throw std::invalid_argument("non-finite coordinate in point " +
                                  std::to_string(p.id));
  }
}

std::unordered_map<int, int> index_ids(const std::vector<ParamPoint>& points) {
  std::unordered_map<int, int> map;
  map.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [it, inserted] = map.emplace(points[i].id, static_cast<int>(i));
    if (!inserted)
      throw std::invalid_argument("duplicate point id " +
                                  std::to_string(points[i].id));
  }
  return map;
}

void build_incidence(CandidateSet& cs) {
  const int n = static_cast<int>(cs.points.size());
  const int r = static_cast<int>(cs.boxes.size());
  cs.box_members.assign(r, {});
  cs.point_boxes.assign(n, {});
  for (int b = 0; b < r; ++b) {
    for (int p = 0; p < n; ++p) {
      if (cs.boxes[b].contains(cs.points[p].coords)) {
        cs.box_members[b].push_back(p);
        cs.point_boxes[p].push_back(b);
      }
    }
  }
}

std::string join_ids(const std::vector<int>& ids) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) os << ", ";
    os << ids[i];
  }
  return os.str();
}

// Points not inside any candidate box; an error for full-cover modes.
std::vector<int> orphan_ids(const CandidateSet& cs) {
  std::vector<int> orphans;
  for (std::size_t p = 0; p < cs.points.size(); ++p)
    if (cs.point_boxes[p].empty()) orphans.push_back(cs.points[p].id);
  std::sort(orphans.begin(), orphans.end());
  return orphans;
}

CoverSolution make_solution(const CandidateSet& cs, std::vector<int> picked,
                            CoverAlgorithm algorithm) {
  const int n = static_cast<int>(cs.points.size());
  CoverSolution sol;
  sol.algorithm = algorithm;
  sol.selected_indices = picked;
  std::vector<char> covered(n, 0);
  for (int idx : picked) {
    sol.selected.push_back(cs.boxes[idx]);
    std::vector<int> ids = cs.member_ids(idx);
    std::sort(ids.begin(), ids.end());
    sol.members.push_back(std::move(ids));
    for (int pos : cs.box_members[idx]) covered[pos] = 1;
  }
  for (int p = 0; p < n; ++p)
    (covered[p] ? sol.covered_ids : sol.uncovered_ids).push_back(cs.points[p].id);
  std::sort(sol.covered_ids.begin(), sol.covered_ids.end());
  std::sort(sol.uncovered_ids.begin(), sol.uncovered_ids.end());
  sol.coverage = static_cast<double>(sol.covered_ids.size()) / n;
  return sol;
}

CoverSolution greedy_run(const CandidateSet& cs, int max_boxes,
                         bool require_full) {
  const int n = static_cast<int>(cs.points.size());
  const int r = static_cast<int>(cs.boxes.size());
  if (require_full) {
    const std::vector<int> orphans = orphan_ids(cs);
    if (!orphans.empty())
      throw std::invalid_argument("no candidate box covers point ids: " +
                                  join_ids(orphans));
  }
  std::vector<char> covered(n, 0);
  std::vector<int> gain(r);
  for (int b = 0; b < r; ++b) gain[b] = static_cast<int>(cs.box_members[b].size());

  std::vector<int> picked;
  int remaining = n;
  while (remaining > 0 &&
         (max_boxes < 0 || static_cast<int>(picked.size()) < max_boxes)) {
    int best = -1;
    int best_gain = 0;
    for (int b = 0; b < r; ++b) {
      if (gain[b] > best_gain) {  // strict: ties go to the lowest index
        best_gain = gain[b];
        best = b;
      }
    }
    if (best < 0) break;
    picked.push_back(best);
    for (int pos : cs.box_members[best]) {
      if (covered[pos]) continue;
      covered[pos] = 1;
      --remaining;
      for (int b2 : cs.point_boxes[pos]) --gain[b2];
    }
  }
  return make_solution(cs, std::move(picked), CoverAlgorithm::greedy_all);
}

// ---------------------------------------------------------------------------
// Exact search on bitmask instances (at most 64 points).

struct ExactInstance {
  int n = 0;
  std::uint64_t full = 0;
  std::vector<std::uint64_t> masks;
  std::vector<std::uint64_t> suffix_or;       // union of masks[i..)
  std::vector<std::vector<int>> covers;       // per point: boxes covering it
  int max_popcount = 0;
  std::unordered_map<std::uint64_t, bool> memo;

  explicit ExactInstance(const CandidateSet& cs) {
    n = static_cast<int>(cs.points.size());
    const int r = static_cast<int>(cs.boxes.size());
    full = (n == 64) ? ~0ull : ((1ull << n) - 1);
    masks.resize(r, 0);
    covers.assign(n, {});
    for (int b = 0; b < r; ++b) {
      for (int pos : cs.box_members[b]) {
        masks[b] |= 1ull << pos;
        covers[pos].push_back(b);
      }
      max_popcount = std::max(max_popcount, std::popcount(masks[b]));
    }
    suffix_or.assign(r + 1, 0);
    for (int b = r - 1; b >= 0; --b) suffix_or[b] = suffix_or[b + 1] | masks[b];
  }

  // Can `uncov` be covered with at most `budget` boxes of index >= min_index?
  bool exists(std::uint64_t uncov, int budget, int min_index) {
    if (uncov == 0) return true;
    if (budget <= 0) return false;
    if ((suffix_or[min_index] & uncov) != uncov) return false;
    if (std::popcount(uncov) > budget * max_popcount) return false;
    const bool memoizable = budget <= 15 && min_index < 4096 && n <= 48;
    std::uint64_t key = 0;
    if (memoizable) {
      key = uncov | (static_cast<std::uint64_t>(budget) << 48) |
            (static_cast<std::uint64_t>(min_index) << 52);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    const int p = std::countr_zero(uncov);
    bool found = false;
    for (int idx : covers[p]) {
      if (idx < min_index) continue;
      if (exists(uncov & ~masks[idx], budget - 1, min_index)) {
        found = true;
        break;
      }
    }
    if (memoizable) memo.emplace(key, found);
    return found;
  }

  int min_cover_size() {
    const int lower =
        std::max(1, (n + max_popcount - 1) / std::max(1, max_popcount));
    for (int m = lower;; ++m)
      if (exists(full, m, 0)) return m;
  }

  // Lexicographically smallest index set of the given (minimal) size.
  std::vector<int> lex_smallest_cover(int m) {
    std::vector<int> out;
    std::uint64_t uncov = full;
    int last = -1;
    for (int pos = 0; pos < m; ++pos) {
      const int rem = m - pos - 1;
      for (int idx = last + 1; idx < static_cast<int>(masks.size()); ++idx) {
        if ((masks[idx] & uncov) == 0) continue;
        if (exists(uncov & ~masks[idx], rem, idx + 1)) {
          out.push_back(idx);
          uncov &= ~masks[idx];
          last = idx;
          break;
        }
      }
    }
    if (uncov != 0) throw std::logic_error("exact cover reconstruction failed");
    return out;
  }
};

double binomial_count(int r, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * (r - i) / (i + 1);
  return c;
}

}  // namespace

CandidateSet candidate_boxes_centered(const std::vector<ParamPoint>& points,
                                      const Eigen::VectorXd& tolerances) {
  validate_instance(points, tolerances);
  CandidateSet cs;
  cs.mode = CandidateMode::centered;
  cs.points = points;
  cs.id_to_position = index_ids(points);
  cs.boxes.reserve(points.size());
  for (const ParamPoint& p : points)
    cs.boxes.push_back(ToleranceBox{p.coords, tolerances});
  build_incidence(cs);
  return cs;
}

CandidateSet candidate_boxes_combinatorial(const std::vector<ParamPoint>& points,
                                           const Eigen::VectorXd& tolerances,
                                           double cap) {
  validate_instance(points, tolerances);
  const int n = static_cast<int>(points.size());
  const int d = static_cast<int>(tolerances.size());
  if (std::pow(2.0 * n, d) > cap) {
    std::ostringstream os;
    os << "candidate cap exceeded: (2n)^d = " << std::pow(2.0 * n, d)
       << " with n = " << n << ", d = " << d << " exceeds cap " << cap;
    throw SizeCapError(os.str());
  }

  // Per dimension: interval centers c -/+ s/2 for every point coordinate c,
  // deduplicated by exact equality.
  std::vector<std::vector<double>> centers(d);
  for (int i = 0; i < d; ++i) {
    const double half = 0.5 * tolerances[i];
    centers[i].reserve(2 * points.size());
    for (const ParamPoint& p : points) {
      centers[i].push_back(p.coords[i] - half);
      centers[i].push_back(p.coords[i] + half);
    }
    std::sort(centers[i].begin(), centers[i].end());
    centers[i].erase(std::unique(centers[i].begin(), centers[i].end()),
                     centers[i].end());
  }

  CandidateSet cs;
  cs.mode = CandidateMode::combinatorial;
  cs.points = points;
  cs.id_to_position = index_ids(points);
  std::vector<std::size_t> odo(d, 0);
  while (true) {
    Eigen::VectorXd c(d);
    for (int i = 0; i < d; ++i) c[i] = centers[i][odo[i]];
    cs.boxes.push_back(ToleranceBox{std::move(c), tolerances});
    int i = d - 1;
    while (i >= 0 && ++odo[i] == centers[i].size()) odo[i--] = 0;
    if (i < 0) break;
  }
  build_incidence(cs);
  return cs;
}

CoverSolution greedy_cover_all(const CandidateSet& candidates) {
  CoverSolution sol = greedy_run(candidates, -1, true);
  sol.algorithm = CoverAlgorithm::greedy_all;
  return sol;
}

CoverSolution greedy_cover_k(const CandidateSet& candidates, int k) {
  if (k < 1) throw std::invalid_argument("invalid k");
  CoverSolution sol = greedy_run(candidates, k, false);
  sol.algorithm = CoverAlgorithm::greedy_k;
  return sol;
}

double shifting_epsilon(int l, int d) {
  return std::pow(1.0 + 1.0 / l, d) - 1.0;
}

namespace {

constexpr int kBlockPointCap = 48;

std::vector<ToleranceBox> solve_block_exact(const std::vector<ParamPoint>& block_points,
                                            const Eigen::VectorXd& tolerances) {
  if (static_cast<int>(block_points.size()) > kBlockPointCap) {
    throw SizeCapError(
        "shifting block holds " + std::to_string(block_points.size()) +
        " points, above the exact-solver cap of " +
        std::to_string(kBlockPointCap) + "; increase tolerances or reduce l");
  }
  CandidateSet cs =
      candidate_boxes_combinatorial(block_points, tolerances, 1e9);
  ExactInstance inst(cs);
  const int m = inst.min_cover_size();
  std::vector<ToleranceBox> out;
  for (int idx : inst.lex_smallest_cover(m)) out.push_back(cs.boxes[idx]);
  return out;
}

}  // namespace

CoverSolution shifting_cover_2d(const std::vector<ParamPoint>& points,
                                const Eigen::VectorXd& tolerances, int l) {
  validate_instance(points, tolerances);
  if (tolerances.size() != 2)
    throw std::invalid_argument("shifting implemented for d=2 only");
  if (l < 1) throw std::invalid_argument("invalid l");

  const int n = static_cast<int>(points.size());
  Eigen::Vector2d anchor = points.front().coords.head<2>();
  for (const ParamPoint& p : points)
    anchor = anchor.cwiseMin(p.coords.head<2>().eval());

  // Grid cell indices per point (nonnegative since anchored at the minimum).
  std::vector<std::array<int, 2>> cell(n);
  for (int p = 0; p < n; ++p)
    for (int i = 0; i < 2; ++i)
      cell[p][i] = static_cast<int>(
          std::floor((points[p].coords[i] - anchor[i]) / tolerances[i]));

  std::vector<ToleranceBox> best;
  bool have_best = false;
  for (int ox = 0; ox < l; ++ox) {
    for (int oy = 0; oy < l; ++oy) {
      std::map<std::pair<int, int>, std::vector<int>> blocks;
      for (int p = 0; p < n; ++p)
        blocks[{(cell[p][0] + ox) / l, (cell[p][1] + oy) / l}].push_back(p);

      std::vector<ToleranceBox> chosen;
      for (const auto& [key, positions] : blocks) {
        std::vector<ParamPoint> block_points;
        block_points.reserve(positions.size());
        for (int p : positions) block_points.push_back(points[p]);
        for (ToleranceBox& b : solve_block_exact(block_points, tolerances))
          chosen.push_back(std::move(b));
      }
      if (!have_best || chosen.size() < best.size()) {
        best = std::move(chosen);
        have_best = true;
      }
    }
  }

  // Union semantics: identical boxes selected by different blocks collapse.
  std::vector<ToleranceBox> selected;
  for (const ToleranceBox& b : best) {
    bool dup = false;
    for (const ToleranceBox& s : selected)
      if (s.center == b.center) {
        dup = true;
        break;
      }
    if (!dup) selected.push_back(b);
  }

  CoverSolution sol;
  sol.algorithm = CoverAlgorithm::shifting;
  sol.selected = std::move(selected);
  for (const ToleranceBox& b : sol.selected) {
    std::vector<int> ids;
    for (const ParamPoint& p : points)
      if (b.contains(p.coords)) ids.push_back(p.id);
    std::sort(ids.begin(), ids.end());
    sol.members.push_back(std::move(ids));
  }
  for (const ParamPoint& p : points) sol.covered_ids.push_back(p.id);
  std::sort(sol.covered_ids.begin(), sol.covered_ids.end());
  sol.coverage = 1.0;
  return sol;
}

CoverSolution exact_min_cover(const CandidateSet& candidates,
                              const OracleLimits& limits) {
  const int n = static_cast<int>(candidates.points.size());
  const int r = static_cast<int>(candidates.boxes.size());
  if (n > limits.max_points || r > limits.max_boxes) {
    throw SizeCapError("oracle size cap exceeded: " + std::to_string(n) +
                       " points, " + std::to_string(r) + " boxes (caps " +
                       std::to_string(limits.max_points) + ", " +
                       std::to_string(limits.max_boxes) + ")");
  }
  const std::vector<int> orphans = orphan_ids(candidates);
  if (!orphans.empty())
    throw std::invalid_argument("no candidate box covers point ids: " +
                                join_ids(orphans));
  ExactInstance inst(candidates);
  const int m = inst.min_cover_size();
  return make_solution(candidates, inst.lex_smallest_cover(m),
                       CoverAlgorithm::oracle_min);
}

CoverSolution exact_max_coverage(const CandidateSet& candidates, int k,
                                 const OracleLimits& limits) {
  if (k < 1) throw std::invalid_argument("invalid k");
  const int n = static_cast<int>(candidates.points.size());
  const int r = static_cast<int>(candidates.boxes.size());
  const int k_eff = std::min(k, r);
  if (n > limits.max_points || r > limits.max_boxes || k_eff > limits.max_k ||
      binomial_count(r, k_eff) > limits.max_subsets) {
    throw SizeCapError("oracle size cap exceeded: " + std::to_string(n) +
                       " points, " + std::to_string(r) + " boxes, k = " +
                       std::to_string(k_eff));
  }
  ExactInstance inst(candidates);

  std::vector<int> best_combo;
  int best_count = -1;
  std::vector<int> combo;
  // Lexicographic DFS over k_eff-subsets; first subset among maxima wins.
  auto dfs = [&](auto&& self, int start, std::uint64_t covered) -> void {
    if (best_count == n) return;
    if (static_cast<int>(combo.size()) == k_eff) {
      const int count = std::popcount(covered);
      if (count > best_count) {
        best_count = count;
        best_combo = combo;
      }
      return;
    }
    // Upper bound: even with everything remaining we cannot strictly improve.
    if (std::popcount(covered | inst.suffix_or[start]) <= best_count) return;
    const int slots = k_eff - static_cast<int>(combo.size());
    for (int idx = start; idx <= r - slots; ++idx) {
      combo.push_back(idx);
      self(self, idx + 1, covered | inst.masks[idx]);
      combo.pop_back();
      if (best_count == n) return;
    }
  };
  dfs(dfs, 0, 0);
  return make_solution(candidates, std::move(best_combo),
                       CoverAlgorithm::oracle_max_k);
}

}  // namespace sizecover
