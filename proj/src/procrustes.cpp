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

#include "sizecover/procrustes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "sizecover/error.hpp"
#include "sizecover/rng.hpp"

namespace sizecover {

namespace {

Eigen::Vector3d centroid(const Eigen::Matrix3Xd& v) {
  return v.rowwise().mean();
}

ParameterizedMesh centered_copy(const ParameterizedMesh& mesh) {
  ParameterizedMesh out = mesh;
  out.vertices.colwise() -= centroid(mesh.vertices);
  return out;
}

// At least three vertices spanning a plane are required for a unique
// rotation; a rank-deficient configuration leaves it underdetermined.
void require_nondegenerate(const Eigen::Matrix3Xd& centered) {
  if (centered.cols() < 3) throw std::invalid_argument("degenerate configuration");
  Eigen::JacobiSVD<Eigen::Matrix3Xd> svd(centered);
  const auto& s = svd.singularValues();
  if (s[0] <= 0.0 || s[1] <= 1e-12 * s[0])
    throw std::invalid_argument("degenerate configuration");
}

}  // namespace

AlignmentResult rigid_align(const ParameterizedMesh& source,
                            const ParameterizedMesh& target) {
  if (source.vertices.cols() != target.vertices.cols())
    throw DataError("topology mismatch between meshes " +
                    std::to_string(source.id) + " and " +
                    std::to_string(target.id));
  const Eigen::Vector3d sc = centroid(source.vertices);
  const Eigen::Vector3d tc = centroid(target.vertices);
  const Eigen::Matrix3Xd s = source.vertices.colwise() - sc;
  const Eigen::Matrix3Xd t = target.vertices.colwise() - tc;
  require_nondegenerate(s);
  require_nondegenerate(t);

  const Eigen::Matrix3d cross = t * s.transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU();
  const Eigen::Matrix3d v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) u.col(2) = -u.col(2);

  AlignmentResult result;
  result.transform.rotation = u * v.transpose();
  result.transform.translation = tc - result.transform.rotation * sc;
  result.aligned = source;
  result.aligned.vertices = result.transform.apply(source.vertices);
  result.residual = (result.aligned.vertices - target.vertices).squaredNorm();
  return result;
}

GpaResult procrustes_mean_detailed(const std::vector<ParameterizedMesh>& meshes,
                                   const GpaOptions& options) {
  if (meshes.empty()) throw std::invalid_argument("empty input");
  for (const ParameterizedMesh& m : meshes)
    if (!same_topology(m, meshes.front()))
      throw DataError("topology mismatch between meshes " +
                      std::to_string(meshes.front().id) + " and " +
                      std::to_string(m.id));

  GpaResult result;
  ParameterizedMesh mean = centered_copy(meshes.front());
  std::vector<ParameterizedMesh> aligned(meshes.begin(), meshes.end());

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    double objective = 0.0;
    for (std::size_t i = 0; i < meshes.size(); ++i) {
      AlignmentResult a = rigid_align(meshes[i], mean);
      objective += a.residual;
      aligned[i] = std::move(a.aligned);
    }
    result.objective_history.push_back(objective);

    Eigen::Matrix3Xd avg = Eigen::Matrix3Xd::Zero(3, mean.vertices.cols());
    for (const ParameterizedMesh& m : aligned) avg += m.vertices;
    avg /= static_cast<double>(aligned.size());
    avg.colwise() -= avg.rowwise().mean().eval();

    const double displacement =
        (avg - mean.vertices).colwise().norm().maxCoeff();
    mean.vertices = std::move(avg);
    result.iterations = iter;
    if (displacement < options.tolerance_m) {
      result.converged = true;
      break;
    }
  }
  mean.id = meshes.front().id;
  result.mean = std::move(mean);
  return result;
}

ParameterizedMesh procrustes_mean(const std::vector<ParameterizedMesh>& meshes,
                                  const GpaOptions& options) {
  return procrustes_mean_detailed(meshes, options).mean;
}

DesignModelReport design_models_detailed(
    const std::vector<ParameterizedMesh>& corpus, const CoverSolution& solution,
    const MeasurementSpec& spec, const DesignModelOptions& options) {
  if (options.min_members < 1) throw std::invalid_argument("invalid min_members");
  std::unordered_map<int, const ParameterizedMesh*> by_id;
  for (const ParameterizedMesh& m : corpus) by_id.emplace(m.id, &m);

  DesignModelReport report;
  for (std::size_t b = 0; b < solution.selected.size(); ++b) {
    const ToleranceBox& box = solution.selected[b];
    std::vector<ParameterizedMesh> shapes;
    shapes.reserve(solution.members[b].size());
    for (int id : solution.members[b]) {
      auto it = by_id.find(id);
      if (it == by_id.end())
        throw DataError("unknown member id " + std::to_string(id));
      shapes.push_back(*it->second);
    }

    bool sufficient = static_cast<int>(shapes.size()) >= options.min_members;
    if (sufficient) {
      Eigen::VectorXd mean_meas = Eigen::VectorXd::Zero(box.center.size());
      for (const ParameterizedMesh& m : shapes) mean_meas += measure(m, spec).coords;
      mean_meas /= static_cast<double>(shapes.size());
      sufficient = ((mean_meas - box.center).cwiseAbs().array() <=
                    options.center_tolerance_fraction * 0.5 *
                        box.side_lengths.array())
                       .all();
    }

    if (!sufficient) {
      if (!options.extrapolate)
        throw DataError(
            "box " + std::to_string(b) +
            " has too few or off-center members and no extrapolation hook; "
            "enable extrapolation to synthesize substitute shapes");
      Rng rng(Rng::derive(options.seed, b));
      std::vector<ParamPoint> samples;
      samples.reserve(options.extrapolation_count);
      for (int j = 0; j < options.extrapolation_count; ++j) {
        ParamPoint p;
        p.id = -(j + 1);
        p.coords.resize(box.center.size());
        for (Eigen::Index i = 0; i < box.center.size(); ++i)
          p.coords[i] = rng.uniform(box.center[i] - 0.5 * box.side_lengths[i],
                                    box.center[i] + 0.5 * box.side_lengths[i]);
        samples.push_back(std::move(p));
      }
      for (ParameterizedMesh& m : options.extrapolate(samples))
        shapes.push_back(std::move(m));
    }

    GpaResult gpa = procrustes_mean_detailed(shapes);
    gpa.mean.id = static_cast<int>(b);
    report.models.push_back(std::move(gpa.mean));
    report.extrapolated.push_back(!sufficient);
    report.gpa_iterations.push_back(gpa.iterations);
    report.gpa_converged.push_back(gpa.converged);
  }
  return report;
}

std::vector<ParameterizedMesh> design_models(
    const std::vector<ParameterizedMesh>& corpus, const CoverSolution& solution,
    const MeasurementSpec& spec, const DesignModelOptions& options) {
  return design_models_detailed(corpus, solution, spec, options).models;
}

}  // namespace sizecover
