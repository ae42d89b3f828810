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

#include <cstdint>
#include <functional>
#include <vector>

#include "sizecover/mesh.hpp"
#include "sizecover/param_space.hpp"

namespace sizecover {

struct AlignmentResult {
  RigidTransform transform;
  ParameterizedMesh aligned;
  double residual = 0.0;  // sum of squared vertex distances to the target
};

/// Least-squares rigid superimposition of source onto target (rotation and
/// translation only, no scaling): center both vertex sets, rotate by the
/// closest proper rotation to the cross-covariance, recover the translation.
AlignmentResult rigid_align(const ParameterizedMesh& source,
                            const ParameterizedMesh& target);

struct GpaOptions {
  double tolerance_m = 1e-9;  // max vertex displacement of the mean
  int max_iterations = 100;
};

struct GpaResult {
  ParameterizedMesh mean;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_history;  // non-increasing
};

/// Mean shape under per-shape rigid superimposition, by alternating
/// averaging and alignment until the mean stops moving. The returned mean
/// is centered (vertex centroid at the origin).
GpaResult procrustes_mean_detailed(const std::vector<ParameterizedMesh>& meshes,
                                   const GpaOptions& options = {});

ParameterizedMesh procrustes_mean(const std::vector<ParameterizedMesh>& meshes,
                                  const GpaOptions& options = {});

/// Synthesis callback used when a box has too few or off-center members;
/// maps sampled measurement points to substitute shapes.
using ExtrapolationHook =
    std::function<std::vector<ParameterizedMesh>(const std::vector<ParamPoint>&)>;

struct DesignModelOptions {
  int min_members = 3;
  double center_tolerance_fraction = 0.5;
  int extrapolation_count = 20;  // points sampled uniformly in a sparse box
  std::uint64_t seed = 0;
  ExtrapolationHook extrapolate;  // empty: sparse boxes are an error
};

struct DesignModelReport {
  std::vector<ParameterizedMesh> models;  // one per selected box, in order
  std::vector<bool> extrapolated;         // per box: fallback path taken
  std::vector<int> gpa_iterations;
  std::vector<bool> gpa_converged;
};

/// Converts each selected box back into a representative shape: the mean
/// shape of its member subjects, or of members plus synthesized substitutes
/// when the box is sparse or its members sit far from the box center.
DesignModelReport design_models_detailed(
    const std::vector<ParameterizedMesh>& corpus, const CoverSolution& solution,
    const MeasurementSpec& spec, const DesignModelOptions& options = {});

std::vector<ParameterizedMesh> design_models(
    const std::vector<ParameterizedMesh>& corpus, const CoverSolution& solution,
    const MeasurementSpec& spec, const DesignModelOptions& options = {});

}  // namespace sizecover
