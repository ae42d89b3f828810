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
#include <array>
#include <vector>

#include "sizecover/mesh.hpp"
#include "sizecover/param_space.hpp"

namespace sizecover {

/// Linear shape space over a corresponded corpus. Meshes are stacked as
/// 3V-vectors in vertex-major order (x0,y0,z0,x1,...), each mesh centered
/// (centroid removed) before stacking. Variances use the 1/n convention.
struct ShapeBasis {
  Eigen::VectorXd mean_shape;  // 3V
  Eigen::MatrixXd basis;       // 3V x p, orthonormal columns
  Eigen::VectorXd variances;   // p, descending
  std::vector<std::array<int, 3>> faces;
  std::vector<int> landmarks;

  int num_vertices() const { return static_cast<int>(mean_shape.size()) / 3; }
  int num_components() const { return static_cast<int>(variances.size()); }
};

/// Fits the shape space, retaining the smallest number of components whose
/// cumulative variance reaches variance_fraction of the total.
ShapeBasis pca_fit(const std::vector<ParameterizedMesh>& corpus,
                   double variance_fraction = 0.99);

/// Component weights of a mesh: basis' * (stacked - mean).
Eigen::VectorXd pca_project(const ShapeBasis& basis, const ParameterizedMesh& mesh);

/// Mesh from component weights: basis * weights + mean, with the corpus
/// topology and landmarks.
ParameterizedMesh pca_reconstruct(const ShapeBasis& basis,
                                  const Eigen::VectorXd& weights);

enum class FeatureFitMode {
  affine,  // weights ~ M * [measurements; 1]
  linear,  // weights ~ M * measurements (offset column forced to zero)
};

/// Least-squares map from measurement vectors to component weights. The
/// matrix is p x (d+1); the last column is the offset (zero in linear mode).
struct FeatureMap {
  Eigen::MatrixXd matrix;
  FeatureFitMode mode = FeatureFitMode::affine;

  int dimension() const { return static_cast<int>(matrix.cols()) - 1; }
  int num_components() const { return static_cast<int>(matrix.rows()); }
};

FeatureMap feature_fit(const std::vector<ParamPoint>& points,
                       const std::vector<Eigen::VectorXd>& weights,
                       FeatureFitMode mode = FeatureFitMode::affine);

Eigen::VectorXd feature_apply(const FeatureMap& fmap, const Eigen::VectorXd& point);

/// New shape for a new measurement point: reconstruct(basis, fmap([P;1])).
ParameterizedMesh synthesize(const ShapeBasis& basis, const FeatureMap& fmap,
                             const ParamPoint& point);

}  // namespace sizecover
