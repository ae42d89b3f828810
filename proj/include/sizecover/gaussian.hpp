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
#include <vector>

#include "sizecover/param_space.hpp"

namespace sizecover {

/// Multivariate Gaussian over measurement space.
struct GaussianModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  int dimension() const { return static_cast<int>(mean.size()); }
};

/// Maximum-likelihood fit: sample mean and 1/n covariance.
GaussianModel gaussian_fit(const std::vector<ParamPoint>& points);

/// Symmetric PSD square root of the covariance (eigendecomposition based).
Eigen::MatrixXd covariance_sqrt(const GaussianModel& model);

/// Mahalanobis distance of x from the model mean. Requires an invertible
/// covariance.
double mahalanobis(const GaussianModel& model, const Eigen::VectorXd& x);

/// Draws from the Gaussian: mean + sqrt(covariance) * z with z standard
/// normal. Deterministic for a fixed seed; sample ids are 0..count-1.
std::vector<ParamPoint> gaussian_sample(const GaussianModel& model, int count,
                                        std::uint64_t seed);

/// Points on the equal-density ellipsoid at Mahalanobis radius c: a
/// direction uniform on the unit sphere, mapped through the covariance
/// square root and scaled to radius c. Requires a strictly positive
/// definite covariance.
std::vector<ParamPoint> level_set_sample(const GaussianModel& model, double c,
                                         int count, std::uint64_t seed);

}  // namespace sizecover
