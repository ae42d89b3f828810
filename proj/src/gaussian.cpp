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

#include "sizecover/gaussian.hpp"

#include <Eigen/Dense>
#include <stdexcept>

#include "sizecover/rng.hpp"

namespace sizecover {

namespace {

struct CovarianceEigen {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;
};

CovarianceEigen decompose(const GaussianModel& model) {
  const Eigen::Index d = model.mean.size();
  if (model.covariance.rows() != d || model.covariance.cols() != d)
    throw std::invalid_argument("dimension mismatch");
  if (!model.covariance.isApprox(model.covariance.transpose(), 1e-10))
    throw std::invalid_argument("covariance not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.covariance);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("covariance not positive semi-definite");
  return {es.eigenvectors(), es.eigenvalues()};
}

Eigen::MatrixXd sqrt_from(const CovarianceEigen& eig) {
  return eig.vectors *
         eig.values.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         eig.vectors.transpose();
}

}  // namespace

GaussianModel gaussian_fit(const std::vector<ParamPoint>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("gaussian_fit requires at least 2 points");
  const Eigen::Index d = points.front().coords.size();
  for (const ParamPoint& p : points)
    if (p.coords.size() != d) throw std::invalid_argument("dimension mismatch");

  const double n = static_cast<double>(points.size());
  GaussianModel model;
  model.mean = Eigen::VectorXd::Zero(d);
  for (const ParamPoint& p : points) model.mean += p.coords;
  model.mean /= n;
  model.covariance = Eigen::MatrixXd::Zero(d, d);
  for (const ParamPoint& p : points) {
    const Eigen::VectorXd c = p.coords - model.mean;
    model.covariance += c * c.transpose();
  }
  model.covariance /= n;  // maximum-likelihood normalization
  return model;
}

Eigen::MatrixXd covariance_sqrt(const GaussianModel& model) {
  return sqrt_from(decompose(model));
}

double mahalanobis(const GaussianModel& model, const Eigen::VectorXd& x) {
  const CovarianceEigen eig = decompose(model);
  if (eig.values.minCoeff() <= 0.0)
    throw std::invalid_argument("degenerate ellipsoid");
  const Eigen::VectorXd y = eig.vectors.transpose() * (x - model.mean);
  return std::sqrt((y.array().square() / eig.values.array()).sum());
}

std::vector<ParamPoint> gaussian_sample(const GaussianModel& model, int count,
                                        std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("invalid count");
  const Eigen::MatrixXd root = covariance_sqrt(model);
  const Eigen::Index d = model.mean.size();
  Rng rng(seed);
  std::vector<ParamPoint> samples;
  samples.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd z(d);
    for (Eigen::Index j = 0; j < d; ++j) z[j] = rng.normal();
    samples.push_back(ParamPoint{i, model.mean + root * z});
  }
  return samples;
}

std::vector<ParamPoint> level_set_sample(const GaussianModel& model, double c,
                                         int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("invalid count");
  if (c < 0.0) throw std::invalid_argument("level must be non-negative");
  const CovarianceEigen eig = decompose(model);
  if (eig.values.minCoeff() <= 0.0 ||
      eig.values.minCoeff() < 1e-14 * eig.values.maxCoeff())
    throw std::invalid_argument("degenerate ellipsoid");
  const Eigen::MatrixXd root = sqrt_from(eig);
  const Eigen::Index d = model.mean.size();
  Rng rng(seed);
  std::vector<ParamPoint> samples;
  samples.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd u(d);
    double norm = 0.0;
    do {
      for (Eigen::Index j = 0; j < d; ++j) u[j] = rng.normal();
      norm = u.norm();
    } while (norm < 1e-12);
    samples.push_back(ParamPoint{i, model.mean + root * (u * (c / norm))});
  }
  return samples;
}

}  // namespace sizecover
