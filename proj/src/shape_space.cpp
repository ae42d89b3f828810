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

#include "sizecover/shape_space.hpp"

#include <Eigen/Dense>
#include <stdexcept>

#include "sizecover/error.hpp"

namespace sizecover {

namespace {

// Stacks the centered mesh as (x0,y0,z0,x1,...); column-major 3xV memory
// already has that layout.
Eigen::VectorXd stack_centered(const ParameterizedMesh& mesh) {
  Eigen::Matrix3Xd v = mesh.vertices;
  v.colwise() -= v.rowwise().mean().eval();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

}  // namespace

ShapeBasis pca_fit(const std::vector<ParameterizedMesh>& corpus,
                   double variance_fraction) {
  if (corpus.size() < 2)
    throw std::invalid_argument("pca_fit requires at least 2 meshes");
  if (!(variance_fraction > 0.0) || variance_fraction > 1.0)
    throw std::invalid_argument("variance fraction must be in (0, 1]");
  for (const ParameterizedMesh& m : corpus)
    if (!same_topology(m, corpus.front()))
      throw DataError("topology mismatch between meshes " +
                      std::to_string(corpus.front().id) + " and " +
                      std::to_string(m.id));

  const int n = static_cast<int>(corpus.size());
  const Eigen::Index dim = 3 * corpus.front().vertices.cols();
  Eigen::MatrixXd data(dim, n);
  for (int i = 0; i < n; ++i) data.col(i) = stack_centered(corpus[i]);

  ShapeBasis basis;
  basis.faces = corpus.front().faces;
  basis.landmarks = corpus.front().landmarks;
  basis.mean_shape = data.rowwise().mean();
  data.colwise() -= basis.mean_shape;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinU);
  const Eigen::VectorXd& sigma = svd.singularValues();

  // Numerical rank: centered data has rank <= n-1.
  int rank = 0;
  const double cutoff = sigma.size() ? sigma[0] * 1e-12 : 0.0;
  while (rank < sigma.size() && sigma[rank] > cutoff && rank < n - 1) ++rank;

  double total = 0.0;
  for (int j = 0; j < rank; ++j) total += sigma[j] * sigma[j];
  int p = 0;
  double cum = 0.0;
  while (p < rank && cum < variance_fraction * total - 1e-12 * total) {
    cum += sigma[p] * sigma[p];
    ++p;
  }

  basis.basis = svd.matrixU().leftCols(p);
  basis.variances.resize(p);
  for (int j = 0; j < p; ++j) basis.variances[j] = sigma[j] * sigma[j] / n;
  return basis;
}

Eigen::VectorXd pca_project(const ShapeBasis& basis,
                            const ParameterizedMesh& mesh) {
  if (3 * mesh.vertices.cols() != basis.mean_shape.size())
    throw std::invalid_argument("dimension mismatch");
  return basis.basis.transpose() * (stack_centered(mesh) - basis.mean_shape);
}

ParameterizedMesh pca_reconstruct(const ShapeBasis& basis,
                                  const Eigen::VectorXd& weights) {
  if (weights.size() != basis.num_components())
    throw std::invalid_argument("wrong weight length: expected " +
                                std::to_string(basis.num_components()));
  const Eigen::VectorXd x = basis.basis * weights + basis.mean_shape;
  ParameterizedMesh mesh;
  mesh.id = -1;
  mesh.vertices =
      Eigen::Map<const Eigen::Matrix3Xd>(x.data(), 3, basis.num_vertices());
  mesh.faces = basis.faces;
  mesh.landmarks = basis.landmarks;
  return mesh;
}

FeatureMap feature_fit(const std::vector<ParamPoint>& points,
                       const std::vector<Eigen::VectorXd>& weights,
                       FeatureFitMode mode) {
  if (points.size() != weights.size())
    throw std::invalid_argument("points and weights counts differ");
  if (points.empty()) throw std::invalid_argument("empty input");
  const int n = static_cast<int>(points.size());
  const int d = static_cast<int>(points.front().coords.size());
  const int p = static_cast<int>(weights.front().size());
  if (n < d + 1) throw std::invalid_argument("underdetermined feature map");
  for (const ParamPoint& pt : points)
    if (pt.coords.size() != d) throw std::invalid_argument("dimension mismatch");
  for (const Eigen::VectorXd& w : weights)
    if (w.size() != p) throw std::invalid_argument("dimension mismatch");

  const int cols = (mode == FeatureFitMode::affine) ? d + 1 : d;
  Eigen::MatrixXd design(n, cols);  // rows: [P; 1] per subject
  Eigen::MatrixXd target(n, p);
  for (int i = 0; i < n; ++i) {
    design.row(i).head(d) = points[i].coords.transpose();
    if (mode == FeatureFitMode::affine) design(i, d) = 1.0;
    target.row(i) = weights[i].transpose();
  }

  // Minimum-norm least squares via SVD.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(design,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::MatrixXd solution = svd.solve(target);  // cols x p

  FeatureMap fmap;
  fmap.mode = mode;
  fmap.matrix = Eigen::MatrixXd::Zero(p, d + 1);
  fmap.matrix.leftCols(cols) = solution.transpose();
  return fmap;
}

Eigen::VectorXd feature_apply(const FeatureMap& fmap,
                              const Eigen::VectorXd& point) {
  if (point.size() != fmap.dimension())
    throw std::invalid_argument("dimension mismatch");
  Eigen::VectorXd augmented(point.size() + 1);
  augmented << point, 1.0;
  return fmap.matrix * augmented;
}

ParameterizedMesh synthesize(const ShapeBasis& basis, const FeatureMap& fmap,
                             const ParamPoint& point) {
  ParameterizedMesh mesh =
      pca_reconstruct(basis, feature_apply(fmap, point.coords));
  mesh.id = point.id;
  return mesh;
}

}  // namespace sizecover
