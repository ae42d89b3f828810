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
#include <string>
#include <vector>

#include "sizecover/param_space.hpp"

namespace sizecover {

/// A corresponded triangle mesh: every mesh in a corpus shares the vertex
/// count, triangulation, and landmark vertex list, so vertex i means the
/// same anatomical location on every subject.
struct ParameterizedMesh {
  int id = 0;
  Eigen::Matrix3Xd vertices;               // columns are vertices, meters
  std::vector<std::array<int, 3>> faces;   // vertex-index triples
  std::vector<int> landmarks;              // landmark vertex indices
};

/// One designer measurement: the Euclidean distance between two landmarks,
/// with the product's adjustment tolerance along that dimension.
struct MeasurementDef {
  std::string name;
  int landmark_a = 0;  // indices into ParameterizedMesh::landmarks
  int landmark_b = 0;
  double tolerance_m = 0.0;
};

struct MeasurementSpec {
  std::vector<MeasurementDef> entries;

  int dimension() const { return static_cast<int>(entries.size()); }

  Eigen::VectorXd tolerances() const {
    Eigen::VectorXd t(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) t[i] = entries[i].tolerance_m;
    return t;
  }
};

/// Proper rigid motion (rotation with determinant +1, then translation).
struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Matrix3Xd apply(const Eigen::Matrix3Xd& v) const {
    return (rotation * v).colwise() + translation;
  }
};

bool same_topology(const ParameterizedMesh& a, const ParameterizedMesh& b);

/// Throws DataError if indices are out of range or coordinates non-finite.
void validate_mesh(const ParameterizedMesh& mesh);

/// Throws if an entry references a landmark outside [0, L) or a_b collide
/// or a tolerance is nonpositive.
void validate_spec(const MeasurementSpec& spec, int landmark_count);

/// Landmark-pair distances of a mesh, as a point in measurement space.
ParamPoint measure(const ParameterizedMesh& mesh, const MeasurementSpec& spec);

}  // namespace sizecover
