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

#include "sizecover/mesh.hpp"

#include <stdexcept>

#include "sizecover/error.hpp"

namespace sizecover {

bool same_topology(const ParameterizedMesh& a, const ParameterizedMesh& b) {
  return a.vertices.cols() == b.vertices.cols() && a.faces == b.faces &&
         a.landmarks == b.landmarks;
}

void validate_mesh(const ParameterizedMesh& mesh) {
  const int v = static_cast<int>(mesh.vertices.cols());
  if (v == 0) throw DataError("mesh " + std::to_string(mesh.id) + " has no vertices");
  if (!mesh.vertices.allFinite())
    throw DataError("mesh " + std::to_string(mesh.id) +
                    " has non-finite coordinates");
  for (const auto& f : mesh.faces)
    for (int idx : f)
      if (idx < 0 || idx >= v)
        throw DataError("mesh " + std::to_string(mesh.id) +
                        " face index out of range: " + std::to_string(idx));
  for (int idx : mesh.landmarks)
    if (idx < 0 || idx >= v)
      throw DataError("mesh " + std::to_string(mesh.id) +
                      " landmark index out of range: " + std::to_string(idx));
}

void validate_spec(const MeasurementSpec& spec, int landmark_count) {
  if (spec.entries.empty())
    throw std::invalid_argument("measurement spec must have at least one entry");
  for (const MeasurementDef& e : spec.entries) {
    if (e.landmark_a < 0 || e.landmark_a >= landmark_count ||
        e.landmark_b < 0 || e.landmark_b >= landmark_count)
      throw std::invalid_argument("invalid landmark index in measurement '" +
                                  e.name + "'");
    if (e.landmark_a == e.landmark_b)
      throw std::invalid_argument("measurement '" + e.name +
                                  "' uses the same landmark twice");
    if (!(e.tolerance_m > 0.0))
      throw std::invalid_argument("invalid tolerance");
  }
}

ParamPoint measure(const ParameterizedMesh& mesh, const MeasurementSpec& spec) {
  validate_spec(spec, static_cast<int>(mesh.landmarks.size()));
  ParamPoint point;
  point.id = mesh.id;
  point.coords.resize(spec.dimension());
  for (int i = 0; i < spec.dimension(); ++i) {
    const MeasurementDef& e = spec.entries[i];
    const Eigen::Vector3d a = mesh.vertices.col(mesh.landmarks[e.landmark_a]);
    const Eigen::Vector3d b = mesh.vertices.col(mesh.landmarks[e.landmark_b]);
    point.coords[i] = (a - b).norm();
  }
  return point;
}

}  // namespace sizecover
