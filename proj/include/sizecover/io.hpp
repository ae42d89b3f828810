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

#include <filesystem>
#include <string>
#include <vector>

#include "sizecover/gaussian.hpp"
#include "sizecover/mesh.hpp"
#include "sizecover/param_space.hpp"
#include "sizecover/shape_space.hpp"

namespace sizecover {

/// ASCII OBJ with v/f records; face indices 1-based, triangles only.
/// Unknown records are skipped; indices of v/vt/vn triplets use the vertex
/// part. Errors name the offending file.
ParameterizedMesh load_obj(const std::filesystem::path& path, int id = 0);
void save_obj(const std::filesystem::path& path, const ParameterizedMesh& mesh);

/// Vertex block of an OBJ; used for displacement fields where faces are
/// absent or irrelevant.
Eigen::Matrix3Xd load_obj_vertices(const std::filesystem::path& path);

/// Landmark list: one 0-based vertex index per line.
std::vector<int> load_landmarks(const std::filesystem::path& path);
void save_landmarks(const std::filesystem::path& path,
                    const std::vector<int>& landmarks);

/// JSON array of {"name", "landmark_a", "landmark_b", "tolerance_m"}.
MeasurementSpec load_measurement_spec(const std::filesystem::path& path);
void save_measurement_spec(const std::filesystem::path& path,
                           const MeasurementSpec& spec);

/// CSV with header id,m0,...,m{d-1}; measurements in meters.
std::vector<ParamPoint> load_points_csv(const std::filesystem::path& path);
void save_points_csv(const std::filesystem::path& path,
                     const std::vector<ParamPoint>& points);

/// Fitted models serialize to JSON containers with dimensions and
/// row-major matrices so pipelines can cache them.
void save_shape_basis(const std::filesystem::path& path, const ShapeBasis& basis);
ShapeBasis load_shape_basis(const std::filesystem::path& path);
void save_feature_map(const std::filesystem::path& path, const FeatureMap& fmap);
FeatureMap load_feature_map(const std::filesystem::path& path);
void save_gaussian(const std::filesystem::path& path, const GaussianModel& model);
GaussianModel load_gaussian(const std::filesystem::path& path);

/// Fixed-format floating point used by all text writers (round-trip exact).
std::string format_double(double value);

}  // namespace sizecover
