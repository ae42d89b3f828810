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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sizecover/gaussian.hpp"
#include "sizecover/mesh.hpp"
#include "sizecover/param_space.hpp"
#include "sizecover/procrustes.hpp"
#include "sizecover/report.hpp"
#include "sizecover/shape_space.hpp"

namespace sizecover {

/// Corpus ingestion record: mesh files plus the shared landmark list.
/// Relative paths resolve against the manifest's directory.
struct CorpusManifest {
  std::vector<std::filesystem::path> mesh_paths;
  std::filesystem::path landmark_path;
  std::vector<int> ids;  // optional; defaults to file order
};

CorpusManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const std::filesystem::path& path, const CorpusManifest& manifest);

/// Loads every mesh with the shared landmarks and validates that the corpus
/// is topology-identical. Errors name the offending file.
std::vector<ParameterizedMesh> load_corpus(const CorpusManifest& manifest);

enum class CoverMode { all, fixed_k, shift };

struct CoverRunConfig {
  CoverMode mode = CoverMode::all;
  CandidateMode candidates = CandidateMode::centered;
  int k = 0;                 // fixed_k mode
  int l = 0;                 // shift mode
  std::uint64_t seed = 0;
  DesignModelOptions design;
  bool extrapolate_sparse = false;  // wire the feature-analysis hook
  double variance_fraction = 0.99;  // for the sparse-box hook
  std::string comment;
  bool write_design_models = true;
  bool write_svg = true;
};

/// Full covering pipeline: candidates, the selected algorithm, report
/// JSON, one OBJ per design model (when meshes are available), and an SVG
/// scatter for d=2. `points` may be given directly (CSV workflows); when
/// empty they are measured from the corpus.
RunReport run_cover(const std::vector<ParameterizedMesh>& corpus,
                    std::vector<ParamPoint> points, const MeasurementSpec& spec,
                    const CoverRunConfig& config,
                    const std::filesystem::path& out_dir);

/// Fraction of test points inside at least one report box (closed boxes).
double evaluate_holdout(const RunReport& report,
                        const std::vector<ParamPoint>& test_points);

/// Writes n synthetic meshes template + sum w_j * mode_j with w drawn from
/// the weight model, plus the manifest, landmark file, and a weights.csv
/// ground-truth log. Deterministic per seed.
CorpusManifest synth_corpus(const ParameterizedMesh& template_mesh,
                            const std::vector<Eigen::Matrix3Xd>& modes,
                            const GaussianModel& weight_model, int n,
                            std::uint64_t seed,
                            const std::filesystem::path& out_dir);

enum class SampleMode { density, level_set };

struct ExtrapolateResult {
  std::vector<ParamPoint> augmented_points;  // corpus points + new points
  std::vector<ParameterizedMesh> new_meshes;
  ShapeBasis basis;
  FeatureMap fmap;
  GaussianModel gaussian;
};

/// Fits PCA + feature map + Gaussian on the corpus, samples new
/// measurement points (from the density, or from the Mahalanobis shell at
/// level_c), synthesizes their meshes, and writes models, meshes, and the
/// augmented measured points for downstream covering.
ExtrapolateResult run_extrapolate(const std::vector<ParameterizedMesh>& corpus,
                                  const MeasurementSpec& spec, SampleMode mode,
                                  int count, double level_c, std::uint64_t seed,
                                  double variance_fraction,
                                  const std::filesystem::path& out_dir);

}  // namespace sizecover
