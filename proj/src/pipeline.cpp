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

#include "sizecover/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>

#include "json.hpp"
#include "sizecover/cover.hpp"
#include "sizecover/error.hpp"
#include "sizecover/io.hpp"

namespace sizecover {

using nlohmann::ordered_json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string index_name(const char* prefix, int i, const char* suffix) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%04d%s", prefix, i, suffix);
  return buf;
}

}  // namespace

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read file: " + path.string());
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid JSON in " + path.string() + ": " + e.what());
  }
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  CorpusManifest manifest;
  try {
    for (const auto& m : j.at("meshes"))
      manifest.mesh_paths.push_back(resolve(m.get<std::string>()));
    manifest.landmark_path = resolve(j.at("landmarks").get<std::string>());
    if (j.contains("ids")) manifest.ids = j["ids"].get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid manifest in " + path.string() + ": " + e.what());
  }
  if (manifest.mesh_paths.empty())
    throw DataError("manifest lists no meshes: " + path.string());
  if (!manifest.ids.empty() && manifest.ids.size() != manifest.mesh_paths.size())
    throw DataError("manifest ids count differs from meshes: " + path.string());
  return manifest;
}

void save_manifest(const std::filesystem::path& path,
                   const CorpusManifest& manifest) {
  ordered_json j;
  std::vector<std::string> meshes;
  for (const auto& p : manifest.mesh_paths) meshes.push_back(p.filename().string());
  j["meshes"] = meshes;
  j["landmarks"] = manifest.landmark_path.filename().string();
  if (!manifest.ids.empty()) j["ids"] = manifest.ids;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << j.dump(2) << '\n';
}

std::vector<ParameterizedMesh> load_corpus(const CorpusManifest& manifest) {
  const std::vector<int> landmarks = load_landmarks(manifest.landmark_path);
  std::vector<ParameterizedMesh> corpus;
  corpus.reserve(manifest.mesh_paths.size());
  for (std::size_t i = 0; i < manifest.mesh_paths.size(); ++i) {
    const auto& path = manifest.mesh_paths[i];
    ParameterizedMesh mesh =
        load_obj(path, manifest.ids.empty() ? static_cast<int>(i)
                                            : manifest.ids[i]);
    mesh.landmarks = landmarks;
    for (int idx : landmarks)
      if (idx < 0 || idx >= mesh.vertices.cols())
        throw DataError("landmark index " + std::to_string(idx) +
                        " out of range for " + path.string());
    if (!corpus.empty() && !same_topology(mesh, corpus.front()))
      throw DataError("topology mismatch: " + path.string() +
                      " differs from " + manifest.mesh_paths.front().string());
    validate_mesh(mesh);
    corpus.push_back(std::move(mesh));
  }
  return corpus;
}

RunReport run_cover(const std::vector<ParameterizedMesh>& corpus,
                    std::vector<ParamPoint> points, const MeasurementSpec& spec,
                    const CoverRunConfig& config,
                    const std::filesystem::path& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  std::map<std::string, double> timings;
  std::filesystem::create_directories(out_dir);

  if (points.empty()) {
    if (corpus.empty()) throw std::invalid_argument("empty input");
    points.reserve(corpus.size());
    for (const ParameterizedMesh& m : corpus) points.push_back(measure(m, spec));
  }
  const Eigen::VectorXd tolerances = spec.tolerances();
  for (const ParamPoint& p : points)
    if (p.coords.size() != tolerances.size())
      throw std::invalid_argument("dimension mismatch");
  timings["measure"] = seconds_since(t0);

  const auto t1 = std::chrono::steady_clock::now();
  CoverSolution solution;
  std::string candidate_mode_name;
  if (config.mode == CoverMode::shift) {
    if (config.l < 1) throw std::invalid_argument("invalid l");
    solution = shifting_cover_2d(points, tolerances, config.l);
    candidate_mode_name = "block-combinatorial";
  } else {
    CandidateSet candidates =
        config.candidates == CandidateMode::centered
            ? candidate_boxes_centered(points, tolerances)
            : candidate_boxes_combinatorial(points, tolerances);
    candidate_mode_name =
        config.candidates == CandidateMode::centered ? "centered" : "combinatorial";
    solution = config.mode == CoverMode::all
                   ? greedy_cover_all(candidates)
                   : greedy_cover_k(candidates, config.k);
  }
  timings["cover"] = seconds_since(t1);

  RunReport report = make_report(solution, tolerances,
                                 static_cast<int>(points.size()));
  report.candidate_mode = candidate_mode_name;
  report.seed = config.seed;
  report.comment = config.comment;
  if (config.mode == CoverMode::fixed_k) report.k = config.k;
  if (config.mode == CoverMode::shift) {
    report.l = config.l;
    report.epsilon = shifting_epsilon(config.l, static_cast<int>(tolerances.size()));
  }

  std::vector<std::string> log_lines;
  if (!corpus.empty() && config.write_design_models) {
    const auto t2 = std::chrono::steady_clock::now();
    DesignModelOptions options = config.design;
    options.seed = config.seed;

    // The sparse-box fallback synthesizes substitutes through the corpus
    // shape space; models are fitted on first use and reused across boxes.
    struct FittedModels {
      ShapeBasis basis;
      FeatureMap fmap;
    };
    auto cache = std::make_shared<std::optional<FittedModels>>();
    if (config.extrapolate_sparse) {
      const auto corpus_ptr = &corpus;
      const auto points_copy = points;
      const double vf = config.variance_fraction;
      options.extrapolate =
          [cache, corpus_ptr, points_copy,
           vf](const std::vector<ParamPoint>& samples) {
            if (!cache->has_value()) {
              ShapeBasis basis = pca_fit(*corpus_ptr, vf);
              std::vector<Eigen::VectorXd> weights;
              weights.reserve(corpus_ptr->size());
              for (const ParameterizedMesh& m : *corpus_ptr)
                weights.push_back(pca_project(basis, m));
              FeatureMap fmap = feature_fit(points_copy, weights);
              *cache = FittedModels{std::move(basis), std::move(fmap)};
            }
            std::vector<ParameterizedMesh> out;
            out.reserve(samples.size());
            for (const ParamPoint& s : samples)
              out.push_back(synthesize((*cache)->basis, (*cache)->fmap, s));
            return out;
          };
    }

    DesignModelReport models = design_models_detailed(corpus, solution, spec, options);
    for (std::size_t i = 0; i < models.models.size(); ++i) {
      char name[48];
      std::snprintf(name, sizeof(name), "design_model_%d.obj",
                    static_cast<int>(i));
      save_obj(out_dir / name, models.models[i]);
      if (models.extrapolated[i])
        log_lines.push_back("box " + std::to_string(i) +
                            ": sparse or off-center, used extrapolation");
      if (!models.gpa_converged[i])
        log_lines.push_back("box " + std::to_string(i) +
                            ": mean-shape iteration cap hit (" +
                            std::to_string(models.gpa_iterations[i]) +
                            " iterations)");
    }
    timings["design_models"] = seconds_since(t2);
  }

  if (report.dimension == 2 && config.write_svg) {
    std::ofstream svg(out_dir / "scatter.svg");
    if (!svg) throw DataError("cannot write file: " + (out_dir / "scatter.svg").string());
    svg << render_svg_scatter(report, points);
  }

  save_report(out_dir / "report.json", report);
  timings["total"] = seconds_since(t0);
  save_timings(out_dir / "timings.json", timings);
  {
    std::ofstream log(out_dir / "run_log.txt");
    for (const std::string& line : log_lines) log << line << '\n';
  }
  return report;
}

double evaluate_holdout(const RunReport& report,
                        const std::vector<ParamPoint>& test_points) {
  if (test_points.empty()) throw std::invalid_argument("empty input");
  for (const ParamPoint& p : test_points)
    if (p.coords.size() != report.dimension)
      throw std::invalid_argument("dimension mismatch");
  int covered = 0;
  for (const ParamPoint& p : test_points) {
    for (const ReportBox& b : report.boxes) {
      if (((p.coords - b.center).cwiseAbs().array() <=
           0.5 * b.side_lengths.array())
              .all()) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(test_points.size());
}

CorpusManifest synth_corpus(const ParameterizedMesh& template_mesh,
                            const std::vector<Eigen::Matrix3Xd>& modes,
                            const GaussianModel& weight_model, int n,
                            std::uint64_t seed,
                            const std::filesystem::path& out_dir) {
  if (n < 1) throw std::invalid_argument("invalid count");
  validate_mesh(template_mesh);
  const int q = static_cast<int>(modes.size());
  if (weight_model.dimension() != q)
    throw std::invalid_argument("dimension mismatch");
  for (const Eigen::Matrix3Xd& mode : modes)
    if (mode.cols() != template_mesh.vertices.cols())
      throw std::invalid_argument("dimension mismatch");

  std::filesystem::create_directories(out_dir);
  const std::vector<ParamPoint> weights =
      q > 0 ? gaussian_sample(weight_model, n, seed) : std::vector<ParamPoint>();

  CorpusManifest manifest;
  std::ofstream wlog(out_dir / "weights.csv");
  if (!wlog) throw DataError("cannot write file: " + (out_dir / "weights.csv").string());
  wlog << "id";
  for (int jq = 0; jq < q; ++jq) wlog << ",w" << jq;
  wlog << '\n';
  for (int i = 0; i < n; ++i) {
    ParameterizedMesh mesh = template_mesh;
    mesh.id = i;
    for (int jq = 0; jq < q; ++jq)
      mesh.vertices += weights[i].coords[jq] * modes[jq];
    const std::string name = index_name("mesh_", i, ".obj");
    save_obj(out_dir / name, mesh);
    manifest.mesh_paths.push_back(out_dir / name);
    manifest.ids.push_back(i);
    wlog << i;
    for (int jq = 0; jq < q; ++jq)
      wlog << ',' << format_double(weights[i].coords[jq]);
    wlog << '\n';
  }
  save_landmarks(out_dir / "landmarks.txt", template_mesh.landmarks);
  manifest.landmark_path = out_dir / "landmarks.txt";
  save_manifest(out_dir / "manifest.json", manifest);
  return manifest;
}

ExtrapolateResult run_extrapolate(const std::vector<ParameterizedMesh>& corpus,
                                  const MeasurementSpec& spec, SampleMode mode,
                                  int count, double level_c, std::uint64_t seed,
                                  double variance_fraction,
                                  const std::filesystem::path& out_dir) {
  if (count < 0) throw std::invalid_argument("invalid count");
  std::filesystem::create_directories(out_dir);

  ExtrapolateResult result;
  std::vector<ParamPoint> points;
  points.reserve(corpus.size());
  int max_id = 0;
  for (const ParameterizedMesh& m : corpus) {
    points.push_back(measure(m, spec));
    max_id = std::max(max_id, m.id);
  }
  const int d = spec.dimension();
  if (static_cast<int>(corpus.size()) < d + 1)
    throw std::invalid_argument("underdetermined feature map");

  result.basis = pca_fit(corpus, variance_fraction);
  std::vector<Eigen::VectorXd> weights;
  weights.reserve(corpus.size());
  for (const ParameterizedMesh& m : corpus)
    weights.push_back(pca_project(result.basis, m));
  result.fmap = feature_fit(points, weights);
  result.gaussian = gaussian_fit(points);

  save_shape_basis(out_dir / "basis.json", result.basis);
  save_feature_map(out_dir / "feature_map.json", result.fmap);
  save_gaussian(out_dir / "gaussian.json", result.gaussian);

  result.augmented_points = points;
  if (count > 0) {
    std::vector<ParamPoint> samples =
        mode == SampleMode::density
            ? gaussian_sample(result.gaussian, count, seed)
            : level_set_sample(result.gaussian, level_c, count, seed);
    for (int i = 0; i < count; ++i) {
      samples[i].id = max_id + 1 + i;
      ParameterizedMesh mesh = synthesize(result.basis, result.fmap, samples[i]);
      save_obj(out_dir / index_name("extrapolated_", i, ".obj"), mesh);
      result.augmented_points.push_back(measure(mesh, spec));
      result.new_meshes.push_back(std::move(mesh));
    }
  }
  save_points_csv(out_dir / "points_augmented.csv", result.augmented_points);
  return result;
}

}  // namespace sizecover
