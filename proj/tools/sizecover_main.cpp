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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sizecover/cover.hpp"
#include "sizecover/error.hpp"
#include "sizecover/io.hpp"
#include "sizecover/pipeline.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sizecover;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSizeCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonArgs {
  std::string corpus_path;
  std::string points_path;
  std::string measurements_path;
  std::string candidates = "centered";
  std::string out_dir;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_input) {
  if (needs_input) {
    cmd->add_option("--corpus", args.corpus_path, "corpus manifest JSON");
    cmd->add_option("--points", args.points_path, "points CSV (id,m0,...)");
    cmd->add_option("--measurements", args.measurements_path,
                    "measurement spec JSON")
        ->required();
  }
  cmd->add_option("--out", args.out_dir, "output directory")->required();
  cmd->add_option("--seed", args.seed, "random seed (default 0)");
}

struct LoadedInput {
  std::vector<ParameterizedMesh> corpus;
  std::vector<ParamPoint> points;
  MeasurementSpec spec;
};

LoadedInput load_input(const CommonArgs& args) {
  if (args.corpus_path.empty() == args.points_path.empty())
    throw UsageError("exactly one of --corpus or --points is required");
  LoadedInput input;
  input.spec = load_measurement_spec(args.measurements_path);
  if (!args.corpus_path.empty()) {
    input.corpus = load_corpus(load_manifest(args.corpus_path));
  } else {
    input.points = load_points_csv(args.points_path);
  }
  return input;
}

CoverRunConfig base_config(const CommonArgs& args, const CLI::App* cmd) {
  CoverRunConfig config;
  if (args.candidates == "centered") {
    config.candidates = CandidateMode::centered;
  } else if (args.candidates == "combinatorial") {
    config.candidates = CandidateMode::combinatorial;
  } else {
    throw UsageError("--candidates must be centered or combinatorial");
  }
  config.seed = args.seed;
  return config;
}

void print_report_summary(const RunReport& report) {
  std::cout << report.algorithm << ": " << report.boxes.size()
            << " boxes, train coverage " << report.train_coverage;
  if (report.epsilon) std::cout << ", epsilon " << *report.epsilon;
  std::cout << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{
      "sizecover: representative design models from corresponded 3D scan "
      "corpora by covering measurement space with tolerance boxes"};
  app.require_subcommand(1);

  // --- cover-all -----------------------------------------------------------
  CommonArgs all_args;
  CoverRunConfig all_extra;
  auto* cover_all = app.add_subcommand(
      "cover-all", "cover every subject with the fewest greedy boxes");
  add_common(cover_all, all_args, true);
  cover_all->add_option("--candidates", all_args.candidates,
                        "centered|combinatorial");
  cover_all->add_option("--min-members", all_extra.design.min_members,
                        "member count for a well-supported box (default 3)");
  cover_all->add_option("--center-tolerance",
                        all_extra.design.center_tolerance_fraction,
                        "allowed member-mean offset as a fraction of the half "
                        "side (default 0.5)");
  cover_all->add_flag("--extrapolate-sparse", all_extra.extrapolate_sparse,
                      "synthesize substitutes for sparse boxes");
  cover_all->add_option("--comment", all_extra.comment, "report comment");

  // --- cover-k -------------------------------------------------------------
  CommonArgs k_args;
  CoverRunConfig k_extra;
  auto* cover_k = app.add_subcommand(
      "cover-k", "cover the most subjects with a fixed number of boxes");
  add_common(cover_k, k_args, true);
  cover_k->add_option("--k", k_extra.k, "number of boxes")
      ->required()
      ->check(CLI::PositiveNumber);
  cover_k->add_option("--candidates", k_args.candidates,
                      "centered|combinatorial");
  cover_k->add_option("--min-members", k_extra.design.min_members, "");
  cover_k->add_option("--center-tolerance",
                      k_extra.design.center_tolerance_fraction, "");
  cover_k->add_flag("--extrapolate-sparse", k_extra.extrapolate_sparse, "");
  cover_k->add_option("--comment", k_extra.comment, "report comment");

  // --- shift ---------------------------------------------------------------
  CommonArgs shift_args;
  CoverRunConfig shift_extra;
  auto* shift = app.add_subcommand(
      "shift", "near-optimal d=2 cover via the shifted-partition scheme");
  add_common(shift, shift_args, true);
  shift->add_option("--l", shift_extra.l, "cells per block side")
      ->required()
      ->check(CLI::PositiveNumber);
  shift->add_option("--min-members", shift_extra.design.min_members, "");
  shift->add_option("--center-tolerance",
                    shift_extra.design.center_tolerance_fraction, "");
  shift->add_flag("--extrapolate-sparse", shift_extra.extrapolate_sparse, "");
  shift->add_option("--comment", shift_extra.comment, "report comment");

  // --- evaluate --------------------------------------------------------------
  CommonArgs eval_args;
  std::string eval_report, eval_test;
  auto* evaluate = app.add_subcommand(
      "evaluate", "held-out coverage of a report against a test set");
  evaluate->add_option("--report", eval_report, "report JSON")->required();
  evaluate->add_option("--test", eval_test, "test points CSV or corpus manifest")
      ->required();
  evaluate->add_option("--measurements", eval_args.measurements_path,
                       "measurement spec JSON (required for manifests)");
  add_common(evaluate, eval_args, false);

  // --- extrapolate -----------------------------------------------------------
  CommonArgs extra_args;
  int extra_count = -1;
  std::optional<double> extra_level;
  double extra_vf = 0.99;
  auto* extrapolate = app.add_subcommand(
      "extrapolate", "augment a corpus with synthesized subjects");
  add_common(extrapolate, extra_args, true);
  extrapolate->add_option("--count", extra_count, "number of new subjects")
      ->required();
  extrapolate->add_option("--level", extra_level,
                          "sample the equal-density shell at this Mahalanobis "
                          "radius instead of the density");
  extrapolate->add_option("--variance-fraction", extra_vf,
                          "PCA variance fraction (default 0.99)");

  // --- synth -----------------------------------------------------------------
  CommonArgs synth_args;
  std::string synth_spec_path;
  int synth_n = 0;
  auto* synth = app.add_subcommand(
      "synth", "generate a synthetic corpus from a template and modes");
  synth->add_option("--synth-spec", synth_spec_path,
                    "JSON with template, landmarks, modes, weight model")
      ->required();
  synth->add_option("--n", synth_n, "number of meshes")
      ->required()
      ->check(CLI::PositiveNumber);
  add_common(synth, synth_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cover_all->parsed() || cover_k->parsed() || shift->parsed()) {
      CommonArgs& args = cover_all->parsed() ? all_args
                         : cover_k->parsed() ? k_args
                                             : shift_args;
      CoverRunConfig& extra = cover_all->parsed() ? all_extra
                              : cover_k->parsed() ? k_extra
                                                  : shift_extra;
      CoverRunConfig config = base_config(args, nullptr);
      config.mode = cover_all->parsed() ? CoverMode::all
                    : cover_k->parsed() ? CoverMode::fixed_k
                                        : CoverMode::shift;
      config.k = extra.k;
      config.l = extra.l;
      config.design = extra.design;
      config.extrapolate_sparse = extra.extrapolate_sparse;
      config.comment = extra.comment;

      LoadedInput input = load_input(args);
      if (config.mode == CoverMode::shift && input.spec.dimension() != 2)
        throw UsageError("shift requires a 2-dimensional measurement spec");
      RunReport report = run_cover(input.corpus, std::move(input.points),
                                   input.spec, config, args.out_dir);
      print_report_summary(report);
      std::cout << "report: " << (fs::path(args.out_dir) / "report.json").string()
                << "\n";
    } else if (evaluate->parsed()) {
      RunReport report = load_report(eval_report);
      std::vector<ParamPoint> test_points;
      if (eval_test.size() > 4 &&
          eval_test.substr(eval_test.size() - 4) == ".csv") {
        test_points = load_points_csv(eval_test);
      } else {
        if (eval_args.measurements_path.empty())
          throw UsageError("--measurements is required for manifest test sets");
        const MeasurementSpec spec =
            load_measurement_spec(eval_args.measurements_path);
        for (const ParameterizedMesh& m :
             load_corpus(load_manifest(eval_test)))
          test_points.push_back(measure(m, spec));
      }
      const double coverage = evaluate_holdout(report, test_points);
      fs::create_directories(eval_args.out_dir);
      nlohmann::ordered_json j;
      j["report"] = fs::path(eval_report).filename().string();
      j["num_test_points"] = test_points.size();
      j["holdout_coverage"] = coverage;
      std::ofstream out(fs::path(eval_args.out_dir) / "evaluation.json");
      if (!out) throw DataError("cannot write evaluation.json");
      out << j.dump(2) << '\n';
      std::cout << "holdout coverage: " << coverage << "\n";
    } else if (extrapolate->parsed()) {
      if (extra_args.corpus_path.empty())
        throw UsageError("extrapolate requires --corpus");
      if (extra_count < 0) throw UsageError("--count must be non-negative");
      const MeasurementSpec spec =
          load_measurement_spec(extra_args.measurements_path);
      const std::vector<ParameterizedMesh> corpus =
          load_corpus(load_manifest(extra_args.corpus_path));
      const SampleMode mode =
          extra_level ? SampleMode::level_set : SampleMode::density;
      ExtrapolateResult result =
          run_extrapolate(corpus, spec, mode, extra_count,
                          extra_level.value_or(0.0), extra_args.seed, extra_vf,
                          extra_args.out_dir);
      std::cout << "extrapolated " << result.new_meshes.size()
                << " subjects; augmented points: "
                << result.augmented_points.size() << "\n";
    } else if (synth->parsed()) {
      std::ifstream in(synth_spec_path);
      if (!in) throw DataError("cannot read file: " + synth_spec_path);
      nlohmann::ordered_json j;
      try {
        j = nlohmann::ordered_json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw DataError("invalid JSON in " + synth_spec_path + ": " + e.what());
      }
      const fs::path base = fs::path(synth_spec_path).parent_path();
      auto resolve = [&](const std::string& p) {
        const fs::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
      };
      ParameterizedMesh tmpl =
          load_obj(resolve(j.at("template").get<std::string>()));
      tmpl.landmarks =
          load_landmarks(resolve(j.at("landmarks").get<std::string>()));
      std::vector<Eigen::Matrix3Xd> modes;
      for (const auto& m : j.at("modes"))
        modes.push_back(load_obj_vertices(resolve(m.get<std::string>())));
      GaussianModel weight_model;
      const auto mean = j.at("weight_mean").get<std::vector<double>>();
      weight_model.mean =
          Eigen::Map<const Eigen::VectorXd>(mean.data(), mean.size());
      const auto cov = j.at("weight_covariance_row_major").get<std::vector<double>>();
      const int q = static_cast<int>(mean.size());
      if (static_cast<int>(cov.size()) != q * q)
        throw DataError("weight covariance size mismatch in " + synth_spec_path);
      weight_model.covariance.resize(q, q);
      for (int r = 0; r < q; ++r)
        for (int c = 0; c < q; ++c)
          weight_model.covariance(r, c) = cov[r * q + c];
      synth_corpus(tmpl, modes, weight_model, synth_n, synth_args.seed,
                   synth_args.out_dir);
      std::cout << "wrote " << synth_n << " meshes to " << synth_args.out_dir
                << "\n";
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSizeCap;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
