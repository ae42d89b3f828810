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

#include "sizecover/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sizecover/error.hpp"

namespace sizecover {

using nlohmann::ordered_json;

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read file: " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path.string());
  return out;
}

ordered_json parse_json(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

// Vertex index of an OBJ face corner ("7", "7/2", "7//3", "7/2/3").
int face_vertex_index(const std::string& token, const std::filesystem::path& path) {
  try {
    return std::stoi(token.substr(0, token.find('/')));
  } catch (const std::exception&) {
    throw DataError("invalid face index '" + token + "' in " + path.string());
  }
}

std::vector<double> row_major(const Eigen::MatrixXd& m) {
  std::vector<double> v;
  v.reserve(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

Eigen::MatrixXd from_row_major(const std::vector<double>& v, Eigen::Index rows,
                               Eigen::Index cols, const std::string& what) {
  if (static_cast<Eigen::Index>(v.size()) != rows * cols)
    throw DataError(what + ": matrix size mismatch");
  Eigen::MatrixXd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v[k++];
  return m;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

ParameterizedMesh load_obj(const std::filesystem::path& path, int id) {
  std::ifstream in = open_input(path);
  std::vector<Eigen::Vector3d> verts;
  std::vector<std::array<int, 3>> faces;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Eigen::Vector3d v;
      if (!(ls >> v[0] >> v[1] >> v[2]))
        throw DataError("malformed vertex at " + path.string() + ":" +
                        std::to_string(line_no));
      verts.push_back(v);
    } else if (tag == "f") {
      std::vector<int> corners;
      std::string token;
      while (ls >> token) corners.push_back(face_vertex_index(token, path));
      if (corners.size() != 3)
        throw DataError("non-triangular face at " + path.string() + ":" +
                        std::to_string(line_no));
      faces.push_back({corners[0] - 1, corners[1] - 1, corners[2] - 1});
    }
    // all other records (vn, vt, comments, groups) are ignored
  }
  if (verts.empty()) throw DataError("no vertices in " + path.string());

  ParameterizedMesh mesh;
  mesh.id = id;
  mesh.vertices.resize(3, static_cast<Eigen::Index>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) mesh.vertices.col(i) = verts[i];
  mesh.faces = std::move(faces);
  for (const auto& f : mesh.faces)
    for (int idx : f)
      if (idx < 0 || idx >= static_cast<int>(verts.size()))
        throw DataError("face index out of range in " + path.string());
  return mesh;
}

void save_obj(const std::filesystem::path& path, const ParameterizedMesh& mesh) {
  std::ofstream out = open_output(path);
  for (Eigen::Index i = 0; i < mesh.vertices.cols(); ++i) {
    out << "v " << format_double(mesh.vertices(0, i)) << ' '
        << format_double(mesh.vertices(1, i)) << ' '
        << format_double(mesh.vertices(2, i)) << '\n';
  }
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

Eigen::Matrix3Xd load_obj_vertices(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<Eigen::Vector3d> verts;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag != "v") continue;
    Eigen::Vector3d v;
    if (!(ls >> v[0] >> v[1] >> v[2]))
      throw DataError("malformed vertex in " + path.string());
    verts.push_back(v);
  }
  if (verts.empty()) throw DataError("no vertices in " + path.string());
  Eigen::Matrix3Xd m(3, static_cast<Eigen::Index>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) m.col(i) = verts[i];
  return m;
}

std::vector<int> load_landmarks(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<int> landmarks;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      landmarks.push_back(std::stoi(line));
    } catch (const std::exception&) {
      throw DataError("invalid landmark index at " + path.string() + ":" +
                      std::to_string(line_no));
    }
  }
  if (landmarks.empty()) throw DataError("no landmarks in " + path.string());
  return landmarks;
}

void save_landmarks(const std::filesystem::path& path,
                    const std::vector<int>& landmarks) {
  std::ofstream out = open_output(path);
  for (int idx : landmarks) out << idx << '\n';
}

MeasurementSpec load_measurement_spec(const std::filesystem::path& path) {
  const ordered_json j = parse_json(path);
  if (!j.is_array() || j.empty())
    throw DataError("measurement spec must be a non-empty array: " +
                    path.string());
  MeasurementSpec spec;
  for (const auto& e : j) {
    try {
      spec.entries.push_back(MeasurementDef{
          e.at("name").get<std::string>(), e.at("landmark_a").get<int>(),
          e.at("landmark_b").get<int>(), e.at("tolerance_m").get<double>()});
    } catch (const nlohmann::json::exception& ex) {
      throw DataError("invalid measurement entry in " + path.string() + ": " +
                      ex.what());
    }
  }
  return spec;
}

void save_measurement_spec(const std::filesystem::path& path,
                           const MeasurementSpec& spec) {
  ordered_json j = ordered_json::array();
  for (const MeasurementDef& e : spec.entries) {
    j.push_back({{"name", e.name},
                 {"landmark_a", e.landmark_a},
                 {"landmark_b", e.landmark_b},
                 {"tolerance_m", e.tolerance_m}});
  }
  open_output(path) << j.dump(2) << '\n';
}

std::vector<ParamPoint> load_points_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV: " + path.string());
  if (line.rfind("id,m0", 0) != 0)
    throw DataError("CSV header must start with id,m0: " + path.string());
  const std::size_t d = static_cast<std::size_t>(
      std::count(line.begin(), line.end(), ',') );

  std::vector<ParamPoint> points;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string cell;
    ParamPoint p;
    p.coords.resize(d);
    try {
      if (!std::getline(ls, cell, ',')) throw std::runtime_error("missing id");
      p.id = std::stoi(cell);
      for (std::size_t i = 0; i < d; ++i) {
        if (!std::getline(ls, cell, ',')) throw std::runtime_error("short row");
        p.coords[i] = std::stod(cell);
      }
    } catch (const std::exception&) {
      throw DataError("malformed CSV row at " + path.string() + ":" +
                      std::to_string(line_no));
    }
    if (std::getline(ls, cell, ','))
      throw DataError("too many columns at " + path.string() + ":" +
                      std::to_string(line_no));
    points.push_back(std::move(p));
  }
  if (points.empty()) throw DataError("no data rows in " + path.string());
  return points;
}

void save_points_csv(const std::filesystem::path& path,
                     const std::vector<ParamPoint>& points) {
  std::ofstream out = open_output(path);
  const Eigen::Index d = points.empty() ? 0 : points.front().coords.size();
  out << "id";
  for (Eigen::Index i = 0; i < d; ++i) out << ",m" << i;
  out << '\n';
  for (const ParamPoint& p : points) {
    out << p.id;
    for (Eigen::Index i = 0; i < d; ++i) out << ',' << format_double(p.coords[i]);
    out << '\n';
  }
}

void save_shape_basis(const std::filesystem::path& path, const ShapeBasis& basis) {
  ordered_json j;
  j["type"] = "shape_basis";
  j["num_vertices"] = basis.num_vertices();
  j["num_components"] = basis.num_components();
  j["mean"] = std::vector<double>(basis.mean_shape.begin(), basis.mean_shape.end());
  j["basis_row_major"] = row_major(basis.basis);
  j["variances"] =
      std::vector<double>(basis.variances.begin(), basis.variances.end());
  j["faces"] = basis.faces;
  j["landmarks"] = basis.landmarks;
  open_output(path) << j.dump(2) << '\n';
}

ShapeBasis load_shape_basis(const std::filesystem::path& path) {
  const ordered_json j = parse_json(path);
  try {
    ShapeBasis basis;
    const int v = j.at("num_vertices").get<int>();
    const int p = j.at("num_components").get<int>();
    const auto mean = j.at("mean").get<std::vector<double>>();
    if (static_cast<int>(mean.size()) != 3 * v)
      throw DataError("shape basis mean size mismatch: " + path.string());
    basis.mean_shape =
        Eigen::Map<const Eigen::VectorXd>(mean.data(), mean.size());
    basis.basis = from_row_major(j.at("basis_row_major").get<std::vector<double>>(),
                                 3 * v, p, path.string());
    const auto vars = j.at("variances").get<std::vector<double>>();
    if (static_cast<int>(vars.size()) != p)
      throw DataError("shape basis variance size mismatch: " + path.string());
    basis.variances = Eigen::Map<const Eigen::VectorXd>(vars.data(), vars.size());
    basis.faces = j.at("faces").get<std::vector<std::array<int, 3>>>();
    basis.landmarks = j.at("landmarks").get<std::vector<int>>();
    return basis;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid shape basis in " + path.string() + ": " + e.what());
  }
}

void save_feature_map(const std::filesystem::path& path, const FeatureMap& fmap) {
  ordered_json j;
  j["type"] = "feature_map";
  j["rows"] = static_cast<int>(fmap.matrix.rows());
  j["cols"] = static_cast<int>(fmap.matrix.cols());
  j["mode"] = fmap.mode == FeatureFitMode::affine ? "affine" : "linear";
  j["matrix_row_major"] = row_major(fmap.matrix);
  open_output(path) << j.dump(2) << '\n';
}

FeatureMap load_feature_map(const std::filesystem::path& path) {
  const ordered_json j = parse_json(path);
  try {
    FeatureMap fmap;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "affine") fmap.mode = FeatureFitMode::affine;
    else if (mode == "linear") fmap.mode = FeatureFitMode::linear;
    else throw DataError("unknown feature map mode: " + mode);
    fmap.matrix = from_row_major(
        j.at("matrix_row_major").get<std::vector<double>>(),
        j.at("rows").get<int>(), j.at("cols").get<int>(), path.string());
    return fmap;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid feature map in " + path.string() + ": " + e.what());
  }
}

void save_gaussian(const std::filesystem::path& path, const GaussianModel& model) {
  ordered_json j;
  j["type"] = "gaussian";
  j["dimension"] = model.dimension();
  j["mean"] = std::vector<double>(model.mean.begin(), model.mean.end());
  j["covariance_row_major"] = row_major(model.covariance);
  open_output(path) << j.dump(2) << '\n';
}

GaussianModel load_gaussian(const std::filesystem::path& path) {
  const ordered_json j = parse_json(path);
  try {
    GaussianModel model;
    const int d = j.at("dimension").get<int>();
    const auto mean = j.at("mean").get<std::vector<double>>();
    if (static_cast<int>(mean.size()) != d)
      throw DataError("gaussian mean size mismatch: " + path.string());
    model.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), mean.size());
    model.covariance =
        from_row_major(j.at("covariance_row_major").get<std::vector<double>>(),
                       d, d, path.string());
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid gaussian in " + path.string() + ": " + e.what());
  }
}

}  // namespace sizecover
