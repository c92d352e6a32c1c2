// Copyright 2026 The IFE Authors
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


#include "ife/report/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ife::report {

namespace {

std::string at(const std::string& field, Index i) { return field + "[" + std::to_string(i) + "]"; }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("<root>", "expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(key, "missing field");
  return *it;
}

Index positive_dim(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InputError(key, "expected a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

Complex decode_entry(const Json& e, const std::string& field) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw InputError(field, "expected an [re, im] pair of numbers");
  }
  const double re = e[0].get<double>(), im = e[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw InputError(field, "non-finite entry");
  return {re, im};
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path, "cannot open file for writing");
  out << text;
  if (!out) throw InputError(path, "write failed");
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what, std::string("invalid JSON (") + e.what() + ")");
  }
}

Json encode_matrix(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json encode_vector(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Matrix decode_matrix(const Json& j, Index rows, Index cols, const std::string& field) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
    throw InputError(field, "expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw InputError(at(field, i), "expected " + std::to_string(cols) + " entries");
    }
    for (Index k = 0; k < cols; ++k) {
      m(i, k) = decode_entry(row[static_cast<std::size_t>(k)], at(at(field, i), k));
    }
  }
  return m;
}

Vector decode_vector(const Json& j, Index dim, const std::string& field) {
  if (!j.is_array() || static_cast<Index>(j.size()) != dim) {
    throw InputError(field, "expected " + std::to_string(dim) + " entries");
  }
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = decode_entry(j[static_cast<std::size_t>(i)], at(field, i));
  return v;
}

Matrix require_hermitian(const Matrix& m, const std::string& field) {
  const double err = (m - m.adjoint()).norm();
  if (err > kLoadHermitianTol * m.norm()) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (||M - M^dagger||_F = " << err << ")";
    throw InputError(field, msg.str());
  }
  return 0.5 * (m + m.adjoint());
}

BipartiteSystem SystemFile::system() const {
  return BipartiteSystem(Operator(require_hermitian(h_a, "h_a")),
                         Operator(require_hermitian(h_b, "h_b")),
                         Operator(require_hermitian(h_i, "h_i")));
}

SystemFile parse_system(const Json& j) {
  SystemFile f;
  f.dim_a = positive_dim(j, "dim_a");
  f.dim_b = positive_dim(j, "dim_b");
  // Raw entries are kept so serialization reproduces the file.
  f.h_a = decode_matrix(member(j, "h_a"), f.dim_a, f.dim_a, "h_a");
  f.h_b = decode_matrix(member(j, "h_b"), f.dim_b, f.dim_b, "h_b");
  const Index d = f.dim_a * f.dim_b;
  f.h_i = decode_matrix(member(j, "h_i"), d, d, "h_i");
  require_hermitian(f.h_a, "h_a");
  require_hermitian(f.h_b, "h_b");
  require_hermitian(f.h_i, "h_i");
  if (const auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) throw InputError("label", "expected a string");
    f.label = it->get<std::string>();
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const char* known[] = {"dim_a", "dim_b", "h_a", "h_b", "h_i", "label"};
    if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known)) {
      throw InputError(it.key(), "unknown field");
    }
  }
  return f;
}

Json system_to_json(const SystemFile& f) {
  Json j = {{"dim_a", f.dim_a},
            {"dim_b", f.dim_b},
            {"h_a", encode_matrix(f.h_a)},
            {"h_b", encode_matrix(f.h_b)},
            {"h_i", encode_matrix(f.h_i)}};
  if (f.label) j["label"] = *f.label;
  return j;
}

SystemFile system_file_from(const BipartiteSystem& sys, std::optional<std::string> label) {
  return {sys.dim_a(), sys.dim_b(), sys.h_a().matrix(), sys.h_b().matrix(), sys.h_i().matrix(),
          std::move(label)};
}

Vector parse_state(const Json& j, Index dim) {
  Vector psi = decode_vector(member(j, "state"), dim, "state");
  if (!(std::abs(psi.norm() - 1.0) <= 1e-10)) {
    throw InputError("state", "not normalized (norm " + std::to_string(psi.norm()) + ")");
  }
  return psi;
}

DensityMatrix parse_density(const Json& j, Index dim) {
  const Matrix rho = decode_matrix(member(j, "rho"), dim, dim, "rho");
  try {
    return DensityMatrix(rho);
  } catch (const InvalidStateError& e) {
    throw InputError("rho", e.what());
  }
}

Observables parse_observables(const Json& j, Index dim_a, Index dim_b) {
  return {Operator(require_hermitian(decode_matrix(member(j, "o_a"), dim_a, dim_a, "o_a"), "o_a")),
          Operator(require_hermitian(decode_matrix(member(j, "o_b"), dim_b, dim_b, "o_b"), "o_b"))};
}

}  // namespace ife::report
