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


// File formats. Complex matrices are nested arrays of [re, im] pairs,
// row-major; vectors are arrays of pairs.

#ifndef IFE_REPORT_IO_HPP
#define IFE_REPORT_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "ife/ife.hpp"
#include "ife/report/canonical_json.hpp"

namespace ife::report {

/// Malformed or unreadable input. `field` names the offending entry
/// (a JSON path such as "h_i[2][1]", or a flag).
class InputError : public std::runtime_error {
 public:
  InputError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Relative Hermiticity tolerance applied when loading matrices.
inline constexpr double kLoadHermitianTol = 1e-10;

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Json parse_json_text(const std::string& text, const std::string& what);

Json encode_matrix(const Matrix& m);
Json encode_vector(const Vector& v);
Matrix decode_matrix(const Json& j, Index rows, Index cols, const std::string& field);
Vector decode_vector(const Json& j, Index dim, const std::string& field);

/// Checks ||M - M^dagger||_F <= kLoadHermitianTol * ||M||_F and returns the
/// Hermitian part.
Matrix require_hermitian(const Matrix& m, const std::string& field);

struct SystemFile {
  Index dim_a = 0;
  Index dim_b = 0;
  Matrix h_a;
  Matrix h_b;
  Matrix h_i;
  std::optional<std::string> label;

  BipartiteSystem system() const;
};

SystemFile parse_system(const Json& j);
Json system_to_json(const SystemFile& f);
SystemFile system_file_from(const BipartiteSystem& sys, std::optional<std::string> label);

/// {"state": [[re, im], ...]}, normalized to 1e-10.
Vector parse_state(const Json& j, Index dim);
/// {"rho": matrix}, validated as a density matrix.
DensityMatrix parse_density(const Json& j, Index dim);

struct Observables {
  Operator o_a;
  Operator o_b;
};
/// {"o_a": matrix, "o_b": matrix}, Hermitian, sized to the subsystems.
Observables parse_observables(const Json& j, Index dim_a, Index dim_b);

}  // namespace ife::report

#endif  // IFE_REPORT_IO_HPP
