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


#include "golden_support.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ife/report/commands.hpp"

namespace ife::report::testing {

RunResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string json_diff(const Json& a, const Json& b, const std::string& path) {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) <= 1e-9 * scale ? "" : path + " (" + a.dump() + " vs " + b.dump() + ")";
  }
  if (a.type() != b.type()) return path + " (type)";
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (it.key() == "timing_ms") continue;
      if (!b.contains(it.key())) return path + "." + it.key() + " (missing)";
      if (auto d = json_diff(it.value(), b.at(it.key()), path + "." + it.key()); !d.empty()) return d;
    }
    for (auto it = b.begin(); it != b.end(); ++it) {
      if (!a.contains(it.key())) return path + "." + it.key() + " (extra)";
    }
    return "";
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return path + " (length)";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (auto d = json_diff(a[i], b[i], path + "[" + std::to_string(i) + "]"); !d.empty()) return d;
    }
    return "";
  }
  return a == b ? "" : path + " (" + a.dump() + " vs " + b.dump() + ")";
}

std::vector<GoldenCase> golden_cases(const std::string& data_dir) {
  auto data = [&](const std::string& rel) { return data_dir + "/" + rel; };
  const std::string n2 = data("systems/spin_star_n2.json");
  return {
      {"sectors_spin_star_n2", {"sectors", n2}, kOk},
      {"sectors_zero_interaction", {"sectors", data("systems/zero_interaction.json")}, kOk},
      {"sectors_generic_coupled", {"sectors", data("systems/generic_coupled.json")}, kEmptyDecomposition},
      {"sectors_non_hermitian", {"sectors", data("invalid/non_hermitian.json")}, kInputError},
      {"verify_all_up_n2", {"verify", n2, "--state", data("states/state_all_up_n2.json"), "--steps", "11"}, kOk},
      {"verify_down_n2",
       {"verify", n2, "--state", data("states/state_down_n2.json"), "--steps", "11", "--observables",
        data("states/observables_n2.json")},
       kNotIfe},
      {"spin_star_n2_check_all",
       {"spin-star", "--n", "2", "--omega0", "1.0", "--omega", "0.7", "--gammas", "3,4", "--check-all"},
       kOk},
      {"spin_star_n3",
       {"spin-star", "--n", "3", "--omega0", "0.3", "--omega", "1.1", "--gammas", "0.5,1.0,0.25"},
       kOk},
      {"spin_star_resonance",
       {"spin-star", "--n", "2", "--omega0", "1.0", "--omega", "1.0", "--gammas", "3,4"},
       kResonance},
      {"oracle_diff_n3", {"oracle-diff", data("systems/spin_star_n3.json")}, kOk},
      {"mixed_rho_ife_n2", {"mixed", n2, "--rho", data("states/rho_ife_n2.json"), "--steps", "11"}, kOk},
      {"mixed_rho_product_n2",
       {"mixed", n2, "--rho", data("states/rho_product_n2.json"), "--steps", "11"},
       kNotIfe},
      {"mixed_sample_n2", {"mixed", n2, "--sample", "3", "--steps", "11"}, kOk},
  };
}

}  // namespace ife::report::testing
