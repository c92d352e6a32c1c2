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

#include "ife/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ife/errors.hpp"

namespace ife {

namespace {

void require_unit(const Vector& psi, const char* what) {
  if (!(std::abs(psi.norm() - 1.0) <= 1e-10)) {
    throw InvalidStateError(std::string(what) + ": state is not normalized (norm " +
                            std::to_string(psi.norm()) + ")");
  }
}

void require_length(const BipartiteSystem& sys, const Vector& psi, const char* what) {
  if (psi.size() != sys.dim()) {
    throw DimensionError(std::string(what) + ": state length " + std::to_string(psi.size()) +
                         " does not match system dimension " + std::to_string(sys.dim()));
  }
}

// Evolves psi once per grid point and fills deviation and energies.
EvolutionReport trace(const BipartiteSystem& sys, const Vector& psi, double alpha,
                      std::span<const double> times, const char* what) {
  require_length(sys, psi, what);
  require_unit(psi, what);

  const Propagator full(build_total(sys));
  const Propagator free(build_h0(sys));
  const Matrix ha = lift_a(sys, sys.h_a()).matrix();
  const Matrix hb = lift_b(sys, sys.h_b()).matrix();

  EvolutionReport out;
  out.times.assign(times.begin(), times.end());
  out.alpha = alpha;
  out.deviation.reserve(times.size());
  out.energy_a.reserve(times.size());
  out.energy_b.reserve(times.size());
  for (double t : times) {
    const Vector psi_t = full.apply(t, psi);
    const Vector free_t = std::polar(1.0, -alpha * t) * free.apply(t, psi);
    out.deviation.push_back((psi_t - free_t).norm());
    out.energy_a.push_back(psi_t.dot(ha * psi_t).real());
    out.energy_b.push_back(psi_t.dot(hb * psi_t).real());
  }
  out.max_deviation =
      out.deviation.empty() ? 0.0 : *std::max_element(out.deviation.begin(), out.deviation.end());
  return out;
}

void require_free_invariant(const Operator& o, const Operator& h, const char* name) {
  if (o.dim() != h.dim()) {
    throw DimensionError(std::string("covariance_trace: ") + name + " has the wrong dimension");
  }
  const double err = commutator(o, h).frobenius_norm();
  const double scale = std::max(1.0, o.frobenius_norm() * h.frobenius_norm());
  if (err > 1e-10 * scale) {
    throw FreeInvarianceError(std::string("covariance_trace: ") + name +
                              " does not commute with its free Hamiltonian (||[O, H]||_F = " +
                              std::to_string(err) + ")");
  }
}

}  // namespace

std::vector<double> uniform_grid(double t_max, std::size_t points) {
  if (points == 0) throw InvalidParameterError("uniform_grid: need at least one point");
  if (points == 1) return {0.0};
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = t_max * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  return grid;
}

Vector evolve_pure(const Operator& h, const Vector& psi, double t) {
  if (psi.size() != h.dim()) throw DimensionError("evolve_pure: dimension mismatch");
  require_unit(psi, "evolve_pure");
  return Propagator(h).apply(t, psi);
}

EvolutionReport ife_deviation_trace(const BipartiteSystem& sys, const Vector& psi, double alpha,
                                    std::span<const double> times) {
  return trace(sys, psi, alpha, times, "ife_deviation_trace");
}

EvolutionReport energy_trace(const BipartiteSystem& sys, const Vector& psi,
                             std::span<const double> times) {
  require_length(sys, psi, "energy_trace");
  const double alpha = psi.dot(sys.h_i().matrix() * psi).real();
  return trace(sys, psi, alpha, times, "energy_trace");
}

EvolutionReport covariance_trace(const BipartiteSystem& sys, const Vector& psi,
                                 const Operator& o_a, const Operator& o_b,
                                 std::span<const double> times) {
  require_free_invariant(o_a, sys.h_a(), "o_a");
  require_free_invariant(o_b, sys.h_b(), "o_b");
  require_length(sys, psi, "covariance_trace");
  require_unit(psi, "covariance_trace");

  const double alpha = psi.dot(sys.h_i().matrix() * psi).real();
  EvolutionReport out = trace(sys, psi, alpha, times, "covariance_trace");

  const Propagator full(build_total(sys));
  const Matrix joint = kron(o_a, o_b).matrix();
  const Matrix oa = lift_a(sys, o_a).matrix();
  const Matrix ob = lift_b(sys, o_b).matrix();
  std::vector<Complex> cov;
  cov.reserve(times.size());
  for (double t : times) {
    const Vector psi_t = full.apply(t, psi);
    cov.push_back(psi_t.dot(joint * psi_t) - psi_t.dot(oa * psi_t) * psi_t.dot(ob * psi_t));
  }
  out.covariance = std::move(cov);
  return out;
}

double oscillation_amplitude(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return 0.5 * (*hi - *lo);
}

}  // namespace ife
