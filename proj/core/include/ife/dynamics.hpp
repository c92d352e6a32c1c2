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

#ifndef IFE_DYNAMICS_HPP
#define IFE_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ife/operator_algebra.hpp"
#include "ife/pure_states.hpp"

namespace ife {

/// Per-time observables of a pure state evolving under the full Hamiltonian.
///
/// Every trace carries the IFE deviation
///   ||exp(-iHt) psi - exp(-i alpha t) exp(-i H_0 t) psi||
/// and the subsystem energies <H_A (x) I>, <I (x) H_B>. `covariance` is only
/// filled by covariance_trace().
struct EvolutionReport {
  std::vector<double> times;
  double alpha = 0.0;
  std::vector<double> deviation;
  std::vector<double> energy_a;
  std::vector<double> energy_b;
  std::optional<std::vector<Complex>> covariance;
  double max_deviation = 0.0;
};

inline constexpr double kDefaultTimeMax = 10.0;
inline constexpr std::size_t kDefaultTimePoints = 101;

/// `points` equally spaced values on [0, t_max]; a single point gives {0}.
std::vector<double> uniform_grid(double t_max = kDefaultTimeMax,
                                 std::size_t points = kDefaultTimePoints);

/// exp(-iht) psi. Throws InvalidStateError unless ||psi|| = 1 within 1e-10.
Vector evolve_pure(const Operator& h, const Vector& psi, double t);

EvolutionReport ife_deviation_trace(const BipartiteSystem& sys, const Vector& psi, double alpha,
                                    std::span<const double> times);

/// Energy trace; the deviation is measured against alpha = <psi|H_I|psi>.
EvolutionReport energy_trace(const BipartiteSystem& sys, const Vector& psi,
                             std::span<const double> times);

/// covariance[k] = <O_A (x) O_B> - <O_A (x) I><I (x) O_B> at each time.
/// Throws FreeInvarianceError unless [o_a, H_A] = 0 and [o_b, H_B] = 0
/// within 1e-10 (relative to the operator norms).
EvolutionReport covariance_trace(const BipartiteSystem& sys, const Vector& psi,
                                 const Operator& o_a, const Operator& o_b,
                                 std::span<const double> times);

/// (max - min) / 2 of a real trace.
double oscillation_amplitude(std::span<const double> values);

}  // namespace ife

#endif  // IFE_DYNAMICS_HPP
