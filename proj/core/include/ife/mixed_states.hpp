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

// Mixed IFE states: density matrices whose evolution under H matches the
// free evolution under H_0. Structurally these are block diagonal across the
// IFE sectors, rho = sum_alpha B_alpha p_alpha B_alpha^dagger with each
// p_alpha positive semidefinite.

#ifndef IFE_MIXED_STATES_HPP
#define IFE_MIXED_STATES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ife/operator_algebra.hpp"
#include "ife/pure_states.hpp"

namespace ife {

/// Hermitian, unit-trace, positive semidefinite matrix (validated on construction).
class DensityMatrix {
 public:
  /// Throws InvalidStateError when Hermiticity (1e-12 relative), trace
  /// (1e-10) or positivity (eigenvalues >= -1e-10) fail.
  explicit DensityMatrix(Matrix entries);

  /// |psi><psi| for a unit vector psi.
  static DensityMatrix pure(const Vector& psi);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// Coordinates of rho relative to an IfeDecomposition.
struct SectorBlockForm {
  std::vector<double> alphas;
  /// p_alpha = B_alpha^dagger rho B_alpha, one per sector.
  std::vector<Matrix> blocks;
  /// 1 - sum_alpha tr(p_alpha): weight of rho outside the sectors.
  double residual_weight = 0.0;
  /// ||rho - P rho P||_F with P the projector onto the direct sum of sectors.
  double leakage_norm = 0.0;
  /// max over alpha != beta of ||B_alpha^dagger rho B_beta||_F (0 for fewer than two sectors).
  double cross_norm = 0.0;
};

SectorBlockForm project_to_sectors(const DensityMatrix& rho, const IfeDecomposition& dec);

/// Block-structure test. `tol` defaults to 1e-8 * ||rho||_F and bounds both
/// the leakage outside the sectors and every cross-sector block.
bool is_ife_mixed(const DensityMatrix& rho, const IfeDecomposition& dec,
                  std::optional<double> tol = std::nullopt);

/// Random IFE mixed state: per sector a seeded complex Gaussian G, block
/// G^dagger G scaled to trace weights[k]. Deterministic for a given seed.
/// Throws InvalidParameterError on a weight/sector count mismatch or weights
/// that are negative or do not sum to 1.
DensityMatrix random_ife_mixed(const IfeDecomposition& dec, std::span<const double> weights,
                               std::uint64_t seed);

/// max over t of ||U_H rho U_H^dagger - U_0 rho U_0^dagger||_F.
double mixed_deviation(const DensityMatrix& rho, const BipartiteSystem& sys,
                       std::span<const double> times);

}  // namespace ife

#endif  // IFE_MIXED_STATES_HPP
