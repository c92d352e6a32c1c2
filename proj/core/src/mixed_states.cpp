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

#include "ife/mixed_states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "ife/errors.hpp"

namespace ife {

DensityMatrix::DensityMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw InvalidStateError("DensityMatrix: matrix must be square and nonempty");
  }
  if (!m_.allFinite()) throw InvalidStateError("DensityMatrix: non-finite entries");
  const double herm_err = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > kHermitianTol * std::max(1.0, m_.norm())) {
    throw InvalidStateError("DensityMatrix: not Hermitian (max deviation " +
                            std::to_string(herm_err) + ")");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-10) {
    throw InvalidStateError("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  // Hermitian part only; the anti-Hermitian residue is below kHermitianTol.
  const Matrix herm = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("DensityMatrix: eigensolver failed");
  if (solver.eigenvalues()(0) < -1e-10) {
    throw InvalidStateError("DensityMatrix: negative eigenvalue " +
                            std::to_string(solver.eigenvalues()(0)));
  }
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  if (!(std::abs(psi.norm() - 1.0) <= 1e-10)) {
    throw InvalidStateError("DensityMatrix::pure: state is not normalized");
  }
  return DensityMatrix(psi * psi.adjoint());
}

SectorBlockForm project_to_sectors(const DensityMatrix& rho, const IfeDecomposition& dec) {
  const Matrix& r = rho.matrix();
  SectorBlockForm form;
  double captured = 0.0;
  for (const auto& sector : dec.sectors) {
    if (sector.basis.ambient_dim() != rho.dim()) {
      throw DimensionError("project_to_sectors: sector ambient dimension " +
                           std::to_string(sector.basis.ambient_dim()) +
                           " does not match density matrix dimension " +
                           std::to_string(rho.dim()));
    }
    const Matrix& b = sector.basis.matrix();
    Matrix block = b.adjoint() * r * b;
    captured += block.trace().real();
    form.alphas.push_back(sector.alpha);
    form.blocks.push_back(std::move(block));
  }
  form.residual_weight = 1.0 - captured;

  for (std::size_t a = 0; a < dec.sectors.size(); ++a) {
    for (std::size_t b = a + 1; b < dec.sectors.size(); ++b) {
      const Matrix cross =
          dec.sectors[a].basis.matrix().adjoint() * r * dec.sectors[b].basis.matrix();
      form.cross_norm = std::max(form.cross_norm, cross.norm());
    }
  }

  const Matrix p = dec.combined(rho.dim()).projector();
  form.leakage_norm = (r - p * r * p).norm();
  return form;
}

bool is_ife_mixed(const DensityMatrix& rho, const IfeDecomposition& dec,
                  std::optional<double> tol) {
  const double t = tol.value_or(1e-8 * rho.matrix().norm());
  const SectorBlockForm form = project_to_sectors(rho, dec);
  return form.leakage_norm <= t && form.cross_norm <= t;
}

DensityMatrix random_ife_mixed(const IfeDecomposition& dec, std::span<const double> weights,
                               std::uint64_t seed) {
  if (weights.size() != dec.sectors.size()) {
    throw InvalidParameterError("random_ife_mixed: " + std::to_string(weights.size()) +
                                " weights for " + std::to_string(dec.sectors.size()) +
                                " sectors");
  }
  if (dec.sectors.empty()) {
    throw InvalidParameterError("random_ife_mixed: decomposition has no sectors");
  }
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidParameterError("random_ife_mixed: negative weight");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidParameterError("random_ife_mixed: weights sum to " + std::to_string(total));
  }

  const Index d = dec.sectors.front().basis.ambient_dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Matrix rho = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < dec.sectors.size(); ++k) {
    const Matrix& b = dec.sectors[k].basis.matrix();
    const Index n = b.cols();
    Matrix g(n, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) g(i, j) = Complex(normal(rng), normal(rng));
    }
    if (weights[k] == 0.0) continue;
    Matrix block = g.adjoint() * g;
    block *= weights[k] / block.trace().real();
    rho += b * block * b.adjoint();
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

double mixed_deviation(const DensityMatrix& rho, const BipartiteSystem& sys,
                       std::span<const double> times) {
  if (rho.dim() != sys.dim()) {
    throw DimensionError("mixed_deviation: density matrix dimension " +
                         std::to_string(rho.dim()) + " does not match system dimension " +
                         std::to_string(sys.dim()));
  }
  const Propagator full(build_total(sys));
  const Propagator free(build_h0(sys));
  const Matrix& r = rho.matrix();
  double worst = 0.0;
  for (double t : times) {
    const Matrix u = full.at(t).matrix();
    const Matrix u0 = free.at(t).matrix();
    const double dev = (u * r * u.adjoint() - u0 * r * u0.adjoint()).norm();
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace ife
