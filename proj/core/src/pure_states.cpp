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

#include "ife/pure_states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ife/errors.hpp"

namespace ife {

namespace {

void require_hermitian(const Operator& op, const char* name) {
  if (!op.is_hermitian()) {
    throw NotHermitianError(std::string("BipartiteSystem: ") + name +
                            " is not Hermitian (max deviation " +
                            std::to_string(op.hermiticity_error()) + ")");
  }
}

// Shifted interaction H_I - alpha.
Operator shifted(const Operator& h_i, double alpha) {
  return h_i - alpha * Operator::identity(h_i.dim());
}

std::vector<EigenCluster> interaction_clusters(const Operator& h_i) {
  const EigenDecomposition eig = hermitian_eig(h_i);
  return cluster_sorted(eig.values, cluster_tolerance(h_i));
}

}  // namespace

BipartiteSystem::BipartiteSystem(Operator h_a, Operator h_b, Operator h_i)
    : h_a_(std::move(h_a)), h_b_(std::move(h_b)), h_i_(std::move(h_i)) {
  if (h_i_.dim() != h_a_.dim() * h_b_.dim()) {
    throw DimensionError("BipartiteSystem: h_i has dimension " + std::to_string(h_i_.dim()) +
                         ", expected dim_a*dim_b = " + std::to_string(h_a_.dim() * h_b_.dim()));
  }
  require_hermitian(h_a_, "h_a");
  require_hermitian(h_b_, "h_b");
  require_hermitian(h_i_, "h_i");
}

Operator lift_a(const BipartiteSystem& sys, const Operator& op_a) {
  if (op_a.dim() != sys.dim_a()) throw DimensionError("lift_a: dimension mismatch");
  return kron(op_a, Operator::identity(sys.dim_b()));
}

Operator lift_b(const BipartiteSystem& sys, const Operator& op_b) {
  if (op_b.dim() != sys.dim_b()) throw DimensionError("lift_b: dimension mismatch");
  return kron(Operator::identity(sys.dim_a()), op_b);
}

Operator build_h0(const BipartiteSystem& sys) {
  return lift_a(sys, sys.h_a()) + lift_b(sys, sys.h_b());
}

Operator build_total(const BipartiteSystem& sys) { return build_h0(sys) + sys.h_i(); }

SubspaceBasis IfeDecomposition::combined(Index ambient_dim) const {
  std::vector<SubspaceBasis> parts;
  parts.reserve(sectors.size());
  for (const auto& s : sectors) parts.push_back(s.basis);
  return SubspaceBasis::concatenate(parts, ambient_dim);
}

Index IfeDecomposition::ife_dimension() const {
  Index total = 0;
  for (const auto& s : sectors) total += s.basis.size();
  return total;
}

double cluster_tolerance(const Operator& h_i) {
  return 1e-8 * std::max(1.0, spectral_norm(h_i));
}

double commutator_scale(const BipartiteSystem& sys) {
  const Operator h0 = build_h0(sys);
  return std::max(spectral_norm(commutator(h0, sys.h_i())),
                  spectral_norm(h0) * spectral_norm(sys.h_i()));
}

SubspaceBasis commutator_kernel(const BipartiteSystem& sys, double rel_tol) {
  return null_space(commutator(build_h0(sys), sys.h_i()), rel_tol, commutator_scale(sys));
}

IfeDecomposition ife_sectors(const BipartiteSystem& sys, double rel_tol) {
  const Operator h0 = build_h0(sys);
  const double c_scale = commutator_scale(sys);
  // Normalized so roundoff in an analytically vanishing commutator stays
  // below the cutoff inside the stacked problem.
  const Operator c = c_scale > 0.0 ? (1.0 / c_scale) * commutator(h0, sys.h_i())
                                   : commutator(h0, sys.h_i());

  IfeDecomposition out;
  out.commutator_kernel = commutator_kernel(sys, rel_tol);
  // Every sector lies inside M, so an empty M settles the question.
  if (out.commutator_kernel.is_empty()) return out;

  for (const EigenCluster& cluster : interaction_clusters(sys.h_i())) {
    const Operator ops[] = {shifted(sys.h_i(), cluster.mean), c};
    SubspaceBasis basis = intersect_kernels(ops, rel_tol);
    if (!basis.is_empty()) out.sectors.push_back({cluster.mean, std::move(basis)});
  }
  return out;
}

IfeDecomposition ife_sectors_oracle(const BipartiteSystem& sys, double rel_tol) {
  const Operator h0 = build_h0(sys);

  // span{H_0^n : n = 0..d-1} equals span{P_k} over the distinct eigenvalues
  // of H_0, so Ker((H_I - alpha) H_0^n) for all n is Ker((H_I - alpha) P_k) for all k.
  const EigenDecomposition h0_eig = hermitian_eig(h0);
  std::vector<Matrix> projectors;
  for (const EigenCluster& cl :
       cluster_sorted(h0_eig.values, 1e-8 * std::max(1.0, spectral_norm(h0)))) {
    const auto v = h0_eig.vectors.matrix().middleCols(cl.first, cl.count);
    projectors.push_back(v * v.adjoint());
  }

  IfeDecomposition out;
  out.commutator_kernel = commutator_kernel(sys, rel_tol);

  for (const EigenCluster& cluster : interaction_clusters(sys.h_i())) {
    const Matrix shifted_hi = shifted(sys.h_i(), cluster.mean).matrix();
    std::vector<Operator> blocks;
    blocks.reserve(projectors.size());
    for (const Matrix& p : projectors) blocks.emplace_back(Matrix(shifted_hi * p));
    SubspaceBasis basis = intersect_kernels(blocks, rel_tol);
    if (!basis.is_empty()) out.sectors.push_back({cluster.mean, std::move(basis)});
  }
  return out;
}

bool ife_exists(const BipartiteSystem& sys, double rel_tol) {
  return !commutator_kernel(sys, rel_tol).is_empty();
}

std::optional<double> classify_pure(const Vector& psi, const BipartiteSystem& sys,
                                    double rel_tol) {
  if (psi.size() != sys.dim()) {
    throw DimensionError("classify_pure: state length " + std::to_string(psi.size()) +
                         " does not match system dimension " + std::to_string(sys.dim()));
  }
  if (!(std::abs(psi.norm() - 1.0) <= 1e-10)) {
    throw InvalidStateError("classify_pure: state is not normalized (norm " +
                            std::to_string(psi.norm()) + ")");
  }
  const Matrix& hi = sys.h_i().matrix();
  const Matrix c = commutator(build_h0(sys), sys.h_i()).matrix();

  const Vector hi_psi = hi * psi;
  const double alpha = psi.dot(hi_psi).real();
  const double eig_residual = (hi_psi - alpha * psi).norm();
  const double comm_residual = (c * psi).norm();

  if (eig_residual <= rel_tol * spectral_norm(hi) && comm_residual <= rel_tol * commutator_scale(sys)) {
    return alpha;
  }
  return std::nullopt;
}

}  // namespace ife
