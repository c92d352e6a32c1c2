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

#include "ife/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "ife/errors.hpp"

namespace ife {

namespace {

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

void require_hermitian(const Operator& a, const char* what) {
  if (!a.is_hermitian()) {
    throw NotHermitianError(std::string(what) + ": operator is not Hermitian (max deviation " +
                            std::to_string(a.hermiticity_error()) + ")");
  }
}

// Eigen 3.4.0's divide-and-conquer SVD occasionally returns a wrong V (or
// NaNs) with info() == Success on matrices with many exact zeros and repeated
// singular values. The singular values stay right in the cases seen; V does
// not. Callers that need V validate it and retry with one-sided Jacobi.
struct SvdResult {
  RealVector values;
  Matrix v;
};

SvdResult bdc_svd(const Matrix& a, bool want_v) {
  const unsigned opts = want_v ? static_cast<unsigned>(Eigen::ComputeFullV) : 0u;
  Eigen::BDCSVD<Matrix> svd(a, opts);
  if (svd.info() == Eigen::Success && svd.singularValues().allFinite() &&
      (!want_v || svd.matrixV().allFinite())) {
    return {svd.singularValues(), want_v ? Matrix(svd.matrixV()) : Matrix()};
  }
  return {};
}

SvdResult jacobi_svd(const Matrix& a, bool want_v) {
  const unsigned opts = want_v ? static_cast<unsigned>(Eigen::ComputeFullV) : 0u;
  Eigen::JacobiSVD<Matrix> svd(a, opts);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
    throw NumericalError("svd: decomposition did not converge");
  }
  return {svd.singularValues(), want_v ? Matrix(svd.matrixV()) : Matrix()};
}

RealVector singular_values(const Matrix& a) {
  SvdResult r = bdc_svd(a, false);
  return r.values.size() > 0 ? r.values : jacobi_svd(a, false).values;
}

}  // namespace

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw DimensionError("Operator requires a nonempty square matrix, got " +
                         std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
}

Operator Operator::identity(Index dim) { return Operator(Matrix::Identity(dim, dim)); }

Operator Operator::zero(Index dim) { return Operator(Matrix::Zero(dim, dim)); }

Operator Operator::diagonal(const Vector& diag) { return Operator(Matrix(diag.asDiagonal())); }

Operator Operator::diagonal(const RealVector& diag) {
  return Operator(Matrix(diag.cast<Complex>().asDiagonal()));
}

double Operator::hermiticity_error() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian(double rel_tol) const {
  return hermiticity_error() <= rel_tol * std::max(1.0, m_.norm());
}

Vector Operator::apply(const Vector& v) const {
  if (v.size() != dim()) {
    throw DimensionError("Operator::apply: vector length " + std::to_string(v.size()) +
                         " does not match dimension " + std::to_string(dim()));
  }
  return m_ * v;
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator+");
  return Operator(a.m_ + b.m_);
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator-");
  return Operator(a.m_ - b.m_);
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator*");
  return Operator(a.m_ * b.m_);
}

Operator operator*(Complex s, const Operator& a) { return Operator(s * a.m_); }

Operator operator*(double s, const Operator& a) { return Operator(s * a.m_); }

// ---------------------------------------------------------------------------
// SubspaceBasis

SubspaceBasis SubspaceBasis::empty(Index ambient_dim) {
  return SubspaceBasis(Matrix(ambient_dim, 0));
}

SubspaceBasis SubspaceBasis::full(Index ambient_dim) {
  return SubspaceBasis(Matrix::Identity(ambient_dim, ambient_dim));
}

SubspaceBasis SubspaceBasis::adopt(Matrix columns) { return SubspaceBasis(std::move(columns)); }

SubspaceBasis SubspaceBasis::from_orthonormal(Matrix columns) {
  if (columns.cols() > columns.rows()) {
    throw DimensionError("SubspaceBasis: more vectors than the ambient dimension");
  }
  const Matrix gram = columns.adjoint() * columns;
  const double err =
      (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (columns.cols() > 0 && !(err <= kOrthonormalTol)) {
    throw NumericalError("SubspaceBasis: columns are not orthonormal (max Gram error " +
                         std::to_string(err) + ")");
  }
  return SubspaceBasis(std::move(columns));
}

SubspaceBasis SubspaceBasis::orthonormalize(const Matrix& columns) {
  Matrix q = columns;
  for (Index k = 0; k < q.cols(); ++k) {
    const double original = q.col(k).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < k; ++j) {
        const Complex overlap = q.col(j).dot(q.col(k));
        q.col(k) -= overlap * q.col(j);
      }
    }
    const double norm = q.col(k).norm();
    if (!(norm > 1e-12 * std::max(1.0, original))) {
      throw NumericalError("SubspaceBasis::orthonormalize: columns are linearly dependent");
    }
    q.col(k) /= norm;
  }
  return from_orthonormal(std::move(q));
}

SubspaceBasis SubspaceBasis::concatenate(std::span<const SubspaceBasis> parts,
                                         Index ambient_dim) {
  Index total = 0;
  for (const auto& p : parts) {
    if (p.ambient_dim() != ambient_dim) {
      throw DimensionError("SubspaceBasis::concatenate: ambient dimension mismatch");
    }
    total += p.size();
  }
  Matrix v(ambient_dim, total);
  Index at = 0;
  for (const auto& p : parts) {
    v.middleCols(at, p.size()) = p.matrix();
    at += p.size();
  }
  return SubspaceBasis(std::move(v));
}

// ---------------------------------------------------------------------------
// Free functions

Operator kron(const Operator& a, const Operator& b) {
  return Operator(Matrix(Eigen::kroneckerProduct(a.matrix(), b.matrix())));
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

EigenDecomposition hermitian_eig(const Operator& a) {
  require_hermitian(a, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), SubspaceBasis::adopt(solver.eigenvectors())};
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

SubspaceBasis null_space(const Matrix& a, double rel_tol, double scale) {
  const Index n = a.cols();
  if (!(rel_tol > 0)) {
    throw InvalidParameterError("null_space: rel_tol must be positive");
  }
  if (a.rows() == 0) return SubspaceBasis::full(n);
  if (!a.allFinite()) throw NumericalError("null_space: non-finite matrix entries");

  auto kernel_of = [&](const SvdResult& svd) -> std::optional<SubspaceBasis> {
    const RealVector& s = svd.values;
    const double smax = s.size() > 0 ? s(0) : 0.0;
    if (smax == 0.0) return SubspaceBasis::full(n);
    const double cutoff = rel_tol * std::max(smax, scale);
    Index rank = 0;
    while (rank < s.size() && s(rank) > cutoff) ++rank;
    const Matrix v = svd.v.rightCols(n - rank);
    // Each kernel column must actually be annihilated and V must be unitary.
    const double slack = 2.0 * cutoff + 1e-12 * smax;
    for (Index j = 0; j < v.cols(); ++j) {
      if (!((a * v.col(j)).norm() <= slack)) return std::nullopt;
    }
    if (!((v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).norm() <= 1e-10)) {
      return std::nullopt;
    }
    return SubspaceBasis::adopt(v);
  };
  const SvdResult fast = bdc_svd(a, true);
  if (fast.values.size() > 0) {
    if (auto basis = kernel_of(fast)) return *std::move(basis);
  }
  if (auto basis = kernel_of(jacobi_svd(a, true))) return *std::move(basis);
  throw NumericalError("null_space: kernel vectors fail the residual check");
}

SubspaceBasis intersect_kernels(std::span<const Operator> ops, double rel_tol) {
  if (ops.empty()) throw InvalidParameterError("intersect_kernels: empty operator list");
  const Index d = ops.front().dim();
  for (const auto& op : ops) require_same_dim(ops.front(), op, "intersect_kernels");

  Matrix stacked(d * static_cast<Index>(ops.size()), d);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const double scale = 1.0 / std::max(1.0, spectral_norm(ops[k]));
    stacked.middleRows(static_cast<Index>(k) * d, d) = scale * ops[k].matrix();
  }
  return null_space(stacked, rel_tol);
}

bool subspace_equal(const SubspaceBasis& b1, const SubspaceBasis& b2, double tol) {
  if (b1.ambient_dim() != b2.ambient_dim()) {
    throw DimensionError("subspace_equal: ambient dimension mismatch");
  }
  if (b1.size() != b2.size()) return false;
  if (b1.size() == 0) return true;
  const Matrix cross = b1.matrix().adjoint() * b2.matrix();
  const RealVector s = singular_values(cross);
  for (Index i = 0; i < s.size(); ++i) {
    if (!(std::abs(s(i) - 1.0) <= tol)) return false;
  }
  return true;
}

double max_principal_angle(const SubspaceBasis& b1, const SubspaceBasis& b2) {
  if (b1.ambient_dim() != b2.ambient_dim()) {
    throw DimensionError("max_principal_angle: ambient dimension mismatch");
  }
  if (b1.size() != b2.size()) return std::numbers::pi / 2;
  if (b1.size() == 0) return 0.0;
  // Component of span(b2) outside span(b1); its singular values are the sines.
  const Matrix residual = b2.matrix() - b1.matrix() * (b1.matrix().adjoint() * b2.matrix());
  const double max_sine = std::min(1.0, spectral_norm(residual));
  return std::asin(max_sine);
}

Operator propagator(const Operator& h, double t) { return Propagator(h).at(t); }

Propagator::Propagator(const Operator& h) : eig_(hermitian_eig(h)) {}

Operator Propagator::at(double t) const {
  const Matrix& v = eig_.vectors.matrix();
  const Vector phases = (eig_.values.cast<Complex>() * Complex(0.0, -t)).array().exp();
  return Operator(v * phases.asDiagonal() * v.adjoint());
}

Vector Propagator::apply(double t, const Vector& psi) const {
  if (psi.size() != dim()) throw DimensionError("Propagator::apply: dimension mismatch");
  const Matrix& v = eig_.vectors.matrix();
  const Vector phases = (eig_.values.cast<Complex>() * Complex(0.0, -t)).array().exp();
  const Vector coeffs = v.adjoint() * psi;
  return v * phases.cwiseProduct(coeffs);
}

std::vector<EigenCluster> cluster_sorted(const RealVector& ascending, double tol) {
  std::vector<EigenCluster> out;
  Index start = 0;
  const Index n = ascending.size();
  for (Index i = 1; i <= n; ++i) {
    if (i == n || ascending(i) - ascending(i - 1) > tol) {
      const Index count = i - start;
      out.push_back({ascending.segment(start, count).mean(), start, count});
      start = i;
    }
  }
  return out;
}

}  // namespace ife
