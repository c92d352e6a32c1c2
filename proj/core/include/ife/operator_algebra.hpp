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

// Dense complex linear algebra used throughout the library: operators,
// orthonormal subspace bases, spectral decompositions, SVD-based null spaces
// and unitary propagators. Everything here is a pure function of its inputs.

#ifndef IFE_OPERATOR_ALGEBRA_HPP
#define IFE_OPERATOR_ALGEBRA_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ife {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative tolerance for Hermiticity checks: max|A - A^dagger| <= tol * max(1, ||A||_F).
inline constexpr double kHermitianTol = 1e-12;
/// Default null-space cutoff, relative to the largest singular value.
inline constexpr double kDefaultNullTol = 1e-10;
/// Orthonormality tolerance for SubspaceBasis columns.
inline constexpr double kOrthonormalTol = 1e-10;

/// Square complex matrix acting on a finite-dimensional Hilbert space.
class Operator {
 public:
  Operator() = default;
  /// Throws DimensionError unless `entries` is square and nonempty.
  explicit Operator(Matrix entries);

  static Operator identity(Index dim);
  static Operator zero(Index dim);
  static Operator diagonal(const Vector& diag);
  static Operator diagonal(const RealVector& diag);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Index row, Index col) const { return m_(row, col); }

  Operator adjoint() const { return Operator(m_.adjoint()); }
  double frobenius_norm() const { return m_.norm(); }
  /// max|A - A^dagger| <= rel_tol * max(1, ||A||_F)
  bool is_hermitian(double rel_tol = kHermitianTol) const;
  double hermiticity_error() const;

  Vector apply(const Vector& v) const;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);
  friend Operator operator*(double s, const Operator& a);

 private:
  Matrix m_;
};

/// Orthonormal set of column vectors spanning a subspace of C^ambient_dim.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;

  static SubspaceBasis empty(Index ambient_dim);
  static SubspaceBasis full(Index ambient_dim);
  /// Validates orthonormality to kOrthonormalTol; throws NumericalError otherwise.
  static SubspaceBasis from_orthonormal(Matrix columns);
  /// Takes columns whose orthonormality the caller already guarantees.
  static SubspaceBasis adopt(Matrix columns);
  /// Gram-Schmidt (with reorthogonalization) in column order. Phases of the
  /// leading column are preserved. Throws NumericalError if rank deficient.
  static SubspaceBasis orthonormalize(const Matrix& columns);

  Index ambient_dim() const { return v_.rows(); }
  Index size() const { return v_.cols(); }
  bool is_empty() const { return v_.cols() == 0; }
  const Matrix& matrix() const { return v_; }
  Vector vector(Index i) const { return v_.col(i); }
  /// Orthogonal projector V V^dagger.
  Matrix projector() const { return v_ * v_.adjoint(); }

  /// Column-wise concatenation; throws DimensionError on ambient mismatch.
  /// Does not re-orthonormalize: the inputs must be mutually orthogonal.
  static SubspaceBasis concatenate(std::span<const SubspaceBasis> parts, Index ambient_dim);

 private:
  explicit SubspaceBasis(Matrix v) : v_(std::move(v)) {}
  Matrix v_;
};

struct EigenDecomposition {
  RealVector values;      // ascending
  SubspaceBasis vectors;  // column k pairs with values[k]
};

/// Kronecker product, a-index major.
Operator kron(const Operator& a, const Operator& b);

/// a*b - b*a. Throws DimensionError on mismatch.
Operator commutator(const Operator& a, const Operator& b);

/// Throws NotHermitianError if `a` is not Hermitian within kHermitianTol,
/// NumericalError if the solver fails.
EigenDecomposition hermitian_eig(const Operator& a);

/// Largest singular value.
double spectral_norm(const Matrix& a);
inline double spectral_norm(const Operator& a) { return spectral_norm(a.matrix()); }

/// Orthonormal basis of the right singular vectors of `a` whose singular
/// values are <= rel_tol * max(sigma_max, scale). Works for rectangular `a`;
/// a zero matrix yields the full space. `scale` lets callers supply the
/// magnitude `a` would have without cancellation, e.g. ||A|| ||B|| for [A, B].
SubspaceBasis null_space(const Matrix& a, double rel_tol = kDefaultNullTol, double scale = 0.0);
inline SubspaceBasis null_space(const Operator& a, double rel_tol = kDefaultNullTol,
                                double scale = 0.0) {
  return null_space(a.matrix(), rel_tol, scale);
}

/// Null space of the vertically stacked operators, each block pre-scaled by
/// 1 / max(1, sigma_max(op)). Throws InvalidParameterError on an empty list
/// and DimensionError on mixed dimensions.
SubspaceBasis intersect_kernels(std::span<const Operator> ops, double rel_tol = kDefaultNullTol);

/// True iff both bases have equal size and every singular value of
/// B1^dagger B2 is within `tol` of 1.
bool subspace_equal(const SubspaceBasis& b1, const SubspaceBasis& b2, double tol);

/// Largest principal angle in radians, computed from sines so small angles
/// are resolved to machine precision. Bases of different size give pi/2.
double max_principal_angle(const SubspaceBasis& b1, const SubspaceBasis& b2);

/// exp(-i h t) via the spectral decomposition of h.
Operator propagator(const Operator& h, double t);

/// Reusable spectral form of exp(-i h t): one eigendecomposition, any number
/// of time points.
class Propagator {
 public:
  explicit Propagator(const Operator& h);

  Index dim() const { return eig_.values.size(); }
  Operator at(double t) const;
  /// exp(-i h t) psi in O(dim^2).
  Vector apply(double t, const Vector& psi) const;
  const EigenDecomposition& spectrum() const { return eig_; }

 private:
  EigenDecomposition eig_;
};

/// Single-linkage clusters of an ascending list; neighbours closer than
/// `tol` share a cluster. Returns the member index ranges.
struct EigenCluster {
  double mean;
  Index first;
  Index count;
};
std::vector<EigenCluster> cluster_sorted(const RealVector& ascending, double tol);

}  // namespace ife

#endif  // IFE_OPERATOR_ALGEBRA_HPP
