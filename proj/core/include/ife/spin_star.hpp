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

// Non-homogeneous spin star: a central spin-1/2 coupled by flip-flop terms
// of strengths gamma_i to N bath spins,
//
//   H_0 = omega0 sigma_z + omega sum_i sigma_z^(i)
//   H_I = sum_i gamma_i (sigma_+ sigma_-^(i) + sigma_- sigma_+^(i)).
//
// Away from resonance (omega0 != omega) every IFE state lies in Ker H_I and
// has the closed form
//
//   |psi> = |+> sum C+_{r,nu} A_+ |r, r, nu> + |-> sum C-_{r,nu} A_- |r, -r, nu>,
//
// where A_pm = exp(sum_i g_pm^(i) sigma_z^(i)) with g_pm^(i) = ±(1/2) ln(gamma_i / gamma)
// turn the weighted ladder operators sum_i gamma_i sigma_pm^(i) into gamma S_pm,
// and |r, ±r, nu> are the highest/lowest weight states of the bath spins.
//
// Conventions: the central spin basis is (|+>, |->) with sigma_z|±> = ±|±>;
// bath spin i is the i-th tensor factor (spin 1 most significant) with basis
// (|up>, |down>).

#ifndef IFE_SPIN_STAR_HPP
#define IFE_SPIN_STAR_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ife/operator_algebra.hpp"
#include "ife/pure_states.hpp"

namespace ife {

/// Integer or half-odd-integer, stored as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  std::string str() const;

  constexpr auto operator<=>(const HalfInteger&) const = default;

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

struct SpinStarParams {
  int n_spins = 1;
  double omega0 = 0.0;
  double omega = 0.0;
  std::vector<double> gammas;

  /// N >= 1, gammas.size() == N, every gamma_i nonzero and finite.
  /// Throws InvalidParameterError.
  void validate() const;
};

enum class Branch { plus, minus };
enum class Weight { highest, lowest };

/// Orthonormalized images A_pm |r, ±r, nu> on the 2^N bath space.
struct DressedBasis {
  Branch branch;
  HalfInteger r;
  SubspaceBasis vectors;
};

struct WeightLabel {
  HalfInteger r;
  int nu = 1;  // 1-based
  auto operator<=>(const WeightLabel&) const = default;
};

/// Coefficients C^pm_{r,nu} of the closed-form IFE state.
struct SpinStarIfeCoefficients {
  std::map<WeightLabel, Complex> plus;
  std::map<WeightLabel, Complex> minus;
};

namespace pauli {
Operator sigma_x();
Operator sigma_y();
Operator sigma_z();
/// |up><down| in the (|up>, |down>) basis; for the central spin |+><-|.
Operator sigma_plus();
Operator sigma_minus();
}  // namespace pauli

/// `op` acting on bath spin `site` (1-based) of `n` spins.
Operator bath_site_operator(const Operator& op, int site, int n);
/// S_z = (1/2) sum_i sigma_z^(i)
Operator total_sz(int n);
/// S_+ = sum_i sigma_+^(i)
Operator total_s_plus(int n);
Operator total_s_minus(int n);

BipartiteSystem build_spin_star(const SpinStarParams& p);

/// sqrt(sum gamma_i^2); throws InvalidParameterError when every gamma_i is zero.
double gamma_norm(std::span<const double> gammas);

/// g_pm^(i) = ±(1/2) ln(gamma_i / gamma). Requires gamma_i > 0.
std::vector<double> dressing_exponents(const SpinStarParams& p, Branch branch);

/// Diagonal A_pm = exp(sum_i g_pm^(i) sigma_z^(i)). A_+ A_- = I.
Operator dressing_operator(const SpinStarParams& p, Branch branch);

/// Total-spin quantum numbers of n spin-1/2 particles, descending from n/2.
std::vector<HalfInteger> admissible_spins(int n);

/// Multiplicity nu(r) = C(n, n/2 - r) - C(n, n/2 - r - 1), C(n, -1) = 0.
std::uint64_t multiplicity(int n, HalfInteger r);

/// Orthonormal basis of Ker(S_+) ∩ {S_z = r} (highest) or Ker(S_-) ∩ {S_z = -r}
/// (lowest). Labelling is deterministic: the null space is re-expressed by
/// Gram-Schmidt on projected computational basis states, taken in order of
/// descending projected norm and then ascending index.
SubspaceBasis weight_basis(int n, HalfInteger r, Weight which);

/// Dressed blocks ordered by descending r, plus before minus.
std::vector<DressedBasis> dressed_bases(const SpinStarParams& p);

/// Single alpha = 0 sector spanned by |±> (x) A_pm |r, ±r, nu>, orthonormalized
/// per (branch, r) block. The commutator kernel is set to the same basis.
/// Throws ResonanceError when omega0 == omega.
IfeDecomposition spin_star_ife_basis(const SpinStarParams& p);

/// Normalized closed-form state for the given coefficients (undressed
/// weight_basis vectors, nu 1-based). Throws InvalidParameterError on an
/// unknown label or an all-zero coefficient set.
Vector assemble_ife_state(const SpinStarParams& p, const SpinStarIfeCoefficients& coeffs);

struct ClaimResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

struct SpinStarClaimReport {
  std::vector<ClaimResult> claims;
  Index ife_dimension = 0;
  Index expected_dimension = 0;
  bool all_passed() const;
};

/// Tolerance on principal angles when comparing kernels.
inline constexpr double kSubspaceAngleTol = 1e-7;

/// Checks, against the numerical pipeline:
///  1. Ker[H_0, H_I] == Ker H_I
///  2. exactly one sector, with alpha = 0
///  3. the closed-form basis spans the numerical N_0 (and has dimension 2 sum nu(r))
///  4. each closed-form vector is an eigenvector of H_0 and of H with
///     eigenvalue ±(omega0 + 2 r omega)
/// Throws ResonanceError when omega0 == omega.
SpinStarClaimReport verify_spin_star_claims(const SpinStarParams& p,
                                            double rel_tol = kDefaultNullTol);

}  // namespace ife

#endif  // IFE_SPIN_STAR_HPP
