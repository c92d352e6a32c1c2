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

#include "ife/spin_star.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ife/errors.hpp"

namespace ife {

namespace {

constexpr int kMaxSpins = 24;

Index bath_dim(int n) { return Index{1} << n; }

// Bath spin `site` (1-based) is bit n - site of the basis index; bit 0 = up.
int site_bit(int site, int n) { return n - site; }

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  return c;
}

void require_admissible(int n, HalfInteger r, const char* what) {
  if (n < 1 || n > kMaxSpins) {
    throw InvalidParameterError(std::string(what) + ": number of spins out of range");
  }
  const int tr = r.twice();
  if (tr < 0 || tr > n || (n - tr) % 2 != 0) {
    throw InvalidParameterError(std::string(what) + ": r = " + r.str() +
                                " is not admissible for N = " + std::to_string(n));
  }
}

// Basis indices with S_z = twice_m / 2, ascending.
std::vector<Index> sector_states(int n, int twice_m) {
  std::vector<Index> out;
  if ((n + twice_m) % 2 != 0 || twice_m > n || twice_m < -n) return out;
  const int downs = (n - twice_m) / 2;
  for (Index s = 0; s < bath_dim(n); ++s) {
    if (std::popcount(static_cast<std::uint64_t>(s)) == downs) out.push_back(s);
  }
  return out;
}

// Matrix of S_+ (raise = true) or S_- restricted to a source S_z sector.
Matrix ladder_block(int n, const std::vector<Index>& source, const std::vector<Index>& target,
                    bool raise) {
  Matrix m = Matrix::Zero(static_cast<Index>(target.size()), static_cast<Index>(source.size()));
  for (std::size_t col = 0; col < source.size(); ++col) {
    const Index s = source[col];
    for (int b = 0; b < n; ++b) {
      const bool down = (s >> b) & 1;
      if (down != raise) continue;
      const Index t = s ^ (Index{1} << b);
      const auto it = std::lower_bound(target.begin(), target.end(), t);
      m(it - target.begin(), static_cast<Index>(col)) += 1.0;
    }
  }
  return m;
}

// Re-expresses span(k) deterministically: Gram-Schmidt on the projections of
// unit vectors, visited by descending projected norm then ascending index.
Matrix canonical_span(const Matrix& k) {
  const Index dim = k.rows();
  const Index want = k.cols();
  std::vector<Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<long long> key(static_cast<std::size_t>(dim));
  for (Index j = 0; j < dim; ++j) key[j] = std::llround(k.row(j).norm() * 1e9);
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return key[a] > key[b]; });

  Matrix out(dim, want);
  Index accepted = 0;
  for (Index j : order) {
    if (accepted == want) break;
    Vector v = k * k.row(j).adjoint();
    for (int pass = 0; pass < 2; ++pass) {
      for (Index c = 0; c < accepted; ++c) v -= out.col(c).dot(v) * out.col(c);
    }
    const double norm = v.norm();
    if (norm > 1e-6) out.col(accepted++) = v / norm;
  }
  if (accepted != want) throw NumericalError("weight_basis: could not fix a canonical basis");
  return out;
}

Vector lift_central(const Vector& bath, Branch branch) {
  const Index d = bath.size();
  Vector out = Vector::Zero(2 * d);
  out.segment(branch == Branch::plus ? 0 : d, d) = bath;
  return out;
}

void require_off_resonance(const SpinStarParams& p, const char* what) {
  if (p.omega0 == p.omega) {
    throw ResonanceError(std::string(what) +
                         ": omega0 == omega, the commutator [H_0, H_I] vanishes identically; "
                         "use the generic sector computation instead");
  }
}

}  // namespace

std::string HalfInteger::str() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

void SpinStarParams::validate() const {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw InvalidParameterError("spin star: n_spins must be in [1, " +
                                std::to_string(kMaxSpins) + "]");
  }
  if (static_cast<int>(gammas.size()) != n_spins) {
    throw InvalidParameterError("spin star: expected " + std::to_string(n_spins) +
                                " couplings, got " + std::to_string(gammas.size()));
  }
  if (!std::isfinite(omega0) || !std::isfinite(omega)) {
    throw InvalidParameterError("spin star: non-finite frequency");
  }
  for (double g : gammas) {
    if (!std::isfinite(g) || g == 0.0) {
      throw InvalidParameterError(
          "spin star: couplings must be finite and nonzero (drop decoupled spins)");
    }
  }
}

namespace pauli {

Operator sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator(m);
}

Operator sigma_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return Operator(m);
}

Operator sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator(m);
}

Operator sigma_plus() {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  return Operator(m);
}

Operator sigma_minus() {
  Matrix m(2, 2);
  m << 0, 0, 1, 0;
  return Operator(m);
}

}  // namespace pauli

Operator bath_site_operator(const Operator& op, int site, int n) {
  if (op.dim() != 2) throw DimensionError("bath_site_operator: expected a 2x2 operator");
  if (site < 1 || site > n) throw InvalidParameterError("bath_site_operator: site out of range");
  return kron(kron(Operator::identity(bath_dim(site - 1)), op),
              Operator::identity(bath_dim(n - site)));
}

Operator total_sz(int n) {
  RealVector diag(bath_dim(n));
  for (Index s = 0; s < diag.size(); ++s) {
    diag(s) = 0.5 * (n - 2 * std::popcount(static_cast<std::uint64_t>(s)));
  }
  return Operator::diagonal(diag);
}

Operator total_s_plus(int n) {
  Matrix m = Matrix::Zero(bath_dim(n), bath_dim(n));
  for (int site = 1; site <= n; ++site) m += bath_site_operator(pauli::sigma_plus(), site, n).matrix();
  return Operator(m);
}

Operator total_s_minus(int n) { return total_s_plus(n).adjoint(); }

BipartiteSystem build_spin_star(const SpinStarParams& p) {
  p.validate();
  const int n = p.n_spins;
  const Operator h_a = p.omega0 * pauli::sigma_z();
  Matrix hb = Matrix::Zero(bath_dim(n), bath_dim(n));
  Matrix hi = Matrix::Zero(2 * bath_dim(n), 2 * bath_dim(n));
  for (int site = 1; site <= n; ++site) {
    hb += p.omega * bath_site_operator(pauli::sigma_z(), site, n).matrix();
    const Operator flip_in = kron(pauli::sigma_plus(), bath_site_operator(pauli::sigma_minus(), site, n));
    const Operator flip_out = kron(pauli::sigma_minus(), bath_site_operator(pauli::sigma_plus(), site, n));
    hi += p.gammas[static_cast<std::size_t>(site - 1)] * (flip_in + flip_out).matrix();
  }
  return BipartiteSystem(h_a, Operator(hb), Operator(hi));
}

double gamma_norm(std::span<const double> gammas) {
  double sum = 0.0;
  for (double g : gammas) sum += g * g;
  if (!(sum > 0.0)) throw InvalidParameterError("gamma_norm: all couplings are zero");
  return std::sqrt(sum);
}

std::vector<double> dressing_exponents(const SpinStarParams& p, Branch branch) {
  p.validate();
  for (double g : p.gammas) {
    if (!(g > 0.0)) {
      throw InvalidParameterError(
          "dressing_operator: couplings must be positive for real dressing exponents");
    }
  }
  const double gamma = gamma_norm(p.gammas);
  const double sign = branch == Branch::plus ? 1.0 : -1.0;
  std::vector<double> g;
  g.reserve(p.gammas.size());
  for (double gi : p.gammas) g.push_back(sign * 0.5 * std::log(gi / gamma));
  return g;
}

Operator dressing_operator(const SpinStarParams& p, Branch branch) {
  const std::vector<double> g = dressing_exponents(p, branch);
  const int n = p.n_spins;
  RealVector diag(bath_dim(n));
  for (Index s = 0; s < diag.size(); ++s) {
    double exponent = 0.0;
    for (int site = 1; site <= n; ++site) {
      const bool down = (s >> site_bit(site, n)) & 1;
      exponent += down ? -g[site - 1] : g[site - 1];
    }
    diag(s) = std::exp(exponent);
  }
  return Operator::diagonal(diag);
}

std::vector<HalfInteger> admissible_spins(int n) {
  if (n < 1 || n > kMaxSpins) throw InvalidParameterError("admissible_spins: n out of range");
  std::vector<HalfInteger> out;
  for (int tr = n; tr >= 0; tr -= 2) out.push_back(HalfInteger::from_twice(tr));
  return out;
}

std::uint64_t multiplicity(int n, HalfInteger r) {
  require_admissible(n, r, "multiplicity");
  const int k = (n - r.twice()) / 2;  // N/2 - r
  return binomial(n, k) - binomial(n, k - 1);
}

SubspaceBasis weight_basis(int n, HalfInteger r, Weight which) {
  require_admissible(n, r, "weight_basis");
  const bool highest = which == Weight::highest;
  const int twice_m = highest ? r.twice() : -r.twice();
  const std::vector<Index> source = sector_states(n, twice_m);
  const std::vector<Index> target = sector_states(n, highest ? twice_m + 2 : twice_m - 2);

  const Matrix kernel = null_space(ladder_block(n, source, target, highest)).matrix();
  const Matrix local = canonical_span(kernel);

  Matrix full = Matrix::Zero(bath_dim(n), local.cols());
  for (std::size_t i = 0; i < source.size(); ++i) full.row(source[i]) = local.row(static_cast<Index>(i));
  return SubspaceBasis::from_orthonormal(std::move(full));
}

std::vector<DressedBasis> dressed_bases(const SpinStarParams& p) {
  p.validate();
  const RealVector a_plus = dressing_operator(p, Branch::plus).matrix().diagonal().real();
  const RealVector a_minus = dressing_operator(p, Branch::minus).matrix().diagonal().real();

  std::vector<DressedBasis> out;
  for (HalfInteger r : admissible_spins(p.n_spins)) {
    const Matrix up = a_plus.cast<Complex>().asDiagonal() *
                      weight_basis(p.n_spins, r, Weight::highest).matrix();
    out.push_back({Branch::plus, r, SubspaceBasis::orthonormalize(up)});
    const Matrix down = a_minus.cast<Complex>().asDiagonal() *
                        weight_basis(p.n_spins, r, Weight::lowest).matrix();
    out.push_back({Branch::minus, r, SubspaceBasis::orthonormalize(down)});
  }
  return out;
}

IfeDecomposition spin_star_ife_basis(const SpinStarParams& p) {
  p.validate();
  require_off_resonance(p, "spin_star_ife_basis");
  const Index d = 2 * bath_dim(p.n_spins);

  std::vector<SubspaceBasis> parts;
  for (const DressedBasis& block : dressed_bases(p)) {
    Matrix lifted(d, block.vectors.size());
    for (Index k = 0; k < block.vectors.size(); ++k) {
      lifted.col(k) = lift_central(block.vectors.vector(k), block.branch);
    }
    parts.push_back(SubspaceBasis::adopt(std::move(lifted)));
  }
  SubspaceBasis basis = SubspaceBasis::concatenate(parts, d);

  IfeDecomposition out;
  out.commutator_kernel = basis;
  out.sectors.push_back({0.0, std::move(basis)});
  return out;
}

Vector assemble_ife_state(const SpinStarParams& p, const SpinStarIfeCoefficients& coeffs) {
  p.validate();
  const Index d = 2 * bath_dim(p.n_spins);
  const RealVector a_plus = dressing_operator(p, Branch::plus).matrix().diagonal().real();
  const RealVector a_minus = dressing_operator(p, Branch::minus).matrix().diagonal().real();

  auto add = [&](const std::map<WeightLabel, Complex>& terms, Branch branch, Vector& psi) {
    const bool plus = branch == Branch::plus;
    for (const auto& [label, c] : terms) {
      const SubspaceBasis w =
          weight_basis(p.n_spins, label.r, plus ? Weight::highest : Weight::lowest);
      if (label.nu < 1 || label.nu > w.size()) {
        throw InvalidParameterError("assemble_ife_state: nu = " + std::to_string(label.nu) +
                                    " out of range for r = " + label.r.str());
      }
      const Vector dressed =
          (plus ? a_plus : a_minus).cast<Complex>().cwiseProduct(w.vector(label.nu - 1));
      psi += c * lift_central(dressed, branch);
    }
  };

  Vector psi = Vector::Zero(d);
  add(coeffs.plus, Branch::plus, psi);
  add(coeffs.minus, Branch::minus, psi);
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvalidParameterError("assemble_ife_state: all coefficients vanish");
  return psi / norm;
}

bool SpinStarClaimReport::all_passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.passed; });
}

SpinStarClaimReport verify_spin_star_claims(const SpinStarParams& p, double rel_tol) {
  p.validate();
  require_off_resonance(p, "verify_spin_star_claims");

  const BipartiteSystem sys = build_spin_star(p);
  const Operator h0 = build_h0(sys);
  const Operator h = build_total(sys);
  const Operator c = commutator(h0, sys.h_i());

  SpinStarClaimReport report;
  auto record = [&](std::string name, double residual, double tolerance) {
    report.claims.push_back({std::move(name), residual <= tolerance, residual, tolerance});
  };

  const SubspaceBasis ker_c = commutator_kernel(sys, rel_tol);
  const SubspaceBasis ker_i = null_space(sys.h_i(), rel_tol);
  record("commutator_kernel_equals_interaction_kernel", max_principal_angle(ker_c, ker_i),
         kSubspaceAngleTol);

  const IfeDecomposition numeric = ife_sectors(sys, rel_tol);
  const double cluster_tol = cluster_tolerance(sys.h_i());
  double sector_residual = 1.0;
  if (numeric.sectors.size() == 1) {
    sector_residual = std::abs(numeric.sectors.front().alpha);
  } else {
    for (const auto& s : numeric.sectors) sector_residual = std::max(sector_residual, std::abs(s.alpha));
  }
  record("single_sector_alpha_zero", sector_residual, cluster_tol);

  const IfeDecomposition analytic = spin_star_ife_basis(p);
  const SubspaceBasis& analytic_basis = analytic.sectors.front().basis;
  for (HalfInteger r : admissible_spins(p.n_spins)) {
    report.expected_dimension += 2 * static_cast<Index>(multiplicity(p.n_spins, r));
  }
  SubspaceBasis numeric_n0 = SubspaceBasis::empty(sys.dim());
  for (const auto& s : numeric.sectors) {
    if (std::abs(s.alpha) <= cluster_tol) numeric_n0 = s.basis;
  }
  report.ife_dimension = numeric_n0.size();
  double basis_residual = max_principal_angle(analytic_basis, numeric_n0);
  if (analytic_basis.size() != report.expected_dimension) basis_residual = std::numbers::pi / 2;
  record("analytic_basis_equals_numerical_n0", basis_residual, kSubspaceAngleTol);

  double eig_residual = 0.0;
  for (const DressedBasis& block : dressed_bases(p)) {
    const double sign = block.branch == Branch::plus ? 1.0 : -1.0;
    const double energy = sign * (p.omega0 + 2.0 * block.r.value() * p.omega);
    for (Index k = 0; k < block.vectors.size(); ++k) {
      const Vector v = lift_central(block.vectors.vector(k), block.branch);
      eig_residual = std::max(eig_residual, (h0.matrix() * v - energy * v).norm());
      eig_residual = std::max(eig_residual, (h.matrix() * v - energy * v).norm());
    }
  }
  record("analytic_vectors_are_energy_eigenvectors", eig_residual, 1e-9 * spectral_norm(h));
  return report;
}

}  // namespace ife
