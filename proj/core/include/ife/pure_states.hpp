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

// Pure interaction-free evolving (IFE) states of a bipartite system
// H = H_A (x) I + I (x) H_B + H_I.
//
// A unit vector psi evolves as exp(-iHt) psi = exp(-i alpha t) exp(-i H_0 t) psi
// for all t iff it lies in a sector
//
//   N_alpha = Ker(H_I - alpha) ∩ Ker[H_0, H_I]
//
// for some eigenvalue alpha of H_I. ife_sectors() computes the sectors from
// that characterization; ife_sectors_oracle() computes them independently as
// the intersection of Ker((H_I - alpha) H_0^n) over all n.

#ifndef IFE_PURE_STATES_HPP
#define IFE_PURE_STATES_HPP

#include <optional>
#include <vector>

#include "ife/operator_algebra.hpp"

namespace ife {

/// The pair of subsystems with their free Hamiltonians and the coupling.
/// All three operators are validated Hermitian on construction.
class BipartiteSystem {
 public:
  /// Throws NotHermitianError or DimensionError (h_i must act on dim_a*dim_b).
  BipartiteSystem(Operator h_a, Operator h_b, Operator h_i);

  Index dim_a() const { return h_a_.dim(); }
  Index dim_b() const { return h_b_.dim(); }
  Index dim() const { return h_i_.dim(); }

  const Operator& h_a() const { return h_a_; }
  const Operator& h_b() const { return h_b_; }
  const Operator& h_i() const { return h_i_; }

 private:
  Operator h_a_;
  Operator h_b_;
  Operator h_i_;
};

/// op_a (x) I_B
Operator lift_a(const BipartiteSystem& sys, const Operator& op_a);
/// I_A (x) op_b
Operator lift_b(const BipartiteSystem& sys, const Operator& op_b);

/// H_0 = H_A (x) I_B + I_A (x) H_B
Operator build_h0(const BipartiteSystem& sys);
/// H = H_0 + H_I
Operator build_total(const BipartiteSystem& sys);

struct IfeSector {
  double alpha = 0.0;
  SubspaceBasis basis;
};

struct IfeDecomposition {
  /// Ascending in alpha; empty when the system has no IFE states.
  std::vector<IfeSector> sectors;
  /// M = Ker[H_0, H_I]
  SubspaceBasis commutator_kernel;

  /// Orthonormal basis of the direct sum of all sectors.
  SubspaceBasis combined(Index ambient_dim) const;
  Index ife_dimension() const;
};

/// Eigenvalues of H_I closer than this are merged into one candidate alpha.
double cluster_tolerance(const Operator& h_i);

/// Reference magnitude of [H_0, H_I]: max(||[H_0, H_I]||, ||H_0|| ||H_I||).
/// Commutators that vanish analytically come out at roundoff relative to
/// this, not relative to their own norm.
double commutator_scale(const BipartiteSystem& sys);

/// Ker[H_0, H_I] with cutoff rel_tol * commutator_scale(sys).
SubspaceBasis commutator_kernel(const BipartiteSystem& sys, double rel_tol = kDefaultNullTol);

/// Sectors via Ker(H_I - alpha) ∩ Ker[H_0, H_I], scanning every distinct
/// eigenvalue of H_I.
IfeDecomposition ife_sectors(const BipartiteSystem& sys, double rel_tol = kDefaultNullTol);

/// Brute-force sectors via ∩_n Ker((H_I - alpha) H_0^n). The powers of H_0
/// are replaced by its eigenprojectors, which span the same operator space.
IfeDecomposition ife_sectors_oracle(const BipartiteSystem& sys,
                                    double rel_tol = kDefaultNullTol);

/// True iff Ker[H_0, H_I] is nontrivial.
bool ife_exists(const BipartiteSystem& sys, double rel_tol = kDefaultNullTol);

/// Returns alpha = <psi|H_I|psi> when psi passes both sector conditions,
/// nothing otherwise. Throws InvalidStateError for non-normalized psi and
/// DimensionError for a length mismatch.
std::optional<double> classify_pure(const Vector& psi, const BipartiteSystem& sys,
                                    double rel_tol = kDefaultNullTol);

}  // namespace ife

#endif  // IFE_PURE_STATES_HPP
