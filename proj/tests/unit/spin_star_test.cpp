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


#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "ife/ife.hpp"
#include "test_support.hpp"

namespace ife {
namespace {

using testing::Rng;

HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }

SpinStarParams n2_params() { return {2, 1.0, 0.7, {3.0, 4.0}}; }

TEST(HalfIntegerTest, FormattingAndOrder) {
  EXPECT_EQ(half(3).str(), "3/2");
  EXPECT_EQ(half(4).str(), "2");
  EXPECT_EQ(half(0).str(), "0");
  EXPECT_EQ(half(1).value(), 0.5);
  EXPECT_LT(half(1), half(2));
}

TEST(SpinStarParamsTest, Validation) {
  EXPECT_NO_THROW(n2_params().validate());
  EXPECT_THROW((SpinStarParams{0, 1.0, 0.5, {}}.validate()), InvalidParameterError);
  EXPECT_THROW((SpinStarParams{2, 1.0, 0.5, {1.0}}.validate()), InvalidParameterError);
  EXPECT_THROW((SpinStarParams{1, 1.0, 0.5, {0.0}}.validate()), InvalidParameterError);
  EXPECT_THROW((SpinStarParams{1, NAN, 0.5, {1.0}}.validate()), InvalidParameterError);
  EXPECT_THROW((SpinStarParams{25, 1.0, 0.5, std::vector<double>(25, 1.0)}.validate()),
               InvalidParameterError);
}

TEST(PauliTest, Algebra) {
  using namespace pauli;
  EXPECT_EQ(commutator(sigma_plus(), sigma_minus()).matrix(), sigma_z().matrix());
  EXPECT_EQ((sigma_x() * sigma_y()).matrix(), (Complex(0, 1) * sigma_z()).matrix());
  EXPECT_EQ((sigma_plus() + sigma_minus()).matrix(), sigma_x().matrix());
}

TEST(CollectiveSpinTest, LadderAlgebra) {
  for (int n = 1; n <= 4; ++n) {
    const Operator sz = total_sz(n), sp = total_s_plus(n), sm = total_s_minus(n);
    EXPECT_NEAR((commutator(sp, sm) - 2.0 * sz).frobenius_norm(), 0.0, 1e-12);
    EXPECT_NEAR((commutator(sz, sp) - sp).frobenius_norm(), 0.0, 1e-12);
    EXPECT_EQ(sm.matrix(), sp.adjoint().matrix());
  }
  // Spin 1 is the most significant bit; index 1 of two spins is |up, down>.
  EXPECT_EQ(bath_site_operator(pauli::sigma_z(), 2, 2).matrix().diagonal().real()(1), -1.0);
  EXPECT_EQ(bath_site_operator(pauli::sigma_z(), 1, 2).matrix().diagonal().real()(1), 1.0);
  EXPECT_THROW(bath_site_operator(pauli::sigma_z(), 3, 2), InvalidParameterError);
}

TEST(BuildSpinStarTest, StructureAndHermiticity) {
  const BipartiteSystem sys = build_spin_star(n2_params());
  EXPECT_EQ(sys.dim_a(), 2);
  EXPECT_EQ(sys.dim_b(), 4);
  EXPECT_TRUE(build_total(sys).is_hermitian());
  // <+, up down| H_I |-, up up> = gamma_2 (spin 2 flipped).
  EXPECT_EQ(sys.h_i()(1, 4), Complex(4.0, 0.0));
  EXPECT_EQ(sys.h_i()(2, 4), Complex(3.0, 0.0));
  EXPECT_THROW(build_spin_star({2, 1.0, 0.5, {1.0}}), InvalidParameterError);
}

TEST(DressingTest, FrozenExponents) {
  const SpinStarParams p = n2_params();
  EXPECT_EQ(gamma_norm(p.gammas), 5.0);
  const auto gp = dressing_exponents(p, Branch::plus);
  const auto gm = dressing_exponents(p, Branch::minus);
  EXPECT_NEAR(gp[0], -0.25541281188299536, 1e-15);
  EXPECT_NEAR(gp[1], 0.5 * std::log(0.8), 1e-15);
  EXPECT_EQ(gm[0], -gp[0]);
  const Matrix product = (dressing_operator(p, Branch::plus) * dressing_operator(p, Branch::minus)).matrix();
  EXPECT_NEAR((product - Matrix::Identity(4, 4)).norm(), 0.0, 1e-14);
  EXPECT_THROW(gamma_norm(std::vector<double>{0.0, 0.0}), InvalidParameterError);
}

TEST(DressingTest, GammaNormExamples) {
  EXPECT_EQ(gamma_norm(std::vector<double>{-2.5}), 2.5);
  EXPECT_EQ(gamma_norm(std::vector<double>{1.0, 1.0, 1.0, 1.0}), 2.0);
}

TEST(DressingTest, SingleSpinIsUndressed) {
  const SpinStarParams p{1, 0.4, 1.0, {0.7}};
  EXPECT_EQ(dressing_exponents(p, Branch::plus)[0], 0.0);
  EXPECT_NEAR((dressing_operator(p, Branch::minus).matrix() - Matrix::Identity(2, 2)).norm(), 0.0,
              1e-15);
}

TEST(DressingTest, ConjugationIdentityAndCommutation) {
  Rng rng(33);
  for (int k = 0; k < 10; ++k) {
    const int n = 1 + k % 6;
    const SpinStarParams p = testing::random_spin_star(n, rng);
    const Matrix sz = total_sz(n).matrix();
    for (Branch b : {Branch::plus, Branch::minus}) {
      const Matrix a = dressing_operator(p, b).matrix();
      const Matrix a_inv = dressing_operator(p, b == Branch::plus ? Branch::minus : Branch::plus).matrix();
      const auto g = dressing_exponents(p, b);
      const Operator ladder = b == Branch::plus ? pauli::sigma_plus() : pauli::sigma_minus();
      const double sign = b == Branch::plus ? -2.0 : 2.0;
      for (int site = 1; site <= n; ++site) {
        const Matrix s = bath_site_operator(ladder, site, n).matrix();
        const Matrix lhs = a_inv * s * a;
        const Matrix rhs = s * std::exp(sign * g[static_cast<std::size_t>(site - 1)]);
        EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
      }
      EXPECT_EQ((a * sz - sz * a).cwiseAbs().maxCoeff(), 0.0);
    }
  }
}

TEST(DressingTest, NonPositiveCouplingIsRejected) {
  EXPECT_THROW(dressing_operator({2, 1.0, 0.5, {1.0, -2.0}}, Branch::plus), InvalidParameterError);
}

TEST(BuildSpinStarTest, ExcitationNumberIsConserved) {
  Rng rng(34);
  for (int n = 1; n <= 4; ++n) {
    const BipartiteSystem sys = build_spin_star(testing::random_spin_star(n, rng));
    const Operator excitations = lift_a(sys, pauli::sigma_z()) + 2.0 * lift_b(sys, total_sz(n));
    EXPECT_LE(commutator(build_total(sys), excitations).frobenius_norm(), 1e-12);
    EXPECT_LE(commutator(sys.h_i(), excitations).frobenius_norm(), 1e-12);
  }
}

TEST(WeightBasisTest, LowestIsSpinFlipOfHighest) {
  for (int n = 1; n <= 6; ++n) {
    const Index dim = Index{1} << n;
    // Global flip maps bath index s to its bitwise complement.
    Matrix flip = Matrix::Zero(dim, dim);
    for (Index s = 0; s < dim; ++s) flip(dim - 1 - s, s) = 1.0;
    for (HalfInteger r : admissible_spins(n)) {
      const SubspaceBasis flipped =
          SubspaceBasis::from_orthonormal(flip * weight_basis(n, r, Weight::highest).matrix());
      EXPECT_TRUE(subspace_equal(flipped, weight_basis(n, r, Weight::lowest), 1e-10));
    }
  }
}

TEST(WeightBasisTest, InadmissibleSpinIsRejected) {
  EXPECT_THROW(weight_basis(2, half(1), Weight::highest), InvalidParameterError);
  EXPECT_THROW(weight_basis(2, half(6), Weight::lowest), InvalidParameterError);
  EXPECT_THROW(multiplicity(3, half(2)), InvalidParameterError);
}

TEST(SpinStarIfeBasisTest, SingleBathSpin) {
  const IfeDecomposition dec = spin_star_ife_basis({1, 0.2, 0.9, {1.3}});
  ASSERT_EQ(dec.ife_dimension(), 2);
  const SubspaceBasis expected = SubspaceBasis::from_orthonormal(
      (Matrix(4, 2) << 1, 0, 0, 0, 0, 0, 0, 1).finished());
  EXPECT_TRUE(subspace_equal(dec.sectors[0].basis, expected, 1e-14));
}

TEST(SpinStarIfeBasisTest, HomogeneousCouplingsNeedNoDressing) {
  for (int n = 1; n <= 4; ++n) {
    const SpinStarParams p{n, 0.5, -0.3, std::vector<double>(static_cast<std::size_t>(n), 0.8)};
    const Index bath = Index{1} << n;
    Index total = 0;
    for (HalfInteger r : admissible_spins(n)) total += 2 * weight_basis(n, r, Weight::highest).size();
    Matrix undressed = Matrix::Zero(2 * bath, total);
    Index c = 0;
    for (HalfInteger r : admissible_spins(n)) {
      const Matrix hw = weight_basis(n, r, Weight::highest).matrix();
      const Matrix lw = weight_basis(n, r, Weight::lowest).matrix();
      undressed.block(0, c, bath, hw.cols()) = hw;
      c += hw.cols();
      undressed.block(bath, c, bath, lw.cols()) = lw;
      c += lw.cols();
    }
    EXPECT_TRUE(subspace_equal(spin_star_ife_basis(p).sectors[0].basis,
                               SubspaceBasis::from_orthonormal(undressed), 1e-10));
  }
}

TEST(SpinStarIfeBasisTest, MatchesNumericalSectorAndAnnihilatesInteraction) {
  Rng rng(35);
  for (int n = 1; n <= 4; ++n) {
    const SpinStarParams p = testing::random_spin_star(n, rng);
    const BipartiteSystem sys = build_spin_star(p);
    const IfeDecomposition analytic = spin_star_ife_basis(p);
    const IfeDecomposition numeric = ife_sectors(sys);
    ASSERT_EQ(numeric.sectors.size(), 1u);
    EXPECT_LE(max_principal_angle(analytic.sectors[0].basis, numeric.sectors[0].basis), 1e-7);
    const double scale = spectral_norm(sys.h_i());
    const Matrix& b = analytic.sectors[0].basis.matrix();
    for (Index v = 0; v < b.cols(); ++v) {
      EXPECT_LE((sys.h_i().matrix() * b.col(v)).norm(), 1e-10 * scale);
    }
  }
}

TEST(MultiplicityTest, Examples) {
  EXPECT_EQ(multiplicity(4, half(4)), 1u);
  EXPECT_EQ(multiplicity(4, half(2)), 3u);
  EXPECT_EQ(multiplicity(4, half(0)), 2u);
  EXPECT_EQ(multiplicity(3, half(1)), 2u);
  EXPECT_EQ(multiplicity(1, half(1)), 1u);
  EXPECT_EQ(multiplicity(2, half(2)), 1u);
  EXPECT_EQ(multiplicity(2, half(0)), 1u);
  EXPECT_EQ(admissible_spins(4), (std::vector<HalfInteger>{half(4), half(2), half(0)}));
  EXPECT_EQ(admissible_spins(3), (std::vector<HalfInteger>{half(3), half(1)}));
}

TEST(MultiplicityTest, DimensionSumRule) {
  for (int n = 1; n <= 10; ++n) {
    std::uint64_t total = 0;
    for (HalfInteger r : admissible_spins(n)) {
      total += multiplicity(n, r) * static_cast<std::uint64_t>(r.twice() + 1);
    }
    EXPECT_EQ(total, std::uint64_t{1} << n) << "n = " << n;
  }
}

TEST(MultiplicityTest, MatchesCountedCasimirEigenvalues) {
  for (int n = 1; n <= 6; ++n) {
    for (HalfInteger r : admissible_spins(n)) {
      EXPECT_EQ(static_cast<Index>(multiplicity(n, r)), testing::counted_multiplicity(n, r))
          << "n = " << n << ", r = " << r.str();
    }
  }
}

TEST(WeightBasisTest, HighestAndLowestWeightProperties) {
  for (int n = 1; n <= 6; ++n) {
    const Matrix sz = total_sz(n).matrix(), sp = total_s_plus(n).matrix(), sm = total_s_minus(n).matrix();
    for (HalfInteger r : admissible_spins(n)) {
      const SubspaceBasis hw = weight_basis(n, r, Weight::highest);
      const SubspaceBasis lw = weight_basis(n, r, Weight::lowest);
      ASSERT_EQ(hw.size(), static_cast<Index>(multiplicity(n, r)));
      ASSERT_EQ(lw.size(), hw.size());
      const Matrix h = hw.matrix(), l = lw.matrix();
      EXPECT_NEAR((h.adjoint() * h - Matrix::Identity(h.cols(), h.cols())).norm(), 0.0, 1e-12);
      EXPECT_NEAR((sp * h).norm(), 0.0, 1e-12);
      EXPECT_NEAR((sm * l).norm(), 0.0, 1e-12);
      EXPECT_NEAR((sz * h - r.value() * h).norm(), 0.0, 1e-12);
      EXPECT_NEAR((sz * l + r.value() * l).norm(), 0.0, 1e-12);
    }
  }
}

TEST(WeightBasisTest, DeterministicLabelling) {
  const SubspaceBasis a = weight_basis(4, half(2), Weight::highest);
  const SubspaceBasis b = weight_basis(4, half(2), Weight::highest);
  EXPECT_EQ(a.matrix(), b.matrix());
  // Two spins: the singlet is (|up down> - |down up>)/sqrt(2) up to phase.
  const Vector singlet = weight_basis(2, half(0), Weight::highest).vector(0);
  EXPECT_NEAR(std::abs(singlet(1)), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::abs(singlet(1) + singlet(2)), 0.0, 1e-14);
}

TEST(DressedBasesTest, OrderAndSingletRatio) {
  const auto blocks = dressed_bases(n2_params());
  ASSERT_EQ(blocks.size(), 4u);
  EXPECT_EQ(blocks[0].r, half(2));
  EXPECT_EQ(blocks[0].branch, Branch::plus);
  EXPECT_EQ(blocks[1].branch, Branch::minus);
  EXPECT_EQ(blocks[2].r, half(0));
  // Dressed plus-branch singlet is proportional to 3|up down> - 4|down up>.
  const Vector v = blocks[2].vectors.vector(0);
  const Complex phase = v(1) / std::abs(v(1));
  EXPECT_NEAR(std::abs(v(1) / phase - 0.6), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(v(2) / phase + 0.8), 0.0, 1e-14);
  const Vector w = blocks[3].vectors.vector(0);
  const Complex phase_w = w(1) / std::abs(w(1));
  EXPECT_NEAR(std::abs(w(1) / phase_w - 0.8), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(w(2) / phase_w + 0.6), 0.0, 1e-14);
}

TEST(SpinStarIfeBasisTest, FrozenDimensions) {
  const IfeDecomposition n2 = spin_star_ife_basis(n2_params());
  ASSERT_EQ(n2.sectors.size(), 1u);
  EXPECT_EQ(n2.sectors[0].alpha, 0.0);
  EXPECT_EQ(n2.ife_dimension(), 4);
  EXPECT_EQ(spin_star_ife_basis({3, 0.3, 1.1, {0.5, 1.0, 0.25}}).ife_dimension(), 6);
  EXPECT_EQ(spin_star_ife_basis({4, 0.3, 1.1, {0.5, 1.0, 0.25, 2.0}}).ife_dimension(), 12);
}

TEST(SpinStarIfeBasisTest, ResonanceIsRejected) {
  EXPECT_THROW(spin_star_ife_basis({2, 0.9, 0.9, {1.0, 2.0}}), ResonanceError);
  EXPECT_THROW(verify_spin_star_claims({2, 0.9, 0.9, {1.0, 2.0}}), ResonanceError);
}

TEST(SpinStarIfeBasisTest, VectorsAreFreeEigenvectors) {
  Rng rng(31);
  for (int n = 1; n <= 5; ++n) {
    const SpinStarParams p = testing::random_spin_star(n, rng);
    const BipartiteSystem sys = build_spin_star(p);
    const Matrix h0 = build_h0(sys).matrix(), h = build_total(sys).matrix();
    const Index bath = sys.dim_b();
    for (const DressedBasis& block : dressed_bases(p)) {
      const double sign = block.branch == Branch::plus ? 1.0 : -1.0;
      const double energy = sign * (p.omega0 + 2.0 * block.r.value() * p.omega);
      for (Index v = 0; v < block.vectors.size(); ++v) {
        Vector psi = Vector::Zero(2 * bath);
        psi.segment(block.branch == Branch::plus ? 0 : bath, bath) = block.vectors.vector(v);
        EXPECT_NEAR((h0 * psi - energy * psi).norm(), 0.0, 1e-10);
        EXPECT_NEAR((h * psi - energy * psi).norm(), 0.0, 1e-10);
        EXPECT_NEAR((sys.h_i().matrix() * psi).norm(), 0.0, 1e-10);
      }
    }
  }
}

TEST(AssembleIfeStateTest, ClosedFormStateIsIfe) {
  const SpinStarParams p = n2_params();
  SpinStarIfeCoefficients c;
  c.plus[{half(2), 1}] = Complex(0.3, 0.1);
  c.plus[{half(0), 1}] = 1.0;
  c.minus[{half(0), 1}] = Complex(0.0, -2.0);
  const Vector psi = assemble_ife_state(p, c);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
  const auto alpha = classify_pure(psi, build_spin_star(p));
  ASSERT_TRUE(alpha.has_value());
  EXPECT_NEAR(*alpha, 0.0, 1e-12);
  EXPECT_LE(ife_deviation_trace(build_spin_star(p), psi, 0.0, uniform_grid()).max_deviation, 1e-9);
}

TEST(AssembleIfeStateTest, Errors) {
  const SpinStarParams p = n2_params();
  SpinStarIfeCoefficients unknown;
  unknown.plus[{half(0), 2}] = 1.0;
  EXPECT_THROW(assemble_ife_state(p, unknown), InvalidParameterError);
  SpinStarIfeCoefficients zero;
  zero.minus[{half(2), 1}] = 0.0;
  EXPECT_THROW(assemble_ife_state(p, zero), InvalidParameterError);
}

TEST(VerifyClaimsTest, FrozenExample) {
  const SpinStarClaimReport rep = verify_spin_star_claims(n2_params());
  EXPECT_TRUE(rep.all_passed());
  ASSERT_EQ(rep.claims.size(), 4u);
  EXPECT_EQ(rep.ife_dimension, 4);
  EXPECT_EQ(rep.expected_dimension, 4);
  for (const auto& claim : rep.claims) EXPECT_LE(claim.residual, claim.tolerance) << claim.name;
}

TEST(VerifyClaimsTest, RandomParameters) {
  Rng rng(32);
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k < 3; ++k) {
      const SpinStarParams p = testing::random_spin_star(n, rng);
      const SpinStarClaimReport rep = verify_spin_star_claims(p);
      for (const auto& claim : rep.claims) EXPECT_TRUE(claim.passed) << "n=" << n << " " << claim.name;
      std::uint64_t sum = 0;
      for (HalfInteger r : admissible_spins(n)) sum += multiplicity(n, r);
      EXPECT_EQ(rep.ife_dimension, static_cast<Index>(2 * sum));
    }
  }
}

// Sparse coupling matrices used to trip the divide-and-conquer SVD into NaNs.
TEST(VerifyClaimsTest, KernelsStayFiniteForSparseCouplings) {
  const SpinStarParams p{4, 1.7586, -0.8421, {1.4633, 0.3225, 1.9334, 0.8700}};
  const BipartiteSystem sys = build_spin_star(p);
  const SubspaceBasis ker_i = null_space(sys.h_i());
  ASSERT_EQ(ker_i.size(), 12);
  EXPECT_TRUE(ker_i.matrix().allFinite());
  EXPECT_LT((sys.h_i().matrix() * ker_i.matrix()).norm(), 1e-12);
  EXPECT_TRUE(verify_spin_star_claims(p).all_passed());
}

}  // namespace
}  // namespace ife
