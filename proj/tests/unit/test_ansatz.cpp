#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "frmpe/ansatz.hpp"
#include "frmpe/errors.hpp"
#include "oracle.hpp"

namespace frmpe {
namespace {

TEST(Ansatz, ModeRoundTrip) {
  EXPECT_EQ(parse_mode(to_string(Mode::FRMPE)), Mode::FRMPE);
  EXPECT_EQ(parse_mode(to_string(Mode::CSE)), Mode::CSE);
  EXPECT_THROW(parse_mode("gaussian"), std::invalid_argument);
}

TEST(Ansatz, ValidateRejectsMalformedStates) {
  EXPECT_THROW((AnsatzState{{}, {}, Mode::FRMPE}.validate()), DomainError);
  EXPECT_THROW((AnsatzState{{1.0, 2.0}, {{1.0, 0.0}}, Mode::FRMPE}.validate()), DomainError);
  EXPECT_THROW((AnsatzState{{1.0}, {{0.0, 0.0}}, Mode::FRMPE}.validate()), DomainError);
  EXPECT_THROW((AnsatzState{{1.0}, {{-2.0, 0.0}}, Mode::FRMPE}.validate()), DomainError);
  EXPECT_THROW((AnsatzState{{1.0}, {{1.5, 0.0}}, Mode::CSE}.validate()), DomainError);
  EXPECT_THROW((AnsatzState{{NAN}, {{1.0, 0.0}}, Mode::FRMPE}.validate()), DomainError);
  EXPECT_NO_THROW((AnsatzState{{1.0}, {{1.0, 0.3}}, Mode::CSE}.validate()));
}

TEST(Wavefunction, SinglePolaronPeak) {
  const ModelParams m = model_at_ratio(0.01, 1.0, 1.0);
  const double gp = derive_scales(m).g_prime;
  const AnsatzState s{{0.7}, {{1.0, 0.5}}, Mode::FRMPE};
  const std::vector<double> grid{-0.5 * gp, 0.5 * gp};
  const auto w = wavefunction(s, m, grid);
  EXPECT_NEAR(w.psi_plus[0], 0.7 * std::pow(std::numbers::pi, -0.25), 1e-15);
  EXPECT_NEAR(w.psi_minus[1], 0.7 * std::pow(std::numbers::pi, -0.25), 1e-15);
}

TEST(Wavefunction, MinusBranchIsMirrorImageOnSymmetricGrid) {
  testing::DrawSource src(6);
  const ModelParams m = model_at_ratio(0.01, 1.0, 1.05);
  AnsatzState s;
  for (int i = 0; i < 4; ++i) {
    s.polarons.push_back(src.polaron());
    s.coeffs.push_back(src.uniform(-1.0, 1.0));
  }
  const auto grid = uniform_grid(-15.0, 15.0, 601);
  const auto w = wavefunction(s, m, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(w.psi_minus[k], w.psi_plus[grid.size() - 1 - k]);
  }
}

TEST(UniformGrid, SymmetricGridIsExactlyAntisymmetric) {
  for (int n : {2, 11, 600, 601}) {
    const auto g = uniform_grid(-15.0, 15.0, n);
    ASSERT_EQ(g.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(g.front(), -15.0);
    EXPECT_EQ(g.back(), 15.0);
    for (int k = 0; k < n; ++k) EXPECT_EQ(g[k], -g[n - 1 - k]);
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  }
}

TEST(UniformGrid, EdgeCases) {
  EXPECT_EQ(uniform_grid(2.0, 4.0, 1), std::vector<double>{3.0});
  EXPECT_EQ(uniform_grid(0.0, 1.0, 3), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_THROW(uniform_grid(0.0, 1.0, 0), DomainError);
  EXPECT_THROW(uniform_grid(1.0, 0.0, 5), DomainError);
}

TEST(CanonicalizeSign, MakesPositiveSideIntegralNonNegative) {
  const ModelParams m = model_at_ratio(0.01, 1.0, 1.1);
  testing::DrawSource src(21);
  for (int trial = 0; trial < 40; ++trial) {
    AnsatzState s;
    for (int i = 0; i < 3; ++i) {
      s.polarons.push_back(src.polaron());
      s.coeffs.push_back(src.uniform(-1.0, 1.0));
    }
    const auto before = s.coeffs;
    canonicalize_sign(s, m);
    EXPECT_GE(positive_side_integral(s, m), 0.0);
    const double sign = s.coeffs[0] / before[0];
    EXPECT_EQ(std::abs(sign), 1.0);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s.coeffs[i], sign * before[i]);
  }
}

TEST(PositiveSideIntegral, MatchesReferenceIntegral) {
  const ModelParams m = model_at_ratio(0.01, 1.0, 0.9);
  const double gp = derive_scales(m).g_prime;
  const AnsatzState s{{0.6, -0.2}, {{0.8, 0.4}, {2.0, -0.7}}, Mode::FRMPE};
  const double ref = testing::reference_integral(
      [&](double x) {
        return 0.6 * testing::gaussian(0.8, -0.4 * gp, x) - 0.2 * testing::gaussian(2.0, 0.7 * gp, x);
      },
      0.0, 40.0);
  EXPECT_NEAR(positive_side_integral(s, m), ref, 1e-12);
}

}  // namespace
}  // namespace frmpe
