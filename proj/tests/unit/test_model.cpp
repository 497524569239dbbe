#include <cmath>

#include <gtest/gtest.h>

#include "frmpe/errors.hpp"
#include "frmpe/model.hpp"

namespace frmpe {
namespace {

TEST(DeriveScales, ZeroCouplingUnitFrequencies) {
  const auto s = derive_scales({1.0, 1.0, 0.0});
  EXPECT_EQ(s.g_prime, 0.0);
  EXPECT_DOUBLE_EQ(s.g_c0, 0.5);
  EXPECT_DOUBLE_EQ(s.eps0, -0.5);
}

TEST(DeriveScales, CanonicalCrossoverPoint) {
  const auto s = derive_scales({1.0, 0.01, 0.05101});
  EXPECT_NEAR(s.g_c0, 0.05, 1e-15);
  EXPECT_NEAR(s.g_c, 0.051010, 1e-6);
  EXPECT_NEAR(s.g_prime, 7.2139, 1e-4);
  // Written out independently of the library.
  const double gc0 = std::sqrt(0.01) / 2.0;
  const double gc = std::sqrt(0.01 * 0.01 + std::sqrt(std::pow(0.01, 4) + std::pow(gc0, 4)));
  EXPECT_DOUBLE_EQ(s.g_c, gc);
  EXPECT_DOUBLE_EQ(s.eps0, -0.01 * (s.g_prime * s.g_prime + 1.0) / 2.0);
}

TEST(DeriveScales, CrossoverIndependentOfCoupling) {
  const double a = derive_scales({1.0, 0.01, 0.0}).g_c;
  const double b = derive_scales({1.0, 0.01, 0.3}).g_c;
  EXPECT_EQ(a, b);
  EXPECT_NEAR(a, 0.051010, 1e-6);
  EXPECT_EQ(a, crossover_coupling(0.01, 1.0));
}

TEST(DeriveScales, RejectsInvalidParameters) {
  EXPECT_THROW(derive_scales({1.0, 0.0, 0.1}), DomainError);
  EXPECT_THROW(derive_scales({1.0, -1.0, 0.1}), DomainError);
  EXPECT_THROW(derive_scales({-1.0, 1.0, 0.1}), DomainError);
  EXPECT_THROW(derive_scales({1.0, 1.0, -0.1}), DomainError);
  EXPECT_THROW(derive_scales({1.0, NAN, 0.1}), DomainError);
  EXPECT_THROW(derive_scales({1.0, INFINITY, 0.1}), DomainError);
}

TEST(DeriveScales, InvariantsOverParameterGrid) {
  for (double Omega : {0.1, 1.0, 3.0}) {
    for (double omega : {0.005, 0.01, 0.5, 2.0}) {
      for (double g : {0.0, 0.02, 0.4}) {
        const auto s = derive_scales({Omega, omega, g});
        EXPECT_GE(s.g_c, s.g_c0);
        EXPECT_GT(s.g_c0, 0.0);
        EXPECT_LE(s.eps0, -omega / 2.0);
        EXPECT_TRUE(std::isfinite(s.g_prime));
      }
    }
  }
}

TEST(DeriveScales, CommonRescalingOfAllEnergies) {
  const ModelParams base{1.0, 0.01, 0.05};
  const auto s = derive_scales(base);
  for (double lambda : {0.25, 2.0, 10.0}) {
    const auto t = derive_scales({lambda * base.Omega, lambda * base.omega, lambda * base.g});
    EXPECT_NEAR(t.g_c, lambda * s.g_c, 1e-14 * lambda);
    EXPECT_NEAR(t.g_c0, lambda * s.g_c0, 1e-14 * lambda);
    EXPECT_NEAR(t.eps0, lambda * s.eps0, 1e-13 * lambda);
    EXPECT_NEAR(t.g_prime, s.g_prime, 1e-13);
  }
}

TEST(DeriveScales, Deterministic) {
  const ModelParams m{0.7, 0.03, 0.11};
  const auto a = derive_scales(m);
  const auto b = derive_scales(m);
  EXPECT_EQ(a.g_prime, b.g_prime);
  EXPECT_EQ(a.g_c, b.g_c);
  EXPECT_EQ(a.eps0, b.eps0);
}

TEST(CouplingRatio, Examples) {
  const double gc = crossover_coupling(0.01, 1.0);
  EXPECT_DOUBLE_EQ(coupling_ratio({1.0, 0.01, gc}), 1.0);
  EXPECT_EQ(coupling_ratio({1.0, 0.01, 0.0}), 0.0);
  EXPECT_NEAR(coupling_ratio({1.0, 0.01, 1.05 * gc}), 1.05, 1e-15);
  EXPECT_NEAR(coupling_ratio(model_at_ratio(0.01, 1.0, 1.2)), 1.2, 1e-15);
}

TEST(CouplingRatio, OmegaZeroStillHasCrossoverFromOscillator) {
  // g_c0 = 0 but g_c = sqrt(2) omega > 0.
  EXPECT_NEAR(crossover_coupling(0.5, 0.0), std::sqrt(2.0) * 0.5, 1e-15);
  EXPECT_NO_THROW(coupling_ratio({0.0, 0.5, 0.1}));
}

}  // namespace
}  // namespace frmpe
