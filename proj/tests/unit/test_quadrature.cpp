#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "frmpe/errors.hpp"
#include "frmpe/kernels.hpp"
#include "frmpe/quadrature.hpp"
#include "oracle.hpp"

namespace frmpe {
namespace {

TEST(IntegrateAdaptive, KnownIntegrals) {
  const QuadSpec spec;
  EXPECT_NEAR(integrate_adaptive([](double x) { return x * x; }, 0.0, 3.0, spec).value, 9.0, 1e-13);
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, spec).value,
              2.0, 1e-13);
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::exp(-x * x); }, -12.0, 12.0, spec, 4).value,
              std::sqrt(std::numbers::pi), 1e-13);
  // Narrow spike that a single panel would miss entirely at low order.
  const double w = 1e-3;
  EXPECT_NEAR(integrate_adaptive([&](double x) { return std::exp(-0.5 * (x - 0.3) * (x - 0.3) / (w * w)); },
                                 -1.0, 1.0, spec, 8)
                  .value,
              w * std::sqrt(2.0 * std::numbers::pi), 1e-12);
}

TEST(IntegrateAdaptive, EmptyIntervalIsZero) {
  EXPECT_EQ(integrate_adaptive([](double) { return 1.0; }, 1.0, 1.0, QuadSpec{}).value, 0.0);
}

TEST(IntegrateAdaptive, ThrowsWhenBudgetExhausted) {
  QuadSpec spec;
  spec.max_subdivisions = 2;
  auto f = [](double x) { return std::abs(std::sin(50.0 * x)); };
  try {
    integrate_adaptive(f, 0.0, 10.0, spec);
    FAIL() << "expected QuadratureNonConverged";
  } catch (const QuadratureNonConverged& e) {
    EXPECT_TRUE(std::isfinite(e.estimate()));
    EXPECT_GT(e.error(), 0.0);
  }
}

TEST(QuadSpec, Validation) {
  QuadSpec s;
  EXPECT_NO_THROW(s.validate());
  s.window_scale = 0.5;
  EXPECT_THROW(s.validate(), DomainError);
  s = {};
  s.abs_tol = 0.0;
  EXPECT_THROW(s.validate(), DomainError);
  s = {};
  s.max_subdivisions = 0;
  EXPECT_THROW(s.validate(), DomainError);
}

TEST(QuadElement, TrivialExamples) {
  const ModelParams m{1.0, 1.0, 0.0};
  EXPECT_NEAR(quad_element(ElementKind::Overlap, {1.0, 0.0}, {1.0, 0.0}, m), 1.0, 1e-12);
  EXPECT_NEAR(quad_element(ElementKind::X2, {1.0, 0.0}, {1.0, 0.0}, m), 0.5, 1e-12);
  EXPECT_NEAR(quad_element(ElementKind::Kinetic, {2.0, 0.0}, {2.0, 0.0}, m), 1.0, 1e-12);
  EXPECT_NEAR(quad_element(ElementKind::HPlus, {1.0, 0.0}, {1.0, 0.0}, m), 0.5, 1e-12);
}

TEST(QuadElement, StableUnderWiderWindowAndTighterTolerance) {
  testing::DrawSource src(41);
  QuadSpec tight;
  tight.window_scale = 2.0;
  tight.abs_tol = 5e-13;
  tight.rel_tol = 5e-13;
  for (int k = 0; k < 100; ++k) {
    const auto d = src.draw();
    const ModelParams m{1.0, 1.0, d.gp / std::sqrt(2.0)};
    for (ElementKind kind : kAllElementKinds) {
      const double a = quad_element(kind, d.pn, d.pm, m);
      const double b = quad_element(kind, d.pn, d.pm, m, tight);
      EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(a))) << to_string(kind);
    }
  }
}

TEST(QuadElement, SymmetricUnderSwap) {
  testing::DrawSource src(43);
  for (int k = 0; k < 100; ++k) {
    const auto d = src.draw();
    const ModelParams m{1.0, 0.5, d.gp * 0.5 / std::sqrt(2.0)};
    for (ElementKind kind : kAllElementKinds) {
      const double a = quad_element(kind, d.pn, d.pm, m);
      const double b = quad_element(kind, d.pm, d.pn, m);
      EXPECT_NEAR(a, b, 1e-11 * std::max(1.0, std::abs(a))) << to_string(kind);
    }
  }
}

TEST(QuadElement, ElementNamesAreDistinct) {
  std::set<std::string_view> names;
  for (ElementKind kind : kAllElementKinds) names.insert(to_string(kind));
  EXPECT_EQ(names.size(), std::size(kAllElementKinds));
  std::set<std::string_view> obs;
  for (ObservableKind kind : kAllObservableKinds) obs.insert(to_string(kind));
  EXPECT_EQ(obs.size(), std::size(kAllObservableKinds));
}

}  // namespace
}  // namespace frmpe
