#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "frmpe/ansatz.hpp"

// Test-side reference integrals: Boost's own adaptive Gauss-Kronrod driver on
// explicitly written Gaussians, sharing nothing with the library's quadrature
// controller or closed forms.

namespace frmpe::testing {

inline double gaussian(double xi, double center, double x) {
  const double u = x - center;
  return std::pow(xi / std::numbers::pi, 0.25) * std::exp(-0.5 * xi * u * u);
}

inline double gaussian_dd(double xi, double center, double x) {
  const double u = x - center;
  return (xi * xi * u * u - xi) * gaussian(xi, center, x);
}

template <class F>
double reference_integral(F f, double lo, double hi) {
  // Split into unit-width pieces so narrow peaks are never skipped.
  const int pieces = std::max(1, static_cast<int>(std::ceil(hi - lo)));
  const double h = (hi - lo) / pieces;
  double sum = 0.0;
  for (int k = 0; k < pieces; ++k) {
    sum += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, lo + k * h, lo + (k + 1) * h, 4, 1e-13);
  }
  return sum;
}

struct Draw {
  Polaron pn;
  Polaron pm;
  double gp;
};

/// Uniform draws over the validation box xi in [0.05, 5], zeta in [-2, 2], g' in [0, 10].
class DrawSource {
 public:
  explicit DrawSource(std::uint64_t seed) : rng_(seed) {}
  Polaron polaron() { return {xi_(rng_), zeta_(rng_)}; }
  Draw draw() { return {polaron(), polaron(), gp_(rng_)}; }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> xi_{0.05, 5.0};
  std::uniform_real_distribution<double> zeta_{-2.0, 2.0};
  std::uniform_real_distribution<double> gp_{0.0, 10.0};
};

}  // namespace frmpe::testing
