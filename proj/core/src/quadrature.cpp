#include "frmpe/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "frmpe/errors.hpp"

namespace frmpe {

void QuadSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
    throw DomainError("quadrature tolerances must be positive and max_subdivisions >= 1");
  }
  if (!(window_scale >= 1.0) || !std::isfinite(window_scale)) {
    throw DomainError("quadrature window_scale must be finite and >= 1");
  }
}

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double l1;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// Kronrod abscissae alternate between Kronrod-only (odd index) and shared
// Gauss nodes (even index, Gauss weight index i/2); node 0 is Kronrod-only
// for a 10-point Gauss rule.
Panel apply_rule(const std::function<double(double)>& f, double a, double b) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fc = f(mid);
  double kron = fc * wk[0];
  double gauss = 0.0;
  double l1 = std::abs(fc) * wk[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double fp = f(mid + half * xk[i]);
    const double fm = f(mid - half * xk[i]);
    kron += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 1) {
      gauss += (fp + fm) * wg[i / 2];
    }
  }
  return {a, b, kron * half, std::abs(kron - gauss) * half, l1 * std::abs(half)};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const QuadSpec& spec, int initial_panels) {
  spec.validate();
  if (!(b > a)) {
    return {};
  }
  initial_panels = std::max(1, initial_panels);
  std::priority_queue<Panel> heap;
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double width = (b - a) / initial_panels;
  for (int k = 0; k < initial_panels; ++k) {
    const double lo = a + k * width;
    const double hi = (k + 1 == initial_panels) ? b : a + (k + 1) * width;
    Panel p = apply_rule(f, lo, hi);
    value += p.value;
    error += p.error;
    l1 += p.l1;
    heap.push(p);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  auto converged = [&] {
    return error <= std::max({spec.abs_tol, spec.rel_tol * std::abs(value), 100.0 * eps * l1});
  };
  int subdivisions = 0;
  while (!converged()) {
    if (subdivisions >= spec.max_subdivisions) {
      throw QuadratureNonConverged("adaptive quadrature exhausted its subdivision budget", value,
                                   error);
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = apply_rule(f, worst.a, mid);
    Panel right = apply_rule(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  // Re-sum from the panels to shed the drift of the running updates.
  double total = 0.0;
  double total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  return {total, total_err, subdivisions};
}

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::Overlap: return "overlap";
    case ElementKind::Cross: return "cross";
    case ElementKind::X: return "x";
    case ElementKind::X2: return "x2";
    case ElementKind::Kinetic: return "kinetic";
    case ElementKind::HPlus: return "hplus";
  }
  return "?";
}

std::string_view to_string(ObservableKind kind) {
  switch (kind) {
    case ObservableKind::Norm: return "norm";
    case ObservableKind::Energy: return "energy";
    case ObservableKind::SigmaX: return "sigma_x";
    case ObservableKind::Corr: return "corr";
    case ObservableKind::NPhot: return "nphot";
  }
  return "?";
}

namespace {

// Explicit Gaussian with its analytic second derivative:
//   g(x)   = (xi/pi)^(1/4) exp(-xi (x - center)^2 / 2)
//   g''(x) = (xi^2 (x - center)^2 - xi) g(x)
struct Gaussian {
  double xi;
  double center;

  double operator()(double x) const {
    const double u = x - center;
    return std::pow(xi / std::numbers::pi, 0.25) * std::exp(-0.5 * xi * u * u);
  }
  double second_derivative(double x) const {
    const double u = x - center;
    return (xi * xi * u * u - xi) * (*this)(x);
  }
};

struct Window {
  double lo;
  double hi;
  int panels;
};

// Tails beyond 12 widths of the widest Gaussian are below e^-72.
Window window_for(double max_center, double min_xi, double max_xi, double scale) {
  const double half = scale * (max_center + 12.0 / std::sqrt(min_xi));
  const double panel_width = 1.0 / std::sqrt(max_xi);
  const int panels = std::clamp(static_cast<int>(std::ceil(2.0 * half / panel_width)), 4, 4000);
  return {-half, half, panels};
}

}  // namespace

double quad_element(ElementKind kind, const Polaron& pn, const Polaron& pm,
                    const ModelParams& model, const QuadSpec& spec) {
  if (!(pn.xi > 0.0) || !(pm.xi > 0.0)) {
    throw DomainError("polaron frequency factor xi must be positive");
  }
  const auto scales = derive_scales(model);
  const double gp = scales.g_prime;
  const Gaussian left{pn.xi, -pn.zeta * gp};
  const Gaussian right{pm.xi, -pm.zeta * gp};
  const Gaussian mirrored{pm.xi, pm.zeta * gp};
  const double omega = model.omega;

  std::function<double(double)> integrand;
  switch (kind) {
    case ElementKind::Overlap:
      integrand = [=](double x) { return left(x) * right(x); };
      break;
    case ElementKind::Cross:
      integrand = [=](double x) { return left(x) * mirrored(x); };
      break;
    case ElementKind::X:
      integrand = [=](double x) { return left(x) * x * right(x); };
      break;
    case ElementKind::X2:
      integrand = [=](double x) { return left(x) * x * x * right(x); };
      break;
    case ElementKind::Kinetic:
      integrand = [=](double x) { return -left(x) * right.second_derivative(x); };
      break;
    case ElementKind::HPlus:
      integrand = [=](double x) {
        const double shifted = x + gp;
        return 0.5 * omega * left(x) *
               (-right.second_derivative(x) + shifted * shifted * right(x));
      };
      break;
  }
  const double max_center = std::max(std::abs(pn.zeta), std::abs(pm.zeta)) * gp;
  const Window w = window_for(max_center, std::min(pn.xi, pm.xi), std::max(pn.xi, pm.xi), spec.window_scale);
  return integrate_adaptive(integrand, w.lo, w.hi, spec, w.panels).value;
}

double quad_observable(ObservableKind kind, const AnsatzState& state, const ModelParams& model,
                       const QuadSpec& spec) {
  state.validate();
  const auto scales = derive_scales(model);
  const double gp = scales.g_prime;

  std::vector<Gaussian> plus;
  std::vector<double> coeffs = state.coeffs;
  double max_center = 0.0;
  double min_xi = std::numeric_limits<double>::infinity();
  double max_xi = 0.0;
  for (const auto& p : state.polarons) {
    plus.push_back({p.xi, -p.zeta * gp});
    max_center = std::max(max_center, std::abs(p.zeta * gp));
    min_xi = std::min(min_xi, p.xi);
    max_xi = std::max(max_xi, p.xi);
  }

  // Psi^+(x) and its second derivative; Psi^-(x) = Psi^+(-x).
  auto psi = [=](double x) {
    double s = 0.0;
    for (std::size_t n = 0; n < plus.size(); ++n) s += coeffs[n] * plus[n](x);
    return s;
  };
  auto psi_dd = [=](double x) {
    double s = 0.0;
    for (std::size_t n = 0; n < plus.size(); ++n) s += coeffs[n] * plus[n].second_derivative(x);
    return s;
  };

  const Window w = window_for(max_center, min_xi, max_xi, spec.window_scale);
  auto integrate = [&](const std::function<double(double)>& f) {
    return integrate_adaptive(f, w.lo, w.hi, spec, w.panels).value;
  };

  // Spin branches: index s = +1 carries Psi^+ on |+z>, s = -1 carries -Psi^-
  // on |-z>; each enters with weight 1/2. Bilinear forms are insensitive to
  // the sign of the |-z> amplitude except through the sigma_x cross term.
  auto branch = [&](double x, double s) { return s > 0 ? psi(x) : -psi(-x); };
  auto branch_dd = [&](double x, double s) { return s > 0 ? psi_dd(x) : -psi_dd(-x); };

  const double norm = integrate([&](double x) {
    return 0.5 * (branch(x, 1.0) * branch(x, 1.0) + branch(x, -1.0) * branch(x, -1.0));
  });
  if (kind == ObservableKind::Norm) return norm;
  if (!(norm > 0.0)) throw DomainError("norm of the trial state is not positive");

  const double omega = model.omega;
  const double g = model.g;
  const double Omega = model.Omega;
  double value = 0.0;
  switch (kind) {
    case ObservableKind::Norm:
      break;
    case ObservableKind::SigmaX:
      // sigma_x swaps the branches.
      value = integrate([&](double x) { return branch(x, 1.0) * branch(x, -1.0); });
      break;
    case ObservableKind::Corr:
      value = integrate([&](double x) {
        double acc = 0.0;
        for (double s : {1.0, -1.0}) {
          const double f = branch(x, s);
          acc += 0.5 * s * std::sqrt(2.0) * x * f * f;
        }
        return acc;
      });
      break;
    case ObservableKind::NPhot:
      value = integrate([&](double x) {
        double acc = 0.0;
        for (double s : {1.0, -1.0}) {
          const double f = branch(x, s);
          acc += 0.5 * f * 0.5 * (-branch_dd(x, s) + x * x * f - f);
        }
        return acc;
      });
      break;
    case ObservableKind::Energy:
      value = integrate([&](double x) {
        double acc = 0.0;
        for (double s : {1.0, -1.0}) {
          const double f = branch(x, s);
          const double hf = 0.5 * omega * (-branch_dd(x, s) + x * x * f - f) +
                            s * std::sqrt(2.0) * g * x * f;
          acc += 0.5 * f * hf;
        }
        acc += Omega / 2.0 * branch(x, 1.0) * branch(x, -1.0);
        return acc;
      });
      break;
  }
  return value / norm;
}

}  // namespace frmpe
