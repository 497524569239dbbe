#include "frmpe/kernels.hpp"

#include <cmath>

#include "frmpe/errors.hpp"

namespace frmpe {

namespace {

void check_pair(const Polaron& pn, const Polaron& pm) {
  if (!(pn.xi > 0.0) || !(pm.xi > 0.0)) {
    throw DomainError("polaron frequency factor xi must be positive");
  }
}

// Gaussian product overlap for centers separated by `shift` (in units of g').
double overlap_impl(double xn, double xm, double shift, double gp) {
  const double sum = xn + xm;
  const double pref = std::sqrt(2.0 * std::sqrt(xn * xm) / sum);
  const double d = shift * gp;
  return pref * std::exp(-d * d * xn * xm / (2.0 * sum));
}

// Weighted center of the product phi_n^+ phi_m^+, in x.
double product_center(const Polaron& pn, const Polaron& pm, double gp) {
  return -(pm.xi * pm.zeta + pn.xi * pn.zeta) * gp / (pn.xi + pm.xi);
}

struct Moments {
  double s;
  double x;
  double x2;
};

Moments moments(const Polaron& pn, const Polaron& pm, double gp) {
  const double s = overlap_impl(pn.xi, pm.xi, pn.zeta - pm.zeta, gp);
  const double c = product_center(pn, pm, gp);
  return {s, s * c, s * (1.0 / (pn.xi + pm.xi) + c * c)};
}

// <p^2> between Gaussians of reduced exponent mu = xi_n xi_m / (2 (xi_n + xi_m))
// separated by R: S 2 mu (1 - 2 mu R^2). Expanding through the x-moments instead
// cancels terms of order xi^2 g'^2 and loses every digit once xi is large.
double kinetic_from(const Moments& m, const Polaron& pn, const Polaron& pm, double gp) {
  const double mu = 0.5 * pn.xi * pm.xi / (pn.xi + pm.xi);
  const double r = (pn.zeta - pm.zeta) * gp;
  return m.s * 2.0 * mu * (1.0 - 2.0 * mu * r * r);
}

// (omega/2) <p^2 + (x + g')^2>, with the shifted second moment taken about the
// product center directly.
double h_plus_from(const Moments& m, double p2, const Polaron& pn, const Polaron& pm, double gp,
                   double omega) {
  const double shifted = product_center(pn, pm, gp) + gp;
  const double x2_shifted = m.s * (1.0 / (pn.xi + pm.xi) + shifted * shifted);
  return 0.5 * omega * (p2 + x2_shifted);
}

}  // namespace

double overlap_same(const Polaron& pn, const Polaron& pm, double gp) {
  check_pair(pn, pm);
  return overlap_impl(pn.xi, pm.xi, pn.zeta - pm.zeta, gp);
}

double overlap_cross(const Polaron& pn, const Polaron& pm, double gp) {
  check_pair(pn, pm);
  return overlap_impl(pn.xi, pm.xi, pn.zeta + pm.zeta, gp);
}

double moment_x(const Polaron& pn, const Polaron& pm, double gp) {
  check_pair(pn, pm);
  return moments(pn, pm, gp).x;
}

double moment_x2(const Polaron& pn, const Polaron& pm, double gp) {
  check_pair(pn, pm);
  return moments(pn, pm, gp).x2;
}

double kinetic_element(const Polaron& pn, const Polaron& pm, double gp) {
  check_pair(pn, pm);
  return kinetic_from(moments(pn, pm, gp), pn, pm, gp);
}

double h_plus_element(const Polaron& pn, const Polaron& pm, const ModelParams& model) {
  check_pair(pn, pm);
  const double gp = derive_scales(model).g_prime;
  const Moments m = moments(pn, pm, gp);
  return h_plus_from(m, kinetic_from(m, pn, pm, gp), pn, pm, gp, model.omega);
}

KernelBlock build_kernels(std::span<const Polaron> polarons, const ModelParams& model) {
  const auto scales = derive_scales(model);
  const double gp = scales.g_prime;
  const auto n = static_cast<Eigen::Index>(polarons.size());
  KernelBlock k;
  k.S.resize(n, n);
  k.X.resize(n, n);
  k.X2.resize(n, n);
  k.P2.resize(n, n);
  k.Sbar.resize(n, n);
  k.Hplus.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const auto& pi = polarons[static_cast<std::size_t>(i)];
      const auto& pj = polarons[static_cast<std::size_t>(j)];
      check_pair(pi, pj);
      const Moments m = moments(pi, pj, gp);
      const double sbar = overlap_impl(pi.xi, pj.xi, pi.zeta + pj.zeta, gp);
      const double p2 = kinetic_from(m, pi, pj, gp);
      const double hp = h_plus_from(m, p2, pi, pj, gp, model.omega);
      k.S(i, j) = k.S(j, i) = m.s;
      k.X(i, j) = k.X(j, i) = m.x;
      k.X2(i, j) = k.X2(j, i) = m.x2;
      k.P2(i, j) = k.P2(j, i) = p2;
      k.Sbar(i, j) = k.Sbar(j, i) = sbar;
      k.Hplus(i, j) = k.Hplus(j, i) = hp;
    }
  }
  return k;
}

Eigen::MatrixXd gram_matrix(std::span<const Polaron> polarons, double gp) {
  const auto n = static_cast<Eigen::Index>(polarons.size());
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const auto& pi = polarons[static_cast<std::size_t>(i)];
      const auto& pj = polarons[static_cast<std::size_t>(j)];
      check_pair(pi, pj);
      s(i, j) = s(j, i) = overlap_impl(pi.xi, pj.xi, pi.zeta - pj.zeta, gp);
    }
  }
  return s;
}

namespace {

Eigen::Map<const Eigen::VectorXd> coeff_view(const AnsatzState& state) {
  return {state.coeffs.data(), static_cast<Eigen::Index>(state.coeffs.size())};
}

double checked_norm(const Eigen::VectorXd& c, const Eigen::MatrixXd& s) {
  const double nrm = c.dot(s * c);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw DomainError("norm quadratic form is not positive (degenerate polaron basis)");
  }
  return nrm;
}

}  // namespace

double norm_form(const AnsatzState& state, const ModelParams& model) {
  state.validate();
  const Eigen::VectorXd c = coeff_view(state);
  return c.dot(gram_matrix(state.polarons, derive_scales(model).g_prime) * c);
}

double energy(const AnsatzState& state, const ModelParams& model) {
  state.validate();
  const auto scales = derive_scales(model);
  const KernelBlock k = build_kernels(state.polarons, model);
  const Eigen::VectorXd c = coeff_view(state);
  const double nrm = checked_norm(c, k.S);
  const double h = c.dot(k.Hplus * c) - 0.5 * model.Omega * c.dot(k.Sbar * c);
  return h / nrm + scales.eps0;
}

Observables observables(const AnsatzState& state, const ModelParams& model) {
  state.validate();
  const KernelBlock k = build_kernels(state.polarons, model);
  const Eigen::VectorXd c = coeff_view(state);
  const double nrm = checked_norm(c, k.S);
  Observables o;
  o.sigma_x = -c.dot(k.Sbar * c) / nrm;
  o.corr = std::sqrt(2.0) * c.dot(k.X * c) / nrm;
  o.nphot = (c.dot((k.X2 + k.P2) * c) / nrm - 1.0) / 2.0;
  return o;
}

AnsatzState normalize(const AnsatzState& state, const ModelParams& model) {
  const double nrm = norm_form(state, model);
  if (!(nrm > 1e-14) || !std::isfinite(nrm)) {
    throw DomainError("cannot normalize: norm quadratic form <= 1e-14");
  }
  AnsatzState out = state;
  const double scale = 1.0 / std::sqrt(nrm);
  for (double& c : out.coeffs) c *= scale;
  return out;
}

}  // namespace frmpe
