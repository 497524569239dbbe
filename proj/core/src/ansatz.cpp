#include "frmpe/ansatz.hpp"

#include <cmath>
#include <numbers>

#include "frmpe/errors.hpp"

namespace frmpe {

std::string_view to_string(Mode mode) {
  return mode == Mode::CSE ? "cse" : "frmpe";
}

Mode parse_mode(std::string_view text) {
  if (text == "frmpe" || text == "FRMPE") return Mode::FRMPE;
  if (text == "cse" || text == "CSE") return Mode::CSE;
  throw std::invalid_argument("unknown ansatz mode '" + std::string(text) + "'");
}

void AnsatzState::validate() const {
  if (polarons.empty()) {
    throw DomainError("ansatz needs at least one polaron");
  }
  if (coeffs.size() != polarons.size()) {
    throw DomainError("coefficient and polaron lists differ in length");
  }
  for (const auto& p : polarons) {
    if (!(p.xi > 0.0) || !std::isfinite(p.xi) || !std::isfinite(p.zeta)) {
      throw DomainError("polaron needs finite zeta and xi > 0");
    }
    if (mode == Mode::CSE && p.xi != 1.0) {
      throw DomainError("CSE ansatz requires xi = 1 for every polaron");
    }
  }
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw DomainError("non-finite ansatz coefficient");
  }
}

namespace {

double branch_value(const AnsatzState& state, double gp, double x) {
  double sum = 0.0;
  for (std::size_t n = 0; n < state.size(); ++n) {
    const auto& p = state.polarons[n];
    const double u = x + p.zeta * gp;
    sum += state.coeffs[n] * std::pow(p.xi / std::numbers::pi, 0.25) * std::exp(-p.xi * u * u / 2.0);
  }
  return sum;
}

}  // namespace

BranchWavefunction wavefunction(const AnsatzState& state, const ModelParams& model,
                                std::span<const double> grid) {
  state.validate();
  const double gp = derive_scales(model).g_prime;
  BranchWavefunction out;
  out.psi_plus.reserve(grid.size());
  out.psi_minus.reserve(grid.size());
  for (double x : grid) {
    out.psi_plus.push_back(branch_value(state, gp, x));
    out.psi_minus.push_back(branch_value(state, gp, -x));
  }
  return out;
}

double positive_side_integral(const AnsatzState& state, const ModelParams& model) {
  state.validate();
  const double gp = derive_scales(model).g_prime;
  double sum = 0.0;
  for (std::size_t n = 0; n < state.size(); ++n) {
    const auto& p = state.polarons[n];
    const double a = p.zeta * gp;
    const double amp = std::pow(p.xi / std::numbers::pi, 0.25) *
                       std::sqrt(std::numbers::pi / (2.0 * p.xi)) *
                       std::erfc(a * std::sqrt(p.xi / 2.0));
    sum += state.coeffs[n] * amp;
  }
  return sum;
}

void canonicalize_sign(AnsatzState& state, const ModelParams& model) {
  if (positive_side_integral(state, model) < 0.0) {
    for (double& c : state.coeffs) c = -c;
  }
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 1 || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw DomainError("grid needs points >= 1 and finite lo <= hi");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  if (points == 1) {
    grid[0] = (lo + hi) / 2.0;
    return grid;
  }
  const double span = static_cast<double>(points - 1);
  const bool symmetric = (lo == -hi);
  for (int k = 0; k < points; ++k) {
    if (symmetric) {
      grid[k] = hi * static_cast<double>(2 * k - (points - 1)) / span;
    } else {
      const double t = static_cast<double>(k) / span;
      grid[k] = lo + (hi - lo) * t;
    }
  }
  return grid;
}

}  // namespace frmpe
