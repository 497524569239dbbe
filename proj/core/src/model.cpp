#include "frmpe/model.hpp"

#include <cmath>
#include <string>

#include "frmpe/errors.hpp"

namespace frmpe {

void ModelParams::validate() const {
  if (!std::isfinite(omega) || !std::isfinite(Omega) || !std::isfinite(g)) {
    throw DomainError("model parameters must be finite");
  }
  if (omega <= 0.0) {
    throw DomainError("oscillator frequency omega must be positive, got " + std::to_string(omega));
  }
  if (Omega < 0.0) {
    throw DomainError("qubit splitting Omega must be non-negative, got " + std::to_string(Omega));
  }
  if (g < 0.0) {
    throw DomainError("coupling g must be non-negative, got " + std::to_string(g));
  }
}

double crossover_coupling(double omega, double Omega) {
  ModelParams{Omega, omega, 0.0}.validate();
  const double g_c0 = std::sqrt(omega * Omega) / 2.0;
  const double w2 = omega * omega;
  const double g2 = g_c0 * g_c0;
  return std::sqrt(w2 + std::sqrt(w2 * w2 + g2 * g2));
}

CouplingScales derive_scales(const ModelParams& params) {
  params.validate();
  CouplingScales s;
  s.g_prime = std::sqrt(2.0) * params.g / params.omega;
  s.g_c0 = std::sqrt(params.omega * params.Omega) / 2.0;
  s.g_c = crossover_coupling(params.omega, params.Omega);
  s.eps0 = -params.omega * (s.g_prime * s.g_prime + 1.0) / 2.0;
  return s;
}

double coupling_ratio(const ModelParams& params) {
  const double g_c = derive_scales(params).g_c;
  if (!(g_c > 0.0)) {
    throw DomainError("crossover coupling g_c vanishes");
  }
  return params.g / g_c;
}

ModelParams model_at_ratio(double omega, double Omega, double ratio) {
  if (!std::isfinite(ratio) || ratio < 0.0) {
    throw DomainError("coupling ratio must be finite and non-negative");
  }
  return ModelParams{Omega, omega, ratio * crossover_coupling(omega, Omega)};
}

}  // namespace frmpe
