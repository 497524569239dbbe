#pragma once

// Physical parameters of the quantum Rabi model
//
//   H = (Omega/2) sigma_x + omega a^dag a + g sigma_z (a^dag + a)
//
// All quantities use hbar = m = 1. The oscillator coordinate x is the
// dimensionless one with a = (x + i p)/sqrt(2), so in the sigma_z basis the
// two spin branches see the shifted oscillators
//
//   h^(+/-) = (omega/2) (p^2 + (x +/- g')^2),   g' = sqrt(2) g / omega
//
// plus the constant eps0 = -omega (g'^2 + 1)/2. Omega = 1 is the customary
// energy unit but nothing below assumes it.

namespace frmpe {

struct ModelParams {
  double Omega = 1.0;  // qubit level splitting
  double omega = 1.0;  // oscillator frequency
  double g = 0.0;      // qubit-oscillator coupling

  /// Throws DomainError unless omega > 0, Omega >= 0, g >= 0 (all finite).
  void validate() const;
};

struct CouplingScales {
  double g_prime = 0.0;  // sqrt(2) g / omega
  double g_c0 = 0.0;     // sqrt(omega Omega) / 2
  double g_c = 0.0;      // sqrt(omega^2 + sqrt(omega^4 + g_c0^4))
  double eps0 = 0.0;     // -omega (g'^2 + 1) / 2
};

CouplingScales derive_scales(const ModelParams& params);

/// g / g_c.
double coupling_ratio(const ModelParams& params);

/// Crossover scale g_c as a function of (omega, Omega) only.
double crossover_coupling(double omega, double Omega);

/// Model at g = ratio * g_c(omega, Omega).
ModelParams model_at_ratio(double omega, double Omega, double ratio);

}  // namespace frmpe
