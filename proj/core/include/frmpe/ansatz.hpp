#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frmpe/model.hpp"

namespace frmpe {

/// Deformed, displaced oscillator ground state
///
///   phi^(+/-)(x) = (xi/pi)^(1/4) exp(-xi (x +/- zeta g')^2 / 2)
///
/// The |+z> branch is centered at x = -zeta g', the |-z> branch at +zeta g'.
struct Polaron {
  double xi = 1.0;    // frequency renormalization, > 0
  double zeta = 0.0;  // displacement in units of g'
};

/// FRMPE lets every xi vary; CSE is the coherent-state slice xi = 1.
enum class Mode { FRMPE, CSE };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Odd-parity trial state
///
///   |G> = (1/sqrt 2) sum_n C_n (phi_n^+ |+z> - phi_n^- |-z>)
struct AnsatzState {
  std::vector<double> coeffs;
  std::vector<Polaron> polarons;
  Mode mode = Mode::FRMPE;

  std::size_t size() const noexcept { return polarons.size(); }

  /// Throws DomainError on length mismatch, N = 0, xi <= 0, or CSE with xi != 1.
  void validate() const;
};

struct BranchWavefunction {
  std::vector<double> psi_plus;
  std::vector<double> psi_minus;
};

/// Psi^+(x) = sum_n C_n phi_n^+(x) and Psi^-(x) = Psi^+(-x) on the given grid.
BranchWavefunction wavefunction(const AnsatzState& state, const ModelParams& model,
                                std::span<const double> grid);

/// Integral of Psi^+ over x > 0, in closed form.
double positive_side_integral(const AnsatzState& state, const ModelParams& model);

/// Flips the global sign of the coefficients so that positive_side_integral >= 0.
void canonicalize_sign(AnsatzState& state, const ModelParams& model);

/// Uniform grid on [lo, hi]; when lo == -hi the points are exactly antisymmetric.
std::vector<double> uniform_grid(double lo, double hi, int points);

}  // namespace frmpe
