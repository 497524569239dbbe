#pragma once

#include <span>

#include <Eigen/Dense>

#include "frmpe/ansatz.hpp"
#include "frmpe/model.hpp"

namespace frmpe {

// Closed-form Gaussian matrix elements between |+z>-branch polarons
// phi_n^+ and phi_m^+ (see Polaron). gp is the displacement scale g'.
// All functions throw DomainError when either xi is not positive.

/// S_nm = <phi_n^+ | phi_m^+>, in (0, 1].
double overlap_same(const Polaron& pn, const Polaron& pm, double gp);

/// S_nm̄ = <phi_n^+ | phi_m^->, i.e. against the mirrored polaron.
double overlap_cross(const Polaron& pn, const Polaron& pm, double gp);

/// <phi_n^+ | x | phi_m^+>.
double moment_x(const Polaron& pn, const Polaron& pm, double gp);

/// <phi_n^+ | x^2 | phi_m^+>.
double moment_x2(const Polaron& pn, const Polaron& pm, double gp);

/// <phi_n^+ | -d^2/dx^2 | phi_m^+>. Equal to the moment expansion with the right
/// polaron's exponent coefficients D = -xi_m/2, E = -g' xi_m zeta_m, since
/// phi_m'' = ((2Dx + E)^2 + 2D) phi_m, but evaluated as S 2mu (1 - 2mu R^2)
/// with mu = xi_n xi_m / (2 (xi_n + xi_m)) and R the center separation, which
/// stays accurate when xi is large.
double kinetic_element(const Polaron& pn, const Polaron& pm, double gp);

/// h^+_nm = (omega/2) <phi_n^+ | p^2 + (x + g')^2 | phi_m^+>.
double h_plus_element(const Polaron& pn, const Polaron& pm, const ModelParams& model);

/// All pairwise kernels for one polaron set; every matrix is symmetric.
struct KernelBlock {
  Eigen::MatrixXd S;      // same-branch overlaps
  Eigen::MatrixXd X;      // first moments
  Eigen::MatrixXd X2;     // second moments
  Eigen::MatrixXd P2;     // momentum squared
  Eigen::MatrixXd Sbar;   // cross-branch overlaps
  Eigen::MatrixXd Hplus;  // h^+ elements
};

KernelBlock build_kernels(std::span<const Polaron> polarons, const ModelParams& model);

/// Same-branch overlap matrix only.
Eigen::MatrixXd gram_matrix(std::span<const Polaron> polarons, double gp);

/// sum_nm C_n C_m S_nm, which equals <G|G>.
double norm_form(const AnsatzState& state, const ModelParams& model);

/// Rayleigh quotient <G|H|G>/<G|G>:
///
///   (sum C C h^+ - (Omega/2) sum C C Sbar) / (sum C C S) + eps0
///
/// Equal to the constrained energy for a normalized state. Throws DomainError
/// when the norm form is not positive.
double energy(const AnsatzState& state, const ModelParams& model);

struct Observables {
  double sigma_x = 0.0;  // <sigma_x>
  double corr = 0.0;     // <sigma_z (a^dag + a)>
  double nphot = 0.0;    // <a^dag a>
};

/// Expectation values, divided by <G|G> so unnormalized states are accepted.
Observables observables(const AnsatzState& state, const ModelParams& model);

/// Rescales the coefficients so that sum C C S = 1. Throws DomainError if the
/// norm form is <= 1e-14.
AnsatzState normalize(const AnsatzState& state, const ModelParams& model);

}  // namespace frmpe
