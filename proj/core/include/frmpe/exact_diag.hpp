#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "frmpe/ansatz.hpp"
#include "frmpe/model.hpp"

// Truncated-Fock exact diagonalization of the Rabi Hamiltonian in the
// sigma_z (x) Fock product basis. Basis index = spin * (cutoff + 1) + n with
// spin 0 = |+z>, spin 1 = |-z>.

namespace frmpe {

struct EDConfig {
  int cutoff = 32;        // starting maximum Fock occupation
  double tol = 1e-10;     // |E(c) - E(2c)| convergence threshold
  int max_cutoff = 4096;  // ceiling for the doubling loop
  /// Diagonalize inside the odd-parity sector spanned by
  /// (|+z,n> - (-1)^n |-z,n>)/sqrt2. Deep in the two-well regime the
  /// even/odd splitting drops below double precision and a full-space
  /// solve returns an arbitrary parity mixture.
  bool odd_sector = true;

  void validate() const;
};

struct EDResult {
  double energy = 0.0;
  Eigen::VectorXd amplitudes;  // length 2 (cutoff_used + 1), unit norm
  int cutoff_used = 0;
  double sigma_x = 0.0;
  double corr = 0.0;
  double nphot = 0.0;
  double parity = 0.0;  // <sigma_x (-1)^(a^dag a)>
};

/// Raised when the doubling loop reaches max_cutoff; carries the best estimate.
class EDNonConverged : public std::runtime_error {
 public:
  EDNonConverged(const std::string& what, EDResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const EDResult& best() const noexcept { return best_; }

 private:
  EDResult best_;
};

/// Dense 2(cutoff+1) square matrix: diagonal blocks omega n +/- g (a + a^dag),
/// off-diagonal blocks (Omega/2) identity. cutoff = 0 is allowed.
Eigen::MatrixXd build_hamiltonian(const ModelParams& model, int cutoff);

/// Lowest eigenpair at a fixed cutoff with all expectation values, returned in
/// the product basis. The global sign is fixed so that Psi^+ integrates to a
/// non-negative value over x > 0.
EDResult solve_fixed_cutoff(const ModelParams& model, int cutoff, bool odd_sector = true);

/// Doubles the cutoff from config.cutoff until |E(c) - E(2c)| < tol and
/// returns the result at c, so one further doubling is already known to move
/// the energy by less than tol.
EDResult ground_state(const ModelParams& model, const EDConfig& config = {});

/// Position-space branches in the ansatz convention |G> = (Psi^+|+z> - Psi^-|-z>)/sqrt 2,
/// i.e. Psi^+ = sqrt2 * (|+z> amplitude) and Psi^- = -sqrt2 * (|-z> amplitude).
BranchWavefunction ed_wavefunction(const EDResult& result, std::span<const double> grid);

}  // namespace frmpe
