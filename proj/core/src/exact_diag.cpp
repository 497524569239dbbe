#include "frmpe/exact_diag.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "frmpe/errors.hpp"
#include "frmpe/hermite.hpp"

namespace frmpe {

void EDConfig::validate() const {
  if (cutoff < 1 || cutoff > max_cutoff || !(tol > 0.0)) {
    throw DomainError("ED config needs 1 <= cutoff <= max_cutoff and tol > 0");
  }
}

Eigen::MatrixXd build_hamiltonian(const ModelParams& model, int cutoff) {
  model.validate();
  if (cutoff < 0) throw DomainError("Fock cutoff must be non-negative");
  const Eigen::Index nb = cutoff + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * nb, 2 * nb);
  for (Eigen::Index spin = 0; spin < 2; ++spin) {
    const double sz = spin == 0 ? 1.0 : -1.0;
    const Eigen::Index off = spin * nb;
    for (Eigen::Index n = 0; n < nb; ++n) {
      h(off + n, off + n) = model.omega * static_cast<double>(n);
      if (n + 1 < nb) {
        const double ladder = sz * model.g * std::sqrt(static_cast<double>(n + 1));
        h(off + n, off + n + 1) = ladder;
        h(off + n + 1, off + n) = ladder;
      }
    }
  }
  for (Eigen::Index n = 0; n < nb; ++n) {
    h(n, nb + n) = 0.5 * model.Omega;
    h(nb + n, n) = 0.5 * model.Omega;
  }
  return h;
}

namespace {

// Simpson estimate of the integral of sum_n c_n psi_n(x) over x > 0; the
// window extends well past the classical turning point of the top state.
double positive_side(const Eigen::Ref<const Eigen::VectorXd>& c) {
  const auto nb = static_cast<std::size_t>(c.size());
  const double x_max = std::sqrt(2.0 * static_cast<double>(nb) + 1.0) + 10.0;
  const int intervals = 2 * static_cast<int>(std::ceil(x_max / 0.02 / 2.0));
  const double h = x_max / intervals;
  std::vector<double> psi(nb);
  double sum = 0.0;
  for (int k = 0; k <= intervals; ++k) {
    hermite_functions(k * h, psi);
    double f = 0.0;
    for (std::size_t n = 0; n < nb; ++n) f += c[static_cast<Eigen::Index>(n)] * psi[n];
    const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * h / 3.0;
}

}  // namespace

EDResult solve_fixed_cutoff(const ModelParams& model, int cutoff, bool odd_sector) {
  const Eigen::MatrixXd h = build_hamiltonian(model, cutoff);
  const Eigen::Index nb = cutoff + 1;
  EDResult r;
  r.cutoff_used = cutoff;
  if (odd_sector) {
    // Columns are the odd-parity combinations (|+z,n> - (-1)^n |-z,n>)/sqrt2.
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * nb, nb);
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index n = 0; n < nb; ++n) {
      p(n, n) = s;
      p(nb + n, n) = (n % 2 == 0) ? -s : s;
    }
    const Eigen::MatrixXd reduced = p.transpose() * h * p;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced);
    if (eig.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    r.energy = eig.eigenvalues()(0);
    r.amplitudes = p * eig.eigenvectors().col(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    if (eig.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    r.energy = eig.eigenvalues()(0);
    r.amplitudes = eig.eigenvectors().col(0);
  }
  r.amplitudes.normalize();

  if (positive_side(r.amplitudes.head(nb)) < 0.0) r.amplitudes = -r.amplitudes;

  const auto up = r.amplitudes.head(nb);
  const auto down = r.amplitudes.tail(nb);
  double sx = 0.0;
  double par = 0.0;
  double corr = 0.0;
  double nph = 0.0;
  for (Eigen::Index n = 0; n < nb; ++n) {
    const double nd = static_cast<double>(n);
    sx += 2.0 * up(n) * down(n);
    par += ((n % 2 == 0) ? 2.0 : -2.0) * up(n) * down(n);
    nph += nd * (up(n) * up(n) + down(n) * down(n));
    if (n + 1 < nb) {
      const double s = 2.0 * std::sqrt(nd + 1.0);
      corr += s * (up(n) * up(n + 1) - down(n) * down(n + 1));
    }
  }
  r.sigma_x = sx;
  r.parity = par;
  r.corr = corr;
  r.nphot = nph;
  return r;
}

EDResult ground_state(const ModelParams& model, const EDConfig& config) {
  config.validate();
  model.validate();
  int cutoff = config.cutoff;
  EDResult current = solve_fixed_cutoff(model, cutoff, config.odd_sector);
  while (2 * cutoff <= config.max_cutoff) {
    EDResult doubled = solve_fixed_cutoff(model, 2 * cutoff, config.odd_sector);
    if (std::abs(current.energy - doubled.energy) < config.tol) {
      return current;
    }
    current = std::move(doubled);
    cutoff *= 2;
  }
  throw EDNonConverged("ED did not converge below max_cutoff = " +
                           std::to_string(config.max_cutoff),
                       std::move(current));
}

BranchWavefunction ed_wavefunction(const EDResult& result, std::span<const double> grid) {
  const Eigen::Index nb = result.cutoff_used + 1;
  if (result.amplitudes.size() != 2 * nb) {
    throw DomainError("ED amplitudes do not match cutoff_used");
  }
  const auto up = result.amplitudes.head(nb);
  const auto down = result.amplitudes.tail(nb);
  std::vector<double> psi(static_cast<std::size_t>(nb));
  BranchWavefunction out;
  out.psi_plus.reserve(grid.size());
  out.psi_minus.reserve(grid.size());
  for (double x : grid) {
    hermite_functions(x, psi);
    double plus = 0.0;
    double minus = 0.0;
    for (Eigen::Index n = 0; n < nb; ++n) {
      plus += up(n) * psi[static_cast<std::size_t>(n)];
      minus += down(n) * psi[static_cast<std::size_t>(n)];
    }
    out.psi_plus.push_back(std::sqrt(2.0) * plus);
    out.psi_minus.push_back(-std::sqrt(2.0) * minus);
  }
  return out;
}

}  // namespace frmpe
