#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "frmpe/errors.hpp"
#include "frmpe/optimizer.hpp"

namespace frmpe {

LinearSolution solve_linear_coeffs(std::span<const Polaron> polarons, const ModelParams& model,
                                   double max_condition) {
  if (polarons.empty()) throw DomainError("need at least one polaron");
  const auto scales = derive_scales(model);
  const KernelBlock k = build_kernels(polarons, model);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram(k.S);
  const double lmin = gram.eigenvalues().minCoeff();
  const double lmax = gram.eigenvalues().maxCoeff();
  if (!(lmin > 0.0)) {
    throw IllConditioned("Gram matrix is not positive definite", std::numeric_limits<double>::infinity());
  }
  const double cond = lmax / lmin;
  if (!(cond <= max_condition)) {
    throw IllConditioned("Gram matrix condition number exceeds bound", cond);
  }

  // Canonical orthogonalization: X = U L^(-1/2) maps to an S-orthonormal basis.
  const Eigen::MatrixXd x =
      gram.eigenvectors() * gram.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
  const Eigen::MatrixXd h = k.Hplus - 0.5 * model.Omega * k.Sbar;
  const Eigen::MatrixXd reduced = x.transpose() * h * x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (reduced + reduced.transpose()));

  Eigen::VectorXd c = x * eig.eigenvectors().col(0);
  c /= std::sqrt(c.dot(k.S * c));

  LinearSolution out;
  out.energy = eig.eigenvalues()(0) + scales.eps0;
  out.coeffs.assign(c.data(), c.data() + c.size());
  out.condition = cond;

  AnsatzState tmp{out.coeffs, {polarons.begin(), polarons.end()}, Mode::FRMPE};
  canonicalize_sign(tmp, model);
  out.coeffs = std::move(tmp.coeffs);
  return out;
}

}  // namespace frmpe
