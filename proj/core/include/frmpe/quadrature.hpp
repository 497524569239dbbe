#pragma once

#include <functional>
#include <string_view>

#include "frmpe/ansatz.hpp"
#include "frmpe/model.hpp"

// Numerical-integration oracle for the closed-form kernels in kernels.hpp.
// Integrands are written out from the explicit Gaussian wavefunctions and
// share no code with the closed forms they check.

namespace frmpe {

struct QuadSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 20000;
  /// Multiplies the half-width of the integration window chosen by
  /// quad_element and quad_observable (max center + 12 / sqrt(min xi)).
  double window_scale = 1.0;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // summed Gauss/Kronrod discrepancy
  int subdivisions = 0;
};

/// Globally adaptive 10/21-point Gauss-Kronrod on [a, b], starting from
/// `initial_panels` equal panels and always bisecting the worst panel.
/// Converged when error <= max(abs_tol, rel_tol |value|, 100 eps L1).
/// Throws QuadratureNonConverged when max_subdivisions is exhausted.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const QuadSpec& spec, int initial_panels = 1);

enum class ElementKind { Overlap, Cross, X, X2, Kinetic, HPlus };
inline constexpr ElementKind kAllElementKinds[] = {ElementKind::Overlap, ElementKind::Cross,
                                                   ElementKind::X,       ElementKind::X2,
                                                   ElementKind::Kinetic, ElementKind::HPlus};
std::string_view to_string(ElementKind kind);

/// Quadrature value of one pair matrix element, e.g. int phi_n^+ phi_m^+ dx
/// for Overlap. Kinetic applies the analytic second derivative to phi_m.
double quad_element(ElementKind kind, const Polaron& pn, const Polaron& pm,
                    const ModelParams& model, const QuadSpec& spec = {});

enum class ObservableKind { Norm, Energy, SigmaX, Corr, NPhot };
inline constexpr ObservableKind kAllObservableKinds[] = {
    ObservableKind::Norm, ObservableKind::Energy, ObservableKind::SigmaX, ObservableKind::Corr,
    ObservableKind::NPhot};
std::string_view to_string(ObservableKind kind);

/// Expectation value over the full two-branch state, built from the original
/// Hamiltonian (Omega/2) sigma_x + omega (p^2 + x^2 - 1)/2 + sqrt(2) g sigma_z x.
/// Everything except Norm is divided by <G|G>.
double quad_observable(ObservableKind kind, const AnsatzState& state, const ModelParams& model,
                       const QuadSpec& spec = {});

}  // namespace frmpe
