#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frmpe/ansatz.hpp"
#include "frmpe/exact_diag.hpp"
#include "frmpe/optimizer.hpp"
#include "frmpe/quadrature.hpp"

// Batch drivers behind the command line tool: coupling sweeps, wavefunction
// dumps and the kernel validation run.

namespace frmpe {

struct MethodSpec {
  Mode mode = Mode::FRMPE;
  int n = 2;
  Strategy strategy = Strategy::Nested;

  /// e.g. "frmpe4" or "cse6_full".
  std::string label() const;
  /// Accepts "frmpe:4", "cse:6:full", "frmpe4", "cse6_full".
  static MethodSpec parse(std::string_view text);
};

struct SolverSettings {
  int restarts = 4;
  EDConfig ed;
  PatternConfig pattern;
  double max_condition = kDefaultMaxCondition;
  double xi_min = 1e-2;
  double xi_max = 1e2;
  double zeta_max = 2.0;
  /// Warm-start each method from the best compatible smaller result at the
  /// same point (same or smaller N, and CSE -> FRMPE but never the reverse).
  bool chain_warm_start = true;

  void validate() const;
};

struct SweepSpec {
  double omega = 0.01;
  double Omega = 1.0;
  double ratio_min = 0.8;
  double ratio_max = 1.2;
  int points = 21;
  std::vector<MethodSpec> methods;
  bool ed = true;
  std::uint64_t seed = 1;
  int jobs = 0;  // 0 = hardware concurrency
  SolverSettings solver;

  void validate() const;
  std::vector<double> ratios() const;
};

struct MethodOutcome {
  bool ok = false;
  std::string error;  // short error code when !ok
  double energy = 0.0;
  Observables obs;
  long evaluations = 0;
  AnsatzState state;
};

struct EDOutcome {
  bool ok = false;
  std::string error;
  double energy = 0.0;
  Observables obs;
  double parity = 0.0;
  int cutoff = 0;
};

/// Deviations from ED: (E - E_ED)/omega and plain differences of the observables.
struct MethodErrors {
  double dE_over_omega = 0.0;
  double dsigma_x = 0.0;
  double dcorr = 0.0;
  double dnphot = 0.0;
};

struct SweepRow {
  double omega = 0.0;
  double Omega = 0.0;
  double g = 0.0;
  double g_over_gc = 0.0;
  std::vector<MethodOutcome> methods;  // in SweepSpec::methods order
  std::optional<EDOutcome> ed;

  /// Empty when ED is disabled or either side failed.
  std::optional<MethodErrors> errors(std::size_t method) const;
};

/// One row per ratio, in grid order. Per-point failures are recorded in the
/// row and never abort the sweep. Deterministic for a fixed spec.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Solves one model point for every method plus ED (when requested).
SweepRow solve_point(const ModelParams& model, const std::vector<MethodSpec>& methods, bool with_ed,
                     std::uint64_t seed, const SolverSettings& settings);

struct WavefunctionSpec {
  ModelParams model;
  std::vector<MethodSpec> methods;
  double grid_min = -15.0;
  double grid_max = 15.0;
  int grid_points = 601;
  std::uint64_t seed = 1;
  SolverSettings solver;

  void validate() const;
};

struct WavefunctionTable {
  std::vector<double> x;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> psi_plus;  // per method
  std::vector<double> psi_plus_ed;
  SweepRow point;

  /// Psi^+_method - Psi^+_ED at every grid point.
  std::vector<double> delta(std::size_t method) const;
};

WavefunctionTable dump_wavefunction(const WavefunctionSpec& spec);

inline constexpr std::size_t kElementKindCount = std::size(kAllElementKinds);

struct KernelReport {
  int draws = 0;
  std::uint64_t seed = 0;
  std::array<double, kElementKindCount> max_deviation{};
  int quadrature_failures = 0;

  bool passed(double threshold = 1e-9) const;
};

/// Random draws xi in [0.05, 5], zeta in [-2, 2], g' in [0, 10]; compares every
/// closed-form kernel with quad_element. draws = 1 uses a single pn = pm pair.
KernelReport validate_kernels(int draws, std::uint64_t seed, const QuadSpec& spec = {});

}  // namespace frmpe
