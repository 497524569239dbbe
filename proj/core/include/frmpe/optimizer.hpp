#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "frmpe/ansatz.hpp"
#include "frmpe/kernels.hpp"
#include "frmpe/model.hpp"

namespace frmpe {

using Objective = std::function<double(std::span<const double>)>;

// ---------------------------------------------------------------------------
// Exact coefficients at fixed polarons
// ---------------------------------------------------------------------------

inline constexpr double kDefaultMaxCondition = 1e12;

struct LinearSolution {
  double energy = 0.0;          // lowest generalized eigenvalue + eps0
  std::vector<double> coeffs;   // S-normalized, sign-canonical
  double condition = 0.0;       // condition number of the Gram matrix
};

/// The energy is a Rayleigh quotient in C, so at fixed polarons the optimum
/// solves H c = E S c with H = h^+ - (Omega/2) Sbar. Throws IllConditioned when
/// S is not positive definite or its condition number exceeds max_condition.
LinearSolution solve_linear_coeffs(std::span<const Polaron> polarons, const ModelParams& model,
                                   double max_condition = kDefaultMaxCondition);

// ---------------------------------------------------------------------------
// Simulated annealing
// ---------------------------------------------------------------------------

struct AnnealSchedule {
  double t_init = 1.0;
  double t_final = 1e-8;
  double cooling = 0.95;
  int steps_per_stage = 200;
  /// Initial per-parameter Gaussian step widths; empty means 0.1 for every
  /// parameter, a single entry is broadcast. Widths adapt per stage to keep
  /// the acceptance rate between 0.2 and 0.6.
  std::vector<double> proposal_scale;

  void validate() const;
  /// t_init = omega, t_final = 1e-8 omega, cooling 0.95, 200 steps per stage.
  static AnnealSchedule for_model(const ModelParams& model);
};

struct AnnealStage {
  int stage = 0;
  double temperature = 0.0;
  double best = 0.0;
  double acceptance = 0.0;
};

struct AnnealResult {
  std::vector<double> params;  // best point ever visited
  double value = 0.0;
  long evaluations = 0;
  std::vector<AnnealStage> trace;
};

/// Metropolis annealing with single-coordinate Gaussian proposals. Objective
/// exceptions and non-finite values count as +inf (always rejected).
/// Deterministic for fixed (init, schedule, seed).
AnnealResult anneal(const Objective& objective, std::span<const double> init,
                    const AnnealSchedule& schedule, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Hooke-Jeeves pattern search
// ---------------------------------------------------------------------------

struct PatternConfig {
  double step_init = 0.1;
  double step_min = 1e-10;
  double shrink = 0.5;
  long max_evaluations = 2'000'000;

  void validate() const;
};

struct PatternResult {
  std::vector<double> params;
  double value = 0.0;
  long evaluations = 0;
  std::vector<double> trace;  // base-point value after every accepted move
};

/// Exploratory coordinate moves plus pattern (extrapolation) moves; the mesh
/// shrinks when no exploratory move improves and the search stops once it
/// drops below step_min. The result never exceeds objective(init).
PatternResult pattern_search(const Objective& objective, std::span<const double> init,
                             const PatternConfig& config);

// ---------------------------------------------------------------------------
// Full variational pipeline
// ---------------------------------------------------------------------------

/// NESTED searches {zeta, ln xi} with exact coefficients at every step; FULL
/// also searches the coefficient direction (N-1 hyperspherical angles).
enum class Strategy { Nested, Full };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

struct OptimizeSpec {
  int n_polarons = 2;
  Mode mode = Mode::FRMPE;
  Strategy strategy = Strategy::Nested;
  std::uint64_t seed = 1;
  int restarts = 4;
  double max_condition = kDefaultMaxCondition;
  /// Search box; the objective is +inf outside it. A huge xi puts O(omega xi)
  /// on the diagonal of H and the eigensolver's absolute error, eps * |H|,
  /// then swamps the physical eigenvalue. Without a zeta bound, polarons with
  /// vanishing weight sit on a flat plateau and annealing drifts them away.
  double xi_min = 1e-2;
  double xi_max = 1e2;
  double zeta_max = 2.0;

  void validate() const;
  /// Number of searched parameters: 2N (NESTED FRMPE), N (NESTED CSE),
  /// 3N-1 (FULL FRMPE), 2N-1 (FULL CSE).
  int search_dimension() const;
};

struct VariationalResult {
  double energy = 0.0;
  AnsatzState state;  // normalized, sign-canonical
  Observables observables;
  long evaluations = 0;
  int restarts_used = 0;
  int best_restart = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<AnnealStage>> anneal_traces;  // one per pipeline
};

/// Runs `restarts` seeded anneal + pattern-search pipelines and returns the
/// lowest energy (ties below 1e-12 go to the lowest pipeline index). When a
/// warm start is given, one extra pipeline starts from it, padded with new
/// polarons up to n_polarons; its result is never above the warm start energy.
/// Throws AllRestartsFailed when no pipeline ends on a finite energy.
VariationalResult optimize(const ModelParams& model, const OptimizeSpec& spec,
                           const AnnealSchedule& schedule, const PatternConfig& pconfig,
                           const AnsatzState* warm_start = nullptr);

/// Same, with AnnealSchedule::for_model and default PatternConfig.
VariationalResult optimize(const ModelParams& model, const OptimizeSpec& spec,
                           const AnsatzState* warm_start = nullptr);

}  // namespace frmpe
