#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "frmpe/errors.hpp"
#include "frmpe/optimizer.hpp"

namespace frmpe {

std::string_view to_string(Strategy s) {
  return s == Strategy::Full ? "full" : "nested";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "nested" || text == "NESTED") return Strategy::Nested;
  if (text == "full" || text == "FULL") return Strategy::Full;
  throw std::invalid_argument("unknown optimizer strategy '" + std::string(text) + "'");
}

void OptimizeSpec::validate() const {
  if (n_polarons < 1) throw DomainError("need n_polarons >= 1");
  if (restarts < 1) throw DomainError("need restarts >= 1");
  if (!(max_condition > 1.0)) throw DomainError("max_condition must exceed 1");
  if (!(xi_min > 0.0) || !(xi_min <= 1.0) || !(xi_max >= 1.0) || !std::isfinite(xi_max)) {
    throw DomainError("need 0 < xi_min <= 1 <= xi_max < inf");
  }
  if (!(zeta_max >= 1.0) || !std::isfinite(zeta_max)) throw DomainError("need 1 <= zeta_max < inf");
}

int OptimizeSpec::search_dimension() const {
  const int per_polaron = mode == Mode::FRMPE ? 2 : 1;
  const int angles = strategy == Strategy::Full ? n_polarons - 1 : 0;
  return per_polaron * n_polarons + angles;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Parameter vector layout: per polaron (zeta, ln xi) in FRMPE or zeta alone in
// CSE, followed in FULL strategy by N-1 hyperspherical angles for C.
struct Layout {
  int n;
  Mode mode;
  Strategy strategy;

  int stride() const { return mode == Mode::FRMPE ? 2 : 1; }
  int angle_offset() const { return stride() * n; }
  int size() const { return angle_offset() + (strategy == Strategy::Full ? n - 1 : 0); }

  std::vector<Polaron> polarons(std::span<const double> p) const {
    std::vector<Polaron> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      out[i].zeta = p[stride() * i];
      out[i].xi = mode == Mode::FRMPE ? std::exp(p[stride() * i + 1]) : 1.0;
    }
    return out;
  }

  std::vector<double> coeffs(std::span<const double> p) const {
    std::vector<double> c(static_cast<std::size_t>(n), 1.0);
    double running = 1.0;
    for (int k = 0; k + 1 < n; ++k) {
      const double theta = p[angle_offset() + k];
      c[k] = running * std::cos(theta);
      running *= std::sin(theta);
    }
    c[n - 1] = running;
    return c;
  }

  void set_polarons(std::span<double> p, std::span<const Polaron> pol) const {
    for (int i = 0; i < n; ++i) {
      p[stride() * i] = pol[i].zeta;
      if (mode == Mode::FRMPE) p[stride() * i + 1] = std::log(pol[i].xi);
    }
  }

  void set_coeffs(std::span<double> p, std::span<const double> c) const {
    for (int k = 0; k + 1 < n; ++k) {
      double tail = 0.0;
      for (int j = k + 1; j < n; ++j) tail += c[j] * c[j];
      tail = std::sqrt(tail);
      p[angle_offset() + k] = (k + 2 == n) ? std::atan2(c[n - 1], c[n - 2]) : std::atan2(tail, c[k]);
    }
  }
};

double condition_number(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  return lmin > 0.0 ? eig.eigenvalues().maxCoeff() / lmin : kInf;
}

class Energy {
 public:
  Energy(const ModelParams& model, const Layout& layout, const OptimizeSpec& spec)
      : model_(model), layout_(layout), max_condition_(spec.max_condition),
        ln_xi_min_(std::log(spec.xi_min)), ln_xi_max_(std::log(spec.xi_max)),
        zeta_max_(spec.zeta_max),
        gp_(derive_scales(model).g_prime) {}

  double operator()(std::span<const double> p) const {
    for (int i = 0; i < layout_.n; ++i) {
      if (!(std::abs(p[layout_.stride() * i]) <= zeta_max_)) return kInf;
      if (layout_.mode == Mode::FRMPE) {
        const double ln_xi = p[layout_.stride() * i + 1];
        if (!(ln_xi >= ln_xi_min_ && ln_xi <= ln_xi_max_)) return kInf;
      }
    }
    const auto polarons = layout_.polarons(p);
    if (layout_.strategy == Strategy::Nested) {
      return solve_linear_coeffs(polarons, model_, max_condition_).energy;
    }
    if (!(condition_number(gram_matrix(polarons, gp_)) <= max_condition_)) return kInf;
    AnsatzState state{layout_.coeffs(p), polarons, layout_.mode};
    return energy(state, model_);
  }

  AnsatzState state(std::span<const double> p) const {
    const auto polarons = layout_.polarons(p);
    AnsatzState s;
    s.mode = layout_.mode;
    s.polarons = polarons;
    if (layout_.strategy == Strategy::Nested) {
      s.coeffs = solve_linear_coeffs(polarons, model_, max_condition_).coeffs;
    } else {
      s.coeffs = layout_.coeffs(p);
    }
    s = normalize(s, model_);
    canonicalize_sign(s, model_);
    return s;
  }

 private:
  ModelParams model_;
  Layout layout_;
  double max_condition_;
  double ln_xi_min_;
  double ln_xi_max_;
  double zeta_max_;
  double gp_;
};

double finite_or_inf(const Energy& e, std::span<const double> p) {
  try {
    const double v = e(p);
    return std::isfinite(v) ? v : kInf;
  } catch (const std::exception&) {
    return kInf;
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0x5eedu};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

// Polarons at the classical displaced minima: pairs at zeta = +z, -z with z
// stepping down from 1, a lone last polaron on the + side for odd N.
std::vector<Polaron> classical_polarons(int n) {
  std::vector<Polaron> out;
  const int pairs = (n + 1) / 2;
  for (int i = 0; i < n; ++i) {
    const int k = i / 2;
    const double z = 1.0 - 0.5 * static_cast<double>(k) / static_cast<double>(pairs);
    out.push_back({1.0, (i % 2 == 0) ? z : -z});
  }
  return out;
}

void fill_coeff_angles(const Layout& layout, const ModelParams& model, double max_condition,
                       std::vector<double>& p) {
  if (layout.strategy != Strategy::Full) return;
  try {
    const auto sol = solve_linear_coeffs(layout.polarons(p), model, max_condition);
    layout.set_coeffs(p, sol.coeffs);
  } catch (const std::exception&) {
    std::vector<double> c(static_cast<std::size_t>(layout.n), 1.0);
    layout.set_coeffs(p, c);
  }
}

std::vector<double> restart_init(const Layout& layout, const ModelParams& model,
                                 double max_condition, const Energy& e, int restart,
                                 std::uint64_t seed) {
  std::vector<double> base(static_cast<std::size_t>(layout.size()), 0.0);
  layout.set_polarons(base, classical_polarons(layout.n));
  fill_coeff_angles(layout, model, max_condition, base);
  if (restart == 0 && std::isfinite(finite_or_inf(e, base))) return base;

  std::mt19937_64 rng(derive_seed(seed, 0x1000u + static_cast<std::uint64_t>(restart)));
  std::normal_distribution<double> normal(0.0, 0.3);
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<double> p = base;
    for (int i = 0; i < layout.angle_offset(); ++i) p[i] += normal(rng);
    fill_coeff_angles(layout, model, max_condition, p);
    if (std::isfinite(finite_or_inf(e, p))) return p;
  }
  return {};
}

// Warm start padded with new polarons near the origin. Returns an empty vector
// if no padding gives a finite starting energy.
std::vector<double> warm_init(const Layout& layout, const Energy& e, const AnsatzState& warm) {
  warm.validate();
  if (static_cast<int>(warm.size()) > layout.n) {
    throw std::invalid_argument("warm start has more polarons than requested");
  }
  if (layout.mode == Mode::CSE && warm.mode != Mode::CSE) {
    throw std::invalid_argument("CSE optimization cannot start from an FRMPE state");
  }
  const int extra = layout.n - static_cast<int>(warm.size());
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Polaron> pol = warm.polarons;
    std::vector<double> c = warm.coeffs;
    for (int k = 0; k < extra; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      Polaron p;
      p.zeta = sign * 0.1 * (attempt + k / 2);
      p.xi = layout.mode == Mode::FRMPE ? std::exp(sign * 0.5 * (1 + attempt)) : 1.0;
      pol.push_back(p);
      c.push_back(0.0);
    }
    std::vector<double> p(static_cast<std::size_t>(layout.size()), 0.0);
    layout.set_polarons(p, pol);
    if (layout.strategy == Strategy::Full) layout.set_coeffs(p, c);
    if (std::isfinite(finite_or_inf(e, p))) return p;
  }
  return {};
}

struct Pipeline {
  bool ok = false;
  double energy = kInf;
  AnsatzState state;
  long evaluations = 0;
  std::vector<AnnealStage> trace;
};

Pipeline run_pipeline(const Energy& e, std::span<const double> init, const ModelParams& model,
                      const AnnealSchedule& schedule, const PatternConfig& pconfig,
                      std::uint64_t seed) {
  Pipeline out;
  const Objective objective = [&e](std::span<const double> p) { return e(p); };
  try {
    auto coarse = anneal(objective, init, schedule, seed);
    auto fine = pattern_search(objective, coarse.params, pconfig);
    out.evaluations = coarse.evaluations + fine.evaluations;
    out.trace = std::move(coarse.trace);
    if (!std::isfinite(fine.value)) return out;
    out.state = e.state(fine.params);
    out.energy = energy(out.state, model);
    out.ok = std::isfinite(out.energy);
  } catch (const std::exception&) {
    out.ok = false;
  }
  return out;
}

}  // namespace

VariationalResult optimize(const ModelParams& model, const OptimizeSpec& spec,
                           const AnnealSchedule& schedule, const PatternConfig& pconfig,
                           const AnsatzState* warm_start) {
  model.validate();
  spec.validate();
  schedule.validate();
  pconfig.validate();

  const Layout layout{spec.n_polarons, spec.mode, spec.strategy};
  const Energy e(model, layout, spec);

  std::vector<std::vector<double>> inits;
  for (int r = 0; r < spec.restarts; ++r) {
    inits.push_back(restart_init(layout, model, spec.max_condition, e, r, spec.seed));
  }
  if (warm_start != nullptr) {
    inits.push_back(warm_init(layout, e, *warm_start));
  }

  VariationalResult result;
  result.seed = spec.seed;
  result.restarts_used = static_cast<int>(inits.size());
  bool found = false;
  for (std::size_t r = 0; r < inits.size(); ++r) {
    if (inits[r].empty()) {
      result.anneal_traces.emplace_back();
      continue;
    }
    Pipeline p = run_pipeline(e, inits[r], model, schedule, pconfig, derive_seed(spec.seed, r));
    result.evaluations += p.evaluations;
    result.anneal_traces.push_back(std::move(p.trace));
    if (!p.ok) continue;
    if (!found || p.energy < result.energy - 1e-12) {
      found = true;
      result.energy = p.energy;
      result.state = std::move(p.state);
      result.best_restart = static_cast<int>(r);
    }
  }
  if (!found) {
    throw AllRestartsFailed("every optimizer restart ended ill-conditioned or non-finite");
  }
  result.observables = observables(result.state, model);
  return result;
}

VariationalResult optimize(const ModelParams& model, const OptimizeSpec& spec,
                           const AnsatzState* warm_start) {
  return optimize(model, spec, AnnealSchedule::for_model(model), PatternConfig{}, warm_start);
}

}  // namespace frmpe
