#include <algorithm>
#include <cmath>
#include <limits>

#include "frmpe/errors.hpp"
#include "frmpe/optimizer.hpp"

namespace frmpe {

void PatternConfig::validate() const {
  if (!(step_min > 0.0) || !(step_min < step_init)) {
    throw DomainError("pattern search needs 0 < step_min < step_init");
  }
  if (!(shrink > 0.0 && shrink < 1.0)) {
    throw DomainError("pattern search shrink factor must lie in (0, 1)");
  }
  if (max_evaluations < 1) throw DomainError("pattern search needs max_evaluations >= 1");
}

namespace {

class Counted {
 public:
  explicit Counted(const Objective& f) : f_(f) {}

  double operator()(std::span<const double> x) {
    ++count_;
    try {
      const double v = f_(x);
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  }
  long count() const { return count_; }

 private:
  const Objective& f_;
  long count_ = 0;
};

// One sweep of +/- step trials per coordinate, keeping every improvement.
double explore(Counted& f, std::vector<double>& x, double fx, double step) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + step;
    double ft = f(x);
    if (ft < fx) {
      fx = ft;
      continue;
    }
    x[i] = saved - step;
    ft = f(x);
    if (ft < fx) {
      fx = ft;
      continue;
    }
    x[i] = saved;
  }
  return fx;
}

}  // namespace

PatternResult pattern_search(const Objective& objective, std::span<const double> init,
                             const PatternConfig& config) {
  config.validate();
  Counted f(objective);
  std::vector<double> base(init.begin(), init.end());
  double f_base = f(base);
  if (!std::isfinite(f_base)) {
    throw DomainError("pattern search objective is not finite at the initial point");
  }
  PatternResult out;
  out.trace.push_back(f_base);

  double step = config.step_init;
  while (step >= config.step_min && f.count() < config.max_evaluations && !base.empty()) {
    std::vector<double> trial = base;
    double f_trial = explore(f, trial, f_base, step);
    if (!(f_trial < f_base)) {
      step *= config.shrink;
      continue;
    }
    // Accept, then keep extrapolating along the last successful direction.
    while (f_trial < f_base && f.count() < config.max_evaluations) {
      std::vector<double> previous = std::move(base);
      base = std::move(trial);
      f_base = f_trial;
      out.trace.push_back(f_base);
      std::vector<double> pattern(base.size());
      for (std::size_t i = 0; i < base.size(); ++i) pattern[i] = 2.0 * base[i] - previous[i];
      const double f_pattern = f(pattern);
      trial = pattern;
      f_trial = explore(f, trial, f_pattern, step);
    }
  }
  out.params = std::move(base);
  out.value = f_base;
  out.evaluations = f.count();
  return out;
}

}  // namespace frmpe
