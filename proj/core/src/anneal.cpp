#include <cmath>
#include <limits>
#include <random>

#include "frmpe/errors.hpp"
#include "frmpe/optimizer.hpp"

namespace frmpe {

void AnnealSchedule::validate() const {
  if (!(t_init > 0.0) || !(t_final > 0.0) || !(t_final < t_init)) {
    throw DomainError("anneal schedule needs 0 < t_final < t_init");
  }
  if (!(cooling > 0.0 && cooling < 1.0)) {
    throw DomainError("anneal cooling factor must lie in (0, 1)");
  }
  if (steps_per_stage < 1) throw DomainError("anneal needs steps_per_stage >= 1");
  for (double s : proposal_scale) {
    if (!(s > 0.0)) throw DomainError("anneal proposal scales must be positive");
  }
}

AnnealSchedule AnnealSchedule::for_model(const ModelParams& model) {
  model.validate();
  AnnealSchedule s;
  s.t_init = model.omega;
  s.t_final = 1e-8 * model.omega;
  return s;
}

namespace {

double safe_eval(const Objective& f, std::span<const double> x) {
  try {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

AnnealResult anneal(const Objective& objective, std::span<const double> init,
                    const AnnealSchedule& schedule, std::uint64_t seed) {
  schedule.validate();
  const std::size_t dim = init.size();
  AnnealResult out;
  out.params.assign(init.begin(), init.end());
  out.value = safe_eval(objective, init);
  out.evaluations = 1;
  if (!std::isfinite(out.value)) {
    throw DomainError("annealing objective is not finite at the initial point");
  }
  if (dim == 0) return out;

  std::vector<double> initial_scale(dim, 0.1);
  if (schedule.proposal_scale.size() == 1) {
    initial_scale.assign(dim, schedule.proposal_scale[0]);
  } else if (!schedule.proposal_scale.empty()) {
    if (schedule.proposal_scale.size() != dim) {
      throw DomainError("proposal_scale length does not match parameter count");
    }
    initial_scale = schedule.proposal_scale;
  }
  std::vector<double> scale = initial_scale;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  std::vector<double> current = out.params;
  double f_current = out.value;
  std::vector<long> tries(dim);
  std::vector<long> accepts(dim);

  double temperature = schedule.t_init;
  for (int stage = 0; temperature > schedule.t_final; ++stage) {
    std::fill(tries.begin(), tries.end(), 0);
    std::fill(accepts.begin(), accepts.end(), 0);
    long stage_accepts = 0;
    for (int step = 0; step < schedule.steps_per_stage; ++step) {
      const std::size_t i = static_cast<std::size_t>(step) % dim;
      const double saved = current[i];
      current[i] += scale[i] * normal(rng);
      const double f = safe_eval(objective, current);
      ++out.evaluations;
      ++tries[i];
      const double delta = f - f_current;
      const bool accept = delta <= 0.0 || uniform(rng) < std::exp(-delta / temperature);
      if (accept) {
        f_current = f;
        ++accepts[i];
        ++stage_accepts;
        if (f < out.value) {
          out.value = f;
          out.params = current;
        }
      } else {
        current[i] = saved;
      }
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if (tries[i] == 0) continue;
      const double rate = static_cast<double>(accepts[i]) / static_cast<double>(tries[i]);
      if (rate > 0.6) {
        scale[i] = std::min(scale[i] * 1.5, 10.0 * initial_scale[i]);
      } else if (rate < 0.2) {
        scale[i] = std::max(scale[i] * 0.5, 1e-12);
      }
    }
    out.trace.push_back({stage, temperature, out.value,
                         static_cast<double>(stage_accepts) / schedule.steps_per_stage});
    temperature *= schedule.cooling;
  }
  return out;
}

}  // namespace frmpe
