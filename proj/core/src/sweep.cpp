#include "frmpe/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "frmpe/errors.hpp"
#include "frmpe/kernels.hpp"

namespace frmpe {

std::string MethodSpec::label() const {
  std::string out(to_string(mode));
  out += std::to_string(n);
  if (strategy == Strategy::Full) out += "_full";
  return out;
}

MethodSpec MethodSpec::parse(std::string_view text) {
  MethodSpec m;
  std::string_view rest = text;
  auto take_mode = [&](std::string_view prefix, Mode mode) {
    if (rest.substr(0, prefix.size()) == prefix) {
      m.mode = mode;
      rest.remove_prefix(prefix.size());
      return true;
    }
    return false;
  };
  if (!take_mode("frmpe", Mode::FRMPE) && !take_mode("cse", Mode::CSE)) {
    throw std::invalid_argument("method must start with 'frmpe' or 'cse': " + std::string(text));
  }
  if (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
  int n = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
  if (ec != std::errc{} || n < 1) {
    throw std::invalid_argument("method needs a polaron count >= 1: " + std::string(text));
  }
  m.n = n;
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  if (!rest.empty()) {
    if (rest.front() != ':' && rest.front() != '_') {
      throw std::invalid_argument("malformed method: " + std::string(text));
    }
    rest.remove_prefix(1);
    m.strategy = parse_strategy(rest);
  }
  return m;
}

void SolverSettings::validate() const {
  OptimizeSpec os;
  os.restarts = restarts;
  os.max_condition = max_condition;
  os.xi_min = xi_min;
  os.xi_max = xi_max;
  os.zeta_max = zeta_max;
  os.validate();
  ed.validate();
  pattern.validate();
}

void SweepSpec::validate() const {
  ModelParams{Omega, omega, 0.0}.validate();
  if (points < 1) throw DomainError("sweep needs points >= 1");
  if (!(ratio_min <= ratio_max) || ratio_min < 0.0) {
    throw DomainError("sweep needs 0 <= ratio_min <= ratio_max");
  }
  if (methods.empty()) throw DomainError("sweep needs at least one method");
  solver.validate();
}

std::vector<double> SweepSpec::ratios() const {
  std::vector<double> r(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    r[k] = points == 1 ? ratio_min
                       : ratio_min + (ratio_max - ratio_min) * static_cast<double>(k) / (points - 1);
  }
  return r;
}

std::optional<MethodErrors> SweepRow::errors(std::size_t method) const {
  if (!ed || !ed->ok || method >= methods.size() || !methods[method].ok) return std::nullopt;
  const auto& m = methods[method];
  return MethodErrors{(m.energy - ed->energy) / omega, m.obs.sigma_x - ed->obs.sigma_x,
                      m.obs.corr - ed->obs.corr, m.obs.nphot - ed->obs.nphot};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool can_warm_start(const MethodSpec& from, const MethodSpec& to) {
  if (from.n > to.n) return false;
  if (from.n == to.n && from.mode == to.mode) return false;
  return to.mode == Mode::FRMPE || from.mode == Mode::CSE;
}

}  // namespace

SweepRow solve_point(const ModelParams& model, const std::vector<MethodSpec>& methods, bool with_ed,
                     std::uint64_t seed, const SolverSettings& settings) {
  SweepRow row;
  row.omega = model.omega;
  row.Omega = model.Omega;
  row.g = model.g;
  row.g_over_gc = coupling_ratio(model);
  row.methods.resize(methods.size());

  if (with_ed) {
    EDOutcome ed;
    try {
      const EDResult r = ground_state(model, settings.ed);
      ed.ok = true;
      ed.energy = r.energy;
      ed.obs = {r.sigma_x, r.corr, r.nphot};
      ed.parity = r.parity;
      ed.cutoff = r.cutoff_used;
    } catch (const EDNonConverged& e) {
      ed.error = "ed_nonconverged";
      ed.energy = e.best().energy;
      ed.cutoff = e.best().cutoff_used;
    } catch (const std::exception&) {
      ed.error = "ed_failed";
    }
    row.ed = ed;
  }

  // Smaller bases first so larger ones can start from them.
  std::vector<std::size_t> order(methods.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (methods[a].n != methods[b].n) return methods[a].n < methods[b].n;
    return methods[a].mode == Mode::CSE && methods[b].mode == Mode::FRMPE;
  });

  std::vector<bool> done(methods.size(), false);
  for (std::size_t idx : order) {
    const MethodSpec& m = methods[idx];
    const AnsatzState* warm = nullptr;
    if (settings.chain_warm_start) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < methods.size(); ++j) {
        if (!done[j] || !row.methods[j].ok || !can_warm_start(methods[j], m)) continue;
        if (row.methods[j].energy < best) {
          best = row.methods[j].energy;
          warm = &row.methods[j].state;
        }
      }
    }
    OptimizeSpec os;
    os.n_polarons = m.n;
    os.mode = m.mode;
    os.strategy = m.strategy;
    os.restarts = settings.restarts;
    os.max_condition = settings.max_condition;
    os.xi_min = settings.xi_min;
    os.xi_max = settings.xi_max;
    os.zeta_max = settings.zeta_max;
    os.seed = splitmix64(seed ^ splitmix64(idx + 1));
    MethodOutcome out;
    try {
      const VariationalResult r =
          optimize(model, os, AnnealSchedule::for_model(model), settings.pattern, warm);
      out.ok = true;
      out.energy = r.energy;
      out.obs = r.observables;
      out.evaluations = r.evaluations;
      out.state = r.state;
    } catch (const AllRestartsFailed&) {
      out.error = "all_restarts_failed";
    } catch (const std::exception&) {
      out.error = "optimizer_failed";
    }
    row.methods[idx] = std::move(out);
    done[idx] = true;
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto ratios = spec.ratios();
  std::vector<SweepRow> rows(ratios.size());

  auto work = [&](std::size_t k) {
    const ModelParams model = model_at_ratio(spec.omega, spec.Omega, ratios[k]);
    try {
      rows[k] = solve_point(model, spec.methods, spec.ed, splitmix64(spec.seed + k), spec.solver);
    } catch (const std::exception&) {
      SweepRow failed;
      failed.omega = model.omega;
      failed.Omega = model.Omega;
      failed.g = model.g;
      failed.g_over_gc = ratios[k];
      MethodOutcome marker;
      marker.error = "point_failed";
      failed.methods.assign(spec.methods.size(), marker);
      rows[k] = std::move(failed);
    }
  };

  unsigned jobs = spec.jobs > 0 ? static_cast<unsigned>(spec.jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(ratios.size()));
  if (jobs <= 1) {
    for (std::size_t k = 0; k < ratios.size(); ++k) work(k);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < ratios.size(); k = next++) work(k);
    });
  }
  pool.clear();
  return rows;
}

void WavefunctionSpec::validate() const {
  model.validate();
  if (methods.empty()) throw DomainError("wavefunction dump needs at least one method");
  if (grid_points < 1 || !(grid_min <= grid_max)) throw DomainError("invalid wavefunction grid");
  solver.validate();
}

std::vector<double> WavefunctionTable::delta(std::size_t method) const {
  std::vector<double> d(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) d[k] = psi_plus[method][k] - psi_plus_ed[k];
  return d;
}

WavefunctionTable dump_wavefunction(const WavefunctionSpec& spec) {
  spec.validate();
  WavefunctionTable t;
  t.x = uniform_grid(spec.grid_min, spec.grid_max, spec.grid_points);
  t.point = solve_point(spec.model, spec.methods, true, spec.seed, spec.solver);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < spec.methods.size(); ++i) {
    t.labels.push_back(spec.methods[i].label());
    const auto& m = t.point.methods[i];
    if (m.ok) {
      t.psi_plus.push_back(wavefunction(m.state, spec.model, t.x).psi_plus);
    } else {
      t.psi_plus.emplace_back(t.x.size(), nan);
    }
  }
  // The cutoff reported by solve_point is the converged one; recompute the vector.
  if (t.point.ed && t.point.ed->ok) {
    const EDResult r =
        solve_fixed_cutoff(spec.model, t.point.ed->cutoff, spec.solver.ed.odd_sector);
    t.psi_plus_ed = ed_wavefunction(r, t.x).psi_plus;
  } else {
    t.psi_plus_ed.assign(t.x.size(), nan);
  }
  return t;
}

bool KernelReport::passed(double threshold) const {
  if (quadrature_failures > 0) return false;
  return std::all_of(max_deviation.begin(), max_deviation.end(),
                     [&](double d) { return d < threshold; });
}

KernelReport validate_kernels(int draws, std::uint64_t seed, const QuadSpec& spec) {
  if (draws < 1) throw DomainError("validate_kernels needs draws >= 1");
  KernelReport report;
  report.draws = draws;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xi_dist(0.05, 5.0);
  std::uniform_real_distribution<double> zeta_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> gp_dist(0.0, 10.0);

  for (int d = 0; d < draws; ++d) {
    const Polaron pn{xi_dist(rng), zeta_dist(rng)};
    const Polaron pm = draws == 1 ? pn : Polaron{xi_dist(rng), zeta_dist(rng)};
    const double gp = gp_dist(rng);
    // omega = 1 with g chosen to give the drawn g'.
    const ModelParams model{1.0, 1.0, gp / std::sqrt(2.0)};
    const double gp_model = derive_scales(model).g_prime;
    for (std::size_t k = 0; k < kElementKindCount; ++k) {
      const ElementKind kind = kAllElementKinds[k];
      double closed = 0.0;
      switch (kind) {
        case ElementKind::Overlap: closed = overlap_same(pn, pm, gp_model); break;
        case ElementKind::Cross: closed = overlap_cross(pn, pm, gp_model); break;
        case ElementKind::X: closed = moment_x(pn, pm, gp_model); break;
        case ElementKind::X2: closed = moment_x2(pn, pm, gp_model); break;
        case ElementKind::Kinetic: closed = kinetic_element(pn, pm, gp_model); break;
        case ElementKind::HPlus: closed = h_plus_element(pn, pm, model); break;
      }
      try {
        const double quad = quad_element(kind, pn, pm, model, spec);
        report.max_deviation[k] = std::max(report.max_deviation[k], std::abs(quad - closed));
      } catch (const QuadratureNonConverged&) {
        ++report.quadrature_failures;
      }
    }
  }
  return report;
}

}  // namespace frmpe
