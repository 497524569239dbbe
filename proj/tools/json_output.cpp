#include "json_output.hpp"

#include <cmath>
#include <limits>

#include "frmpe/report.hpp"
#include "frmpe/version.hpp"

namespace frmpe::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json observables_json(const Observables& o) {
  return {{"sigma_x", num(o.sigma_x)}, {"corr", num(o.corr)}, {"nphot", num(o.nphot)}};
}

json model_json(const ModelParams& m) {
  return {{"omega", m.omega},
          {"Omega", m.Omega},
          {"g", m.g},
          {"g_over_gc", num(coupling_ratio(m))},
          {"g_prime", derive_scales(m).g_prime}};
}

json methods_json(const std::vector<MethodSpec>& methods) {
  json out = json::array();
  for (const auto& m : methods) out.push_back(m.label());
  return out;
}

}  // namespace

json solver_json(const SolverSettings& s) {
  return {{"restarts", s.restarts},
          {"warm_start_chain", s.chain_warm_start},
          {"ed_cutoff_start", s.ed.cutoff},
          {"ed_tol", s.ed.tol},
          {"ed_max_cutoff", s.ed.max_cutoff},
          {"ed_odd_sector", s.ed.odd_sector},
          {"max_condition", s.max_condition},
          {"xi_min", s.xi_min},
          {"xi_max", s.xi_max},
          {"zeta_max", s.zeta_max},
          {"pattern_step_init", s.pattern.step_init},
          {"pattern_step_min", s.pattern.step_min},
          {"pattern_shrink", s.pattern.shrink}};
}

json state_json(const AnsatzState& state) {
  json pol = json::array();
  for (std::size_t i = 0; i < state.size(); ++i) {
    pol.push_back({{"coeff", state.coeffs[i]},
                   {"xi", state.polarons[i].xi},
                   {"zeta", state.polarons[i].zeta}});
  }
  return {{"mode", std::string(to_string(state.mode))}, {"polarons", pol}};
}

json sweep_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  json out;
  out["schema"] = kSweepSchemaVersion;
  out["version"] = kVersion;
  out["spec"] = {{"omega", spec.omega},         {"Omega", spec.Omega},
                 {"ratio_min", spec.ratio_min}, {"ratio_max", spec.ratio_max},
                 {"points", spec.points},       {"methods", methods_json(spec.methods)},
                 {"ed", spec.ed},               {"seed", spec.seed},
                 {"solver", solver_json(spec.solver)}};
  json jrows = json::array();
  for (const auto& row : rows) {
    json r{{"version", kVersion},
           {"omega", row.omega},
           {"Omega", row.Omega},
           {"g", row.g},
           {"g_over_gc", row.g_over_gc}};
    if (row.ed) {
      const auto& ed = *row.ed;
      r["ed"] = {{"status", ed.ok ? "ok" : ed.error},
                 {"energy", num(ed.ok ? ed.energy : kNaN)},
                 {"observables", ed.ok ? observables_json(ed.obs) : json(nullptr)},
                 {"parity", num(ed.ok ? ed.parity : kNaN)},
                 {"cutoff", ed.cutoff}};
    }
    json methods = json::object();
    for (std::size_t i = 0; i < spec.methods.size() && i < row.methods.size(); ++i) {
      const auto& m = row.methods[i];
      json jm{{"status", m.ok ? "ok" : m.error}, {"evaluations", m.evaluations}};
      if (m.ok) {
        jm["energy"] = num(m.energy);
        jm["observables"] = observables_json(m.obs);
        jm["state"] = state_json(m.state);
      }
      if (const auto e = row.errors(i)) {
        jm["errors"] = {{"dE_over_omega", num(e->dE_over_omega)},
                        {"dsigma_x", num(e->dsigma_x)},
                        {"dcorr", num(e->dcorr)},
                        {"dnphot", num(e->dnphot)}};
      }
      methods[spec.methods[i].label()] = std::move(jm);
    }
    r["methods"] = std::move(methods);
    jrows.push_back(std::move(r));
  }
  out["rows"] = std::move(jrows);
  return out;
}

json wavefunction_json(const WavefunctionSpec& spec, const WavefunctionTable& table) {
  json out;
  out["schema"] = kSweepSchemaVersion;
  out["version"] = kVersion;
  out["model"] = model_json(spec.model);
  out["grid"] = {{"min", spec.grid_min}, {"max", spec.grid_max}, {"points", spec.grid_points}};
  out["seed"] = spec.seed;
  out["solver"] = solver_json(spec.solver);
  out["x"] = table.x;
  json ed_psi = json::array();
  for (double v : table.psi_plus_ed) ed_psi.push_back(num(v));
  out["psi_plus_ed"] = std::move(ed_psi);
  if (table.point.ed) out["ed_energy"] = num(table.point.ed->energy);
  json methods = json::object();
  for (std::size_t i = 0; i < table.labels.size(); ++i) {
    json psi = json::array();
    json delta = json::array();
    for (double v : table.psi_plus[i]) psi.push_back(num(v));
    for (double v : table.delta(i)) delta.push_back(num(v));
    const auto& m = table.point.methods[i];
    methods[table.labels[i]] = {{"status", m.ok ? "ok" : m.error},
                                {"energy", num(m.ok ? m.energy : kNaN)},
                                {"psi_plus", std::move(psi)},
                                {"delta_psi_plus", std::move(delta)}};
  }
  out["methods"] = std::move(methods);
  return out;
}

json kernel_report_json(const KernelReport& report, double threshold) {
  json kinds = json::object();
  for (std::size_t k = 0; k < kElementKindCount; ++k) {
    kinds[std::string(to_string(kAllElementKinds[k]))] = report.max_deviation[k];
  }
  return {{"version", kVersion},
          {"draws", report.draws},
          {"seed", report.seed},
          {"threshold", threshold},
          {"max_abs_deviation", kinds},
          {"quadrature_failures", report.quadrature_failures},
          {"passed", report.passed(threshold)}};
}

json ed_json(const ModelParams& model, const EDConfig& config, const EDResult& r) {
  return {{"version", kVersion},
          {"model", model_json(model)},
          {"tol", config.tol},
          {"odd_sector", config.odd_sector},
          {"energy", r.energy},
          {"cutoff", r.cutoff_used},
          {"observables", {{"sigma_x", r.sigma_x}, {"corr", r.corr}, {"nphot", r.nphot}}},
          {"parity", r.parity}};
}

json optimize_json(const ModelParams& model, const OptimizeSpec& spec, const VariationalResult& r) {
  json traces = json::array();
  for (const auto& trace : r.anneal_traces) {
    json t = json::array();
    for (const auto& s : trace) {
      t.push_back({{"stage", s.stage},
                   {"temperature", s.temperature},
                   {"best_energy", num(s.best)},
                   {"acceptance", s.acceptance}});
    }
    traces.push_back(std::move(t));
  }
  return {{"version", kVersion},
          {"model", model_json(model)},
          {"n_polarons", spec.n_polarons},
          {"mode", std::string(to_string(spec.mode))},
          {"strategy", std::string(to_string(spec.strategy))},
          {"seed", spec.seed},
          {"restarts", spec.restarts},
          {"energy", r.energy},
          {"observables", observables_json(r.observables)},
          {"state", state_json(r.state)},
          {"evaluations", r.evaluations},
          {"pipelines", r.restarts_used},
          {"best_pipeline", r.best_restart},
          {"anneal_traces", std::move(traces)}};
}

}  // namespace frmpe::cli
