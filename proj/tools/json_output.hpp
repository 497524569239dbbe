#pragma once

#include "json.hpp"

#include "frmpe/exact_diag.hpp"
#include "frmpe/sweep.hpp"

// JSON mirrors of the CSV tables. Non-finite numbers become null.

namespace frmpe::cli {

nlohmann::json solver_json(const SolverSettings& s);
nlohmann::json state_json(const AnsatzState& state);
nlohmann::json sweep_json(const SweepSpec& spec, const std::vector<SweepRow>& rows);
nlohmann::json wavefunction_json(const WavefunctionSpec& spec, const WavefunctionTable& table);
nlohmann::json kernel_report_json(const KernelReport& report, double threshold);
nlohmann::json ed_json(const ModelParams& model, const EDConfig& config, const EDResult& r);
nlohmann::json optimize_json(const ModelParams& model, const OptimizeSpec& spec,
                             const VariationalResult& r);

}  // namespace frmpe::cli
