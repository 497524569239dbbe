#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frmpe/errors.hpp"
#include "frmpe/exact_diag.hpp"
#include "frmpe/report.hpp"
#include "frmpe/sweep.hpp"
#include "frmpe/version.hpp"
#include "json_output.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kValidationFailed = 1,
  kEDNonConverged = 2,
  kAllRestartsFailed = 3,
  kBadArguments = 4,
};

// Every flag lives on the top-level app so that a config file is a flat list
// of key=value lines named after the flags; subcommands fall through to it.
struct Options {
  double omega = 0.01;
  double Omega = 1.0;
  double g = 0.0;
  double ratio = 1.0;
  double ratio_min = 0.8;
  double ratio_max = 1.2;
  int points = 21;
  int n_polarons = 4;
  std::string mode = "frmpe";
  std::string strategy = "nested";
  std::vector<std::string> methods;
  int restarts = 4;
  std::uint64_t seed = 1;
  double ed_tol = 1e-10;
  int ed_cutoff = 32;
  int ed_max_cutoff = 4096;
  bool ed_full_space = false;
  bool no_ed = false;
  bool no_warm_start = false;
  double max_condition = frmpe::kDefaultMaxCondition;
  double xi_min = 1e-2;
  double xi_max = 1e2;
  double zeta_max = 2.0;
  std::string out = "-";
  std::string format = "csv";
  double grid_min = -15.0;
  double grid_max = 15.0;
  int grid_points = 601;
  int jobs = 0;
  int draws = 1000;
  double threshold = 1e-9;
  std::string trace;
  std::string gnuplot;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_text(const std::string& path, const std::string& text) {
  Output out(path);
  out.stream() << text;
}

frmpe::ModelParams point_model(const Options& o, const CLI::Option* g_opt) {
  if (g_opt->count() > 0) return frmpe::ModelParams{o.Omega, o.omega, o.g};
  return frmpe::model_at_ratio(o.omega, o.Omega, o.ratio);
}

std::vector<frmpe::MethodSpec> methods_from(const Options& o, bool n_given,
                                            std::vector<frmpe::MethodSpec> fallback) {
  std::vector<frmpe::MethodSpec> out;
  for (const auto& m : o.methods) out.push_back(frmpe::MethodSpec::parse(m));
  if (!out.empty()) return out;
  if (!n_given && !fallback.empty()) return fallback;
  frmpe::MethodSpec m;
  m.mode = frmpe::parse_mode(o.mode);
  m.n = o.n_polarons;
  m.strategy = frmpe::parse_strategy(o.strategy);
  return {m};
}

frmpe::SolverSettings solver_from(const Options& o) {
  frmpe::SolverSettings s;
  s.restarts = o.restarts;
  s.ed.tol = o.ed_tol;
  s.ed.cutoff = o.ed_cutoff;
  s.ed.max_cutoff = o.ed_max_cutoff;
  s.ed.odd_sector = !o.ed_full_space;
  s.max_condition = o.max_condition;
  s.xi_min = o.xi_min;
  s.xi_max = o.xi_max;
  s.zeta_max = o.zeta_max;
  s.chain_warm_start = !o.no_warm_start;
  return s;
}

std::vector<frmpe::MethodSpec> default_pair() {
  return {frmpe::MethodSpec::parse("frmpe2"), frmpe::MethodSpec::parse("frmpe4")};
}

int run_sweep_cmd(const Options& o, bool n_given) {
  frmpe::SweepSpec spec;
  spec.omega = o.omega;
  spec.Omega = o.Omega;
  spec.ratio_min = o.ratio_min;
  spec.ratio_max = o.ratio_max;
  spec.points = o.points;
  spec.methods = methods_from(o, n_given, default_pair());
  spec.ed = !o.no_ed;
  spec.seed = o.seed;
  spec.jobs = o.jobs;
  spec.solver = solver_from(o);
  const auto rows = frmpe::run_sweep(spec);

  Output out(o.out);
  if (o.format == "json") {
    out.stream() << frmpe::cli::sweep_json(spec, rows).dump(2) << '\n';
  } else {
    frmpe::write_sweep_csv(out.stream(), spec, rows);
  }
  if (!o.gnuplot.empty()) {
    std::ostringstream script;
    frmpe::write_sweep_gnuplot(script, spec, o.out == "-" ? "sweep.csv" : o.out);
    write_text(o.gnuplot, script.str());
  }
  return kOk;
}

int run_wavefunction_cmd(const Options& o, bool n_given, const CLI::Option* g_opt,
                         const CLI::Option* ratio_opt) {
  frmpe::WavefunctionSpec spec;
  Options local = o;
  if (g_opt->count() == 0 && ratio_opt->count() == 0) local.ratio = 1.05;
  spec.model = point_model(local, g_opt);
  spec.methods = methods_from(o, n_given, default_pair());
  spec.grid_min = o.grid_min;
  spec.grid_max = o.grid_max;
  spec.grid_points = o.grid_points;
  spec.seed = o.seed;
  spec.solver = solver_from(o);
  const auto table = frmpe::dump_wavefunction(spec);

  Output out(o.out);
  if (o.format == "json") {
    out.stream() << frmpe::cli::wavefunction_json(spec, table).dump(2) << '\n';
  } else {
    frmpe::write_wavefunction_csv(out.stream(), spec, table);
  }
  if (!o.gnuplot.empty()) {
    std::ostringstream script;
    frmpe::write_wavefunction_gnuplot(script, spec, o.out == "-" ? "wavefunction.csv" : o.out);
    write_text(o.gnuplot, script.str());
  }
  if (!table.point.ed || !table.point.ed->ok) return kEDNonConverged;
  for (const auto& m : table.point.methods) {
    if (!m.ok) return kAllRestartsFailed;
  }
  return kOk;
}

int run_validate_cmd(const Options& o, const CLI::Option* seed_opt) {
  const std::uint64_t seed = seed_opt->count() > 0 ? o.seed : 42;
  const auto report = frmpe::validate_kernels(o.draws, seed);
  Output out(o.out);
  if (o.format == "json") {
    out.stream() << frmpe::cli::kernel_report_json(report, o.threshold).dump(2) << '\n';
  } else {
    frmpe::write_kernel_report(out.stream(), report, o.threshold);
  }
  return report.passed(o.threshold) ? kOk : kValidationFailed;
}

void print_ed(std::ostream& out, const Options& o, const frmpe::ModelParams& model,
              const frmpe::EDConfig& config, const frmpe::EDResult& r) {
  if (o.format == "json") {
    out << frmpe::cli::ed_json(model, config, r).dump(2) << '\n';
    return;
  }
  using frmpe::format_double;
  out << "# frmpe ed\n# version=" << frmpe::kVersion << '\n';
  out << "omega,Omega,g,g_over_gc,energy,sigma_x,corr,nphot,parity,cutoff\n";
  out << format_double(model.omega) << ',' << format_double(model.Omega) << ','
      << format_double(model.g) << ',' << format_double(frmpe::coupling_ratio(model)) << ','
      << format_double(r.energy) << ',' << format_double(r.sigma_x) << ','
      << format_double(r.corr) << ',' << format_double(r.nphot) << ','
      << format_double(r.parity) << ',' << r.cutoff_used << '\n';
}

int run_ed_cmd(const Options& o, const CLI::Option* g_opt) {
  const auto model = point_model(o, g_opt);
  const auto settings = solver_from(o);
  try {
    const auto r = frmpe::ground_state(model, settings.ed);
    Output out(o.out);
    print_ed(out.stream(), o, model, settings.ed, r);
    return kOk;
  } catch (const frmpe::EDNonConverged& e) {
    std::cerr << "frmpe: " << e.what() << "; best energy "
              << frmpe::format_double(e.best().energy) << " at cutoff " << e.best().cutoff_used
              << '\n';
    return kEDNonConverged;
  }
}

int run_optimize_cmd(const Options& o, const CLI::Option* g_opt) {
  const auto model = point_model(o, g_opt);
  frmpe::OptimizeSpec spec;
  spec.n_polarons = o.n_polarons;
  spec.mode = frmpe::parse_mode(o.mode);
  spec.strategy = frmpe::parse_strategy(o.strategy);
  spec.seed = o.seed;
  spec.restarts = o.restarts;
  spec.max_condition = o.max_condition;
  spec.xi_min = o.xi_min;
  spec.xi_max = o.xi_max;
  spec.zeta_max = o.zeta_max;
  const auto r = frmpe::optimize(model, spec);

  Output out(o.out);
  if (o.format == "json") {
    out.stream() << frmpe::cli::optimize_json(model, spec, r).dump(2) << '\n';
  } else {
    using frmpe::format_double;
    auto& s = out.stream();
    s << "# frmpe optimize\n# version=" << frmpe::kVersion << '\n';
    s << "omega,Omega,g,g_over_gc,mode,n_polarons,strategy,seed,restarts,energy,sigma_x,corr,"
         "nphot,evaluations,best_pipeline";
    for (int i = 1; i <= spec.n_polarons; ++i) {
      s << ",coeff" << i << ",xi" << i << ",zeta" << i;
    }
    s << '\n';
    s << format_double(model.omega) << ',' << format_double(model.Omega) << ','
      << format_double(model.g) << ',' << format_double(frmpe::coupling_ratio(model)) << ','
      << frmpe::to_string(spec.mode) << ',' << spec.n_polarons << ','
      << frmpe::to_string(spec.strategy) << ',' << spec.seed << ',' << spec.restarts << ','
      << format_double(r.energy) << ',' << format_double(r.observables.sigma_x) << ','
      << format_double(r.observables.corr) << ',' << format_double(r.observables.nphot) << ','
      << r.evaluations << ',' << r.best_restart;
    for (std::size_t i = 0; i < r.state.size(); ++i) {
      s << ',' << format_double(r.state.coeffs[i]) << ',' << format_double(r.state.polarons[i].xi)
        << ',' << format_double(r.state.polarons[i].zeta);
    }
    s << '\n';
  }
  if (!o.trace.empty()) {
    std::ostringstream trace;
    frmpe::write_anneal_trace(trace, r);
    write_text(o.trace, trace.str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Ground state of the quantum Rabi model: frequency-renormalized polaron "
               "expansion, coherent-state expansion and exact diagonalization"};
  app.set_version_flag("--version", std::string(frmpe::kVersion));
  app.set_config("--config", "", "key=value file; keys are flag names, flags given on the "
                                 "command line win");
  app.require_subcommand(1);

  auto* model = "Model";
  app.add_option("--omega", o.omega, "boson frequency")->group(model)->capture_default_str();
  app.add_option("--Omega", o.Omega, "qubit splitting")->group(model)->capture_default_str();
  auto* g_opt = app.add_option("--g", o.g, "coupling (single-point commands)")->group(model);
  auto* ratio_opt = app.add_option("--ratio", o.ratio, "g/g_c (single-point commands)")
                        ->group(model)
                        ->capture_default_str()
                        ->excludes(g_opt);

  auto* sweep_grp = "Sweep";
  app.add_option("--ratio-min", o.ratio_min)->group(sweep_grp)->capture_default_str();
  app.add_option("--ratio-max", o.ratio_max)->group(sweep_grp)->capture_default_str();
  app.add_option("--points", o.points)->group(sweep_grp)->capture_default_str();
  app.add_option("--jobs", o.jobs, "worker threads, 0 = all cores")
      ->group(sweep_grp)
      ->capture_default_str();
  app.add_flag("--no-ed", o.no_ed, "omit ED and error columns")->group(sweep_grp);

  auto* var = "Variational";
  auto* n_opt = app.add_option("--n-polarons", o.n_polarons)
                    ->group(var)
                    ->capture_default_str()
                    ->check(CLI::PositiveNumber);
  app.add_option("--mode", o.mode)
      ->group(var)
      ->capture_default_str()
      ->check(CLI::IsMember({"frmpe", "cse"}));
  app.add_option("--strategy", o.strategy)
      ->group(var)
      ->capture_default_str()
      ->check(CLI::IsMember({"nested", "full"}));
  app.add_option("--method", o.methods,
                 "repeatable, e.g. frmpe4, cse6, frmpe2_full; overrides --n-polarons/--mode")
      ->group(var);
  app.add_option("--restarts", o.restarts)->group(var)->capture_default_str();
  auto* seed_opt = app.add_option("--seed", o.seed)->group(var)->capture_default_str();
  app.add_option("--max-condition", o.max_condition)->group(var)->capture_default_str();
  app.add_option("--xi-min", o.xi_min)->group(var)->capture_default_str();
  app.add_option("--xi-max", o.xi_max)->group(var)->capture_default_str();
  app.add_option("--zeta-max", o.zeta_max)->group(var)->capture_default_str();
  app.add_flag("--no-warm-start", o.no_warm_start,
               "do not chain smaller results into larger methods")
      ->group(var);

  auto* ed_grp = "Exact diagonalization";
  app.add_option("--ed-tol", o.ed_tol)->group(ed_grp)->capture_default_str();
  app.add_option("--ed-cutoff", o.ed_cutoff, "starting Fock cutoff")
      ->group(ed_grp)
      ->capture_default_str();
  app.add_option("--ed-max-cutoff", o.ed_max_cutoff)->group(ed_grp)->capture_default_str();
  app.add_flag("--ed-full-space", o.ed_full_space,
               "diagonalize both parity sectors instead of the odd one")
      ->group(ed_grp);

  auto* grid = "Wavefunction grid";
  app.add_option("--grid-min", o.grid_min)->group(grid)->capture_default_str();
  app.add_option("--grid-max", o.grid_max)->group(grid)->capture_default_str();
  app.add_option("--grid-points", o.grid_points)->group(grid)->capture_default_str();

  auto* val = "Validation";
  app.add_option("--draws", o.draws)->group(val)->capture_default_str();
  app.add_option("--threshold", o.threshold)->group(val)->capture_default_str();

  auto* io = "Output";
  app.add_option("--out", o.out, "output path, - for stdout")->group(io)->capture_default_str();
  app.add_option("--format", o.format)
      ->group(io)
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--trace", o.trace, "optimize: anneal trace CSV path")->group(io);
  app.add_option("--gnuplot", o.gnuplot, "sweep/wavefunction: gnuplot script path")->group(io);

  auto* sweep = app.add_subcommand("sweep", "coupling sweep over g/g_c with ED error columns");
  auto* wave = app.add_subcommand("wavefunction", "Psi+ of each method against ED at one point");
  auto* validate = app.add_subcommand("validate", "closed-form kernels against quadrature");
  auto* ed = app.add_subcommand("ed", "converged exact diagonalization at one point");
  auto* opt = app.add_subcommand("optimize", "single variational run with diagnostics");
  for (auto* sub : {sweep, wave, validate, ed, opt}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadArguments;
  }

  const bool n_given = n_opt->count() > 0;
  try {
    if (sweep->parsed()) return run_sweep_cmd(o, n_given);
    if (wave->parsed()) return run_wavefunction_cmd(o, n_given, g_opt, ratio_opt);
    if (validate->parsed()) return run_validate_cmd(o, seed_opt);
    if (ed->parsed()) return run_ed_cmd(o, g_opt);
    if (opt->parsed()) return run_optimize_cmd(o, g_opt);
  } catch (const frmpe::AllRestartsFailed& e) {
    std::cerr << "frmpe: " << e.what() << '\n';
    return kAllRestartsFailed;
  } catch (const frmpe::EDNonConverged& e) {
    std::cerr << "frmpe: " << e.what() << '\n';
    return kEDNonConverged;
  } catch (const std::exception& e) {
    // Domain errors, unparsable method labels and unwritable output paths.
    std::cerr << "frmpe: " << e.what() << '\n';
    return kBadArguments;
  }
  return kBadArguments;
}
