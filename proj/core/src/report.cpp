#include "frmpe/report.hpp"

#include <charconv>
#include <cmath>

#include "frmpe/version.hpp"

namespace frmpe {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, ptr};
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join_labels(const std::vector<MethodSpec>& methods) {
  std::string out;
  for (const auto& m : methods) {
    if (!out.empty()) out += ',';
    out += m.label();
  }
  return out;
}

void write_solver_header(std::ostream& out, std::uint64_t seed, const SolverSettings& s) {
  out << "# seed=" << seed << '\n';
  out << "# restarts=" << s.restarts << '\n';
  out << "# warm_start_chain=" << (s.chain_warm_start ? 1 : 0) << '\n';
  out << "# ed_cutoff_start=" << s.ed.cutoff << '\n';
  out << "# ed_tol=" << format_double(s.ed.tol) << '\n';
  out << "# ed_max_cutoff=" << s.ed.max_cutoff << '\n';
  out << "# ed_odd_sector=" << (s.ed.odd_sector ? 1 : 0) << '\n';
  out << "# max_condition=" << format_double(s.max_condition) << '\n';
  out << "# xi_min=" << format_double(s.xi_min) << '\n';
  out << "# xi_max=" << format_double(s.xi_max) << '\n';
  out << "# zeta_max=" << format_double(s.zeta_max) << '\n';
  out << "# anneal=t_init:omega,t_final:1e-8*omega,cooling:0.95,steps_per_stage:200\n";
  out << "# pattern_step_init=" << format_double(s.pattern.step_init) << '\n';
  out << "# pattern_step_min=" << format_double(s.pattern.step_min) << '\n';
  out << "# pattern_shrink=" << format_double(s.pattern.shrink) << '\n';
}

template <class Seq>
void write_line(std::ostream& out, const Seq& cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

}  // namespace

std::vector<std::string> sweep_columns(const SweepSpec& spec) {
  std::vector<std::string> cols{"version", "omega", "Omega", "g", "g_over_gc"};
  if (spec.ed) {
    for (const char* c : {"ed_status", "ed_energy", "ed_sigma_x", "ed_corr", "ed_nphot",
                          "ed_parity", "ed_cutoff"}) {
      cols.emplace_back(c);
    }
  }
  for (const auto& m : spec.methods) {
    const std::string l = m.label();
    for (const char* c : {"_status", "_energy", "_sigma_x", "_corr", "_nphot", "_evaluations"}) {
      cols.push_back(l + c);
    }
    if (spec.ed) {
      for (const char* c : {"_dE_over_omega", "_dsigma_x", "_dcorr", "_dnphot"}) {
        cols.push_back(l + c);
      }
    }
  }
  return cols;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  out << "# frmpe sweep\n";
  out << "# schema=" << kSweepSchemaVersion << '\n';
  out << "# version=" << kVersion << '\n';
  out << "# omega=" << format_double(spec.omega) << '\n';
  out << "# Omega=" << format_double(spec.Omega) << '\n';
  out << "# ratio_min=" << format_double(spec.ratio_min) << '\n';
  out << "# ratio_max=" << format_double(spec.ratio_max) << '\n';
  out << "# points=" << spec.points << '\n';
  out << "# methods=" << join_labels(spec.methods) << '\n';
  out << "# ed=" << (spec.ed ? 1 : 0) << '\n';
  write_solver_header(out, spec.seed, spec.solver);
  write_line(out, sweep_columns(spec));

  for (const auto& row : rows) {
    std::vector<std::string> cells{kVersion, format_double(row.omega), format_double(row.Omega),
                                   format_double(row.g), format_double(row.g_over_gc)};
    if (spec.ed) {
      EDOutcome missing;
      missing.error = "ed_missing";
      const EDOutcome ed = row.ed.value_or(missing);
      cells.push_back(ed.ok ? "ok" : ed.error);
      for (double v : {ed.energy, ed.obs.sigma_x, ed.obs.corr, ed.obs.nphot, ed.parity}) {
        cells.push_back(format_double(ed.ok ? v : kNaN));
      }
      cells.push_back(std::to_string(ed.cutoff));
    }
    for (std::size_t i = 0; i < spec.methods.size(); ++i) {
      const MethodOutcome m = i < row.methods.size() ? row.methods[i] : MethodOutcome{};
      cells.push_back(m.ok ? "ok" : (m.error.empty() ? "missing" : m.error));
      for (double v : {m.energy, m.obs.sigma_x, m.obs.corr, m.obs.nphot}) {
        cells.push_back(format_double(m.ok ? v : kNaN));
      }
      cells.push_back(std::to_string(m.evaluations));
      if (spec.ed) {
        const auto e = row.errors(i);
        for (double v : {e ? e->dE_over_omega : kNaN, e ? e->dsigma_x : kNaN,
                         e ? e->dcorr : kNaN, e ? e->dnphot : kNaN}) {
          cells.push_back(format_double(v));
        }
      }
    }
    write_line(out, cells);
  }
}

void write_wavefunction_csv(std::ostream& out, const WavefunctionSpec& spec,
                            const WavefunctionTable& table) {
  out << "# frmpe wavefunction\n";
  out << "# schema=" << kSweepSchemaVersion << '\n';
  out << "# version=" << kVersion << '\n';
  out << "# omega=" << format_double(spec.model.omega) << '\n';
  out << "# Omega=" << format_double(spec.model.Omega) << '\n';
  out << "# g=" << format_double(spec.model.g) << '\n';
  out << "# g_over_gc=" << format_double(table.point.g_over_gc) << '\n';
  out << "# methods=" << join_labels(spec.methods) << '\n';
  out << "# grid_min=" << format_double(spec.grid_min) << '\n';
  out << "# grid_max=" << format_double(spec.grid_max) << '\n';
  out << "# grid_points=" << spec.grid_points << '\n';
  out << "# convention=|G> = (Psi+ |+z> - Psi- |-z>)/sqrt2, sign fixed by int_{x>0} Psi+ >= 0\n";
  write_solver_header(out, spec.seed, spec.solver);
  if (table.point.ed) {
    out << "# ed_energy=" << format_double(table.point.ed->energy) << '\n';
    out << "# ed_cutoff=" << table.point.ed->cutoff << '\n';
  }
  for (std::size_t i = 0; i < table.labels.size(); ++i) {
    const auto& m = table.point.methods[i];
    out << "# " << table.labels[i] << "_energy=" << format_double(m.ok ? m.energy : kNaN) << '\n';
  }

  std::vector<std::string> cols{"x"};
  for (const auto& l : table.labels) {
    cols.push_back("psi_plus_" + l);
    cols.push_back("delta_psi_plus_" + l);
  }
  cols.emplace_back("psi_plus_ed");
  write_line(out, cols);

  std::vector<std::vector<double>> deltas;
  for (std::size_t i = 0; i < table.labels.size(); ++i) deltas.push_back(table.delta(i));
  for (std::size_t k = 0; k < table.x.size(); ++k) {
    std::vector<std::string> cells{format_double(table.x[k])};
    for (std::size_t i = 0; i < table.labels.size(); ++i) {
      cells.push_back(format_double(table.psi_plus[i][k]));
      cells.push_back(format_double(deltas[i][k]));
    }
    cells.push_back(format_double(table.psi_plus_ed[k]));
    write_line(out, cells);
  }
}

void write_kernel_report(std::ostream& out, const KernelReport& report, double threshold) {
  out << "# frmpe kernel validation\n";
  out << "# version=" << kVersion << '\n';
  out << "# draws=" << report.draws << '\n';
  out << "# seed=" << report.seed << '\n';
  out << "# threshold=" << format_double(threshold) << '\n';
  out << "kind,max_abs_deviation,status\n";
  for (std::size_t k = 0; k < kElementKindCount; ++k) {
    const double d = report.max_deviation[k];
    out << to_string(kAllElementKinds[k]) << ',' << format_double(d) << ','
        << (d < threshold ? "pass" : "fail") << '\n';
  }
  out << "quadrature_failures," << report.quadrature_failures << ','
      << (report.quadrature_failures == 0 ? "pass" : "fail") << '\n';
}

void write_anneal_trace(std::ostream& out, const VariationalResult& result) {
  out << "restart,stage,temperature,best_energy,acceptance\n";
  for (std::size_t r = 0; r < result.anneal_traces.size(); ++r) {
    for (const auto& s : result.anneal_traces[r]) {
      out << r << ',' << s.stage << ',' << format_double(s.temperature) << ','
          << format_double(s.best) << ',' << format_double(s.acceptance) << '\n';
    }
  }
}

namespace {

int column_index(const std::vector<std::string>& cols, const std::string& name) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] == name) return static_cast<int>(i) + 1;
  }
  return 0;
}

}  // namespace

void write_sweep_gnuplot(std::ostream& out, const SweepSpec& spec, const std::string& csv_path) {
  const auto cols = sweep_columns(spec);
  const int xcol = column_index(cols, "g_over_gc");
  out << "# gnuplot script for " << csv_path << '\n';
  out << "set datafile separator ','\n";
  out << "set datafile commentschars '#'\n";
  out << "set key autotitle columnhead\n";
  out << "set xlabel 'g/g_c'\n";
  out << "set terminal pngcairo size 1200,900\n";
  out << "set output '" << csv_path << ".png'\n";
  out << "set multiplot layout 2,2\n";
  const char* quantities[][2] = {{"dE_over_omega", "energy"},
                                 {"dsigma_x", "sigma_x"},
                                 {"dcorr", "corr"},
                                 {"dnphot", "nphot"}};
  for (const auto& q : quantities) {
    const std::string suffix = spec.ed ? q[0] : q[1];
    out << "set ylabel '" << suffix << "'\n";
    out << "plot ";
    bool first = true;
    for (const auto& m : spec.methods) {
      const int c = column_index(cols, m.label() + "_" + suffix);
      if (!first) out << ", \\\n     ";
      out << "'" << csv_path << "' using " << xcol << ':' << c << " with linespoints title '"
          << m.label() << "'";
      first = false;
    }
    out << '\n';
  }
  out << "unset multiplot\n";
}

void write_wavefunction_gnuplot(std::ostream& out, const WavefunctionSpec& spec,
                                const std::string& csv_path) {
  out << "# gnuplot script for " << csv_path << '\n';
  out << "set datafile separator ','\n";
  out << "set datafile commentschars '#'\n";
  out << "set xlabel 'x'\n";
  out << "set terminal pngcairo size 1200,600\n";
  out << "set output '" << csv_path << ".png'\n";
  out << "set multiplot layout 1,2\n";
  const int n = static_cast<int>(spec.methods.size());
  const int ed_col = 2 + 2 * n;
  out << "set ylabel 'Psi+'\n";
  out << "plot '" << csv_path << "' using 1:" << ed_col << " with lines lw 2 title 'ED'";
  for (int i = 0; i < n; ++i) {
    out << ", \\\n     '" << csv_path << "' using 1:" << 2 + 2 * i << " with lines title '"
        << spec.methods[i].label() << "'";
  }
  out << "\nset ylabel 'Delta Psi+'\n";
  out << "plot ";
  for (int i = 0; i < n; ++i) {
    if (i > 0) out << ", \\\n     ";
    out << "'" << csv_path << "' using 1:" << 3 + 2 * i << " with lines title '"
        << spec.methods[i].label() << "'";
  }
  out << "\nunset multiplot\n";
}

}  // namespace frmpe
