#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "frmpe/sweep.hpp"

// Flat-file output. Numbers use the shortest representation that round-trips
// (std::to_chars), independent of locale; non-finite values print as "nan",
// "inf" or "-inf". Every table starts with a '#'-prefixed key=value block.

namespace frmpe {

inline constexpr int kSweepSchemaVersion = 1;

std::string format_double(double v);

/// Header block plus one CSV line per row. Error columns are emitted iff spec.ed.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Column names of write_sweep_csv, in order.
std::vector<std::string> sweep_columns(const SweepSpec& spec);

/// x, then psi_plus and delta per method, then psi_plus_ed.
void write_wavefunction_csv(std::ostream& out, const WavefunctionSpec& spec,
                            const WavefunctionTable& table);

void write_kernel_report(std::ostream& out, const KernelReport& report, double threshold);

/// Optimizer trace: "restart,stage,temperature,best_energy,acceptance" lines.
void write_anneal_trace(std::ostream& out, const VariationalResult& result);

/// gnuplot script plotting the error columns (or raw values without ED)
/// of a sweep CSV against g/g_c.
void write_sweep_gnuplot(std::ostream& out, const SweepSpec& spec, const std::string& csv_path);

/// gnuplot script plotting Psi^+ and Delta Psi^+ from a wavefunction CSV.
void write_wavefunction_gnuplot(std::ostream& out, const WavefunctionSpec& spec,
                                const std::string& csv_path);

}  // namespace frmpe
