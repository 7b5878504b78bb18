#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "phfem/integrator.hpp"
#include "phfem/rod.hpp"
#include "phfem/spectral.hpp"

namespace phfem::app {

/// Scientific notation with 17 significant digits, '.' decimal separator.
std::string format_sci(double v);

/// Column-oriented numeric result set. Integer columns render without
/// exponent so k-style indices stay readable.
struct Table {
    std::vector<std::string> columns;
    std::vector<bool> integer_column;  // empty means all floating point
    std::vector<std::vector<double>> rows;
};

void write_table_csv(std::ostream& os, const Table& table);
void write_table_json(std::ostream& os, const Table& table);

/// Writes <stem>.csv or <stem>.json under dir and returns the path.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const std::string& format, const Table& table);

Table make_rod_trajectory_table(const Trajectory<double>& traj, const AssembledRod<double>& rod);
Table make_chain_trajectory_table(const Trajectory<double>& traj);
Table make_spectrum_table(const SpectrumReport<double>& report);

}  // namespace phfem::app
