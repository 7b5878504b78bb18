#include "app/artifacts.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace phfem::app {

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

namespace {

bool is_integer_column(const Table& table, std::size_t j) {
    return j < table.integer_column.size() && table.integer_column[j];
}

std::string format_cell(const Table& table, std::size_t j, double v) {
    if (is_integer_column(table, j)) return std::to_string(static_cast<long long>(v));
    return format_sci(v);
}

}  // namespace

void write_table_csv(std::ostream& os, const Table& table) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j) os << ',';
        os << table.columns[j];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ',';
            os << format_cell(table, j, row[j]);
        }
        os << '\n';
    }
}

void write_table_json(std::ostream& os, const Table& table) {
    nlohmann::ordered_json j;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        auto& col = j[table.columns[c]];
        col = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            if (is_integer_column(table, c)) {
                col.push_back(static_cast<long long>(row[c]));
            } else {
                col.push_back(row[c]);
            }
        }
    }
    os << j.dump(2) << '\n';
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const std::string& format, const Table& table) {
    const std::filesystem::path path = dir / (stem + "." + format);
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    if (format == "json") {
        write_table_json(os, table);
    } else {
        write_table_csv(os, table);
    }
    return path;
}

Table make_rod_trajectory_table(const Trajectory<double>& traj, const AssembledRod<double>& rod) {
    Table t;
    t.columns = {"t", "H", "dH_residual", "v_at_0", "v_at_L", "sigma_at_0", "sigma_at_L",
                 "y1", "y2", "u_tau", "u_nu"};
    const Index nv = rod.n_velocity_dofs();
    const Index ns = rod.n_stress_dofs();
    t.rows.reserve(traj.n_steps() + 1);
    for (Index k = 0; k <= traj.n_steps(); ++k) {
        const auto e = traj.states.col(k);
        // Input/output columns carry the midpoint samples of the step that
        // produced this row; the initial row has no step behind it.
        const double y1 = k > 0 ? traj.outputs(0, k - 1) : 0.0;
        const double y2 = k > 0 ? traj.outputs(1, k - 1) : 0.0;
        const double u_tau = k > 0 ? traj.inputs(0, k - 1) : 0.0;
        const double u_nu = k > 0 ? traj.inputs(1, k - 1) : 0.0;
        t.rows.push_back({traj.times[k], traj.hamiltonians[k], traj.residuals[k],
                          e[0], e[nv - 1], e[nv], e[nv + ns - 1], y1, y2, u_tau, u_nu});
    }
    return t;
}

Table make_chain_trajectory_table(const Trajectory<double>& traj) {
    Table t;
    t.columns = {"t", "H", "dH_residual", "v_first", "v_last", "F_first", "F_last",
                 "y1", "y2", "u_tau", "u_nu"};
    const Index dim = traj.states.rows();
    const Index n = dim / 2;
    t.rows.reserve(traj.n_steps() + 1);
    for (Index k = 0; k <= traj.n_steps(); ++k) {
        const auto e = traj.states.col(k);
        const double y1 = k > 0 ? traj.outputs(0, k - 1) : 0.0;
        const double y2 = k > 0 ? traj.outputs(1, k - 1) : 0.0;
        const double u_tau = k > 0 ? traj.inputs(0, k - 1) : 0.0;
        const double u_nu = k > 0 ? traj.inputs(1, k - 1) : 0.0;
        t.rows.push_back({traj.times[k], traj.hamiltonians[k], traj.residuals[k],
                          e[0], e[n - 1], e[n], e[dim - 1], y1, y2, u_tau, u_nu});
    }
    return t;
}

Table make_spectrum_table(const SpectrumReport<double>& report) {
    Table t;
    t.columns = {"k", "lambda_computed", "lambda_exact", "abs_err"};
    t.integer_column = {true, false, false, false};
    for (Index i = 0; i < report.scaled_eigenvalues.size(); ++i) {
        t.rows.push_back({double(i + 1), report.scaled_eigenvalues[i], report.exact[i],
                          report.abs_error[i]});
    }
    return t;
}

}  // namespace phfem::app
