#include "app/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "app/artifacts.hpp"
#include "phfem/chain.hpp"
#include "phfem/integrator.hpp"
#include "phfem/oracle.hpp"
#include "phfem/spectral.hpp"

namespace phfem::app {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int fail_check(const std::string& name, const std::string& detail) {
    std::cerr << "invariant check failed: " << name << ": " << detail << "\n";
    return 1;
}

/// Structure checks shared by every command that builds a model.
int check_structure(const PHModel<double>& model) {
    const auto report = validate(model);
    if (report.skew_defect != 0.0) {
        return fail_check("skew-symmetry", "max |J + J^T| = " + format_sci(report.skew_defect));
    }
    if (!report.metric_spd) {
        return fail_check("metric-spd", "Cholesky of M failed at pivot " +
                                             std::to_string(report.failed_pivot));
    }
    if (!report.dims_consistent) {
        return fail_check("dimensions", "model dimensions are inconsistent");
    }
    return 0;
}

/// The midpoint rule satisfies H_{k+1} - H_k = dt y_mid^T u_mid up to solver
/// roundoff; enforce it on every produced trajectory.
int check_power_balance(const Trajectory<double>& traj) {
    const double h_max = traj.hamiltonians.size() ? traj.hamiltonians.maxCoeff() : 0.0;
    const double tol = 1e-12 * std::max(1.0, h_max);
    for (Index k = 0; k < traj.n_steps(); ++k) {
        const double increment = traj.dt * traj.outputs.col(k).dot(traj.inputs.col(k));
        const double defect =
            std::abs(traj.hamiltonians[k + 1] - traj.hamiltonians[k] - increment);
        if (!(defect <= tol)) {
            return fail_check("discrete-power-balance",
                              "step " + std::to_string(k) + " defect " + format_sci(defect) +
                                  " exceeds " + format_sci(tol));
        }
    }
    return 0;
}

std::filesystem::path run_directory(const CommandOptions& options, bool multiple, int n) {
    std::filesystem::path dir = options.out_dir;
    if (multiple) {
        dir /= "ne_" + std::to_string(n);
    }
    std::filesystem::create_directories(dir);
    return dir;
}

void write_summary(const std::filesystem::path& dir, const nlohmann::ordered_json& summary) {
    std::ofstream os(dir / "summary.json", std::ios::binary);
    os << summary.dump(2) << '\n';
}

}  // namespace

int run_simulate(const RunConfig& config, const CommandOptions& options) {
    validate_config(config);
    const bool multiple = config.rod_n_elements.size() > 1;
    for (int n : config.rod_n_elements) {
        const auto dir = run_directory(options, multiple, n);
        const auto rod_config = make_rod_config(config, n);
        const auto t_start = Clock::now();
        const auto rod = assemble_rod(rod_config);
        if (int rc = check_structure(rod.model)) return rc;

        const VectorX<double> e0 = VectorX<double>::Zero(rod.model.dim());
        const auto traj = simulate<double>(rod.model, rod.input_signal(), e0,
                                           dt_seconds(config), horizon_seconds(config));
        const double wall = seconds_since(t_start);
        if (int rc = check_power_balance(traj)) return rc;

        const auto path =
            write_table(dir, "trajectory", options.format, make_rod_trajectory_table(traj, rod));

        const double h_max = traj.hamiltonians.maxCoeff();
        const double max_residual = traj.residuals.cwiseAbs().maxCoeff();
        nlohmann::ordered_json summary;
        summary["command"] = "simulate";
        summary["n_elements"] = n;
        summary["dt_s"] = dt_seconds(config);
        summary["t_final_s"] = horizon_seconds(config);
        summary["final_hamiltonian_J"] = traj.hamiltonians[traj.n_steps()];
        summary["max_hamiltonian_J"] = h_max;
        summary["max_abs_energy_residual_J"] = max_residual;
        summary["relative_energy_residual"] = h_max > 0 ? max_residual / h_max : 0.0;
        summary["wall_time_s"] = wall;
        summary["trajectory_file"] = path.filename().string();
        write_summary(dir, summary);

        std::cout << "simulate n_elements=" << n << ": H_final=" << format_sci(
                         traj.hamiltonians[traj.n_steps()])
                  << " max|dH|=" << format_sci(max_residual) << " -> " << path.string() << "\n";
    }
    return 0;
}

int run_eigen(const RunConfig& config, const CommandOptions& options) {
    validate_config(config);
    const bool multiple = config.rod_n_elements.size() > 1;
    for (int n : config.rod_n_elements) {
        const auto dir = run_directory(options, multiple, n);
        const auto rod = assemble_rod(make_rod_config(config, n));
        if (int rc = check_structure(rod.model)) return rc;

        const int k_max = std::min<int>(config.eigen_k_max, int(rod.n_stress_dofs()));
        const auto report = rod_spectrum(rod, k_max);
        const int expected_zero_modes = int(rod.n_velocity_dofs() - rod.n_stress_dofs());
        if (report.zero_mode_count != expected_zero_modes) {
            return fail_check("zero-mode-count",
                              "expected " + std::to_string(expected_zero_modes) + ", got " +
                                  std::to_string(report.zero_mode_count));
        }

        const auto path =
            write_table(dir, "spectrum", options.format, make_spectrum_table(report));
        std::cout << "eigen n_elements=" << n << ": first " << k_max
                  << " scaled eigenvalues -> " << path.string() << "\n";
        for (int i = 0; i < k_max; ++i) {
            std::cout << "  " << (i + 1) << "  " << format_sci(report.scaled_eigenvalues[i])
                      << "  exact " << format_sci(report.exact[i]) << "\n";
        }
    }
    return 0;
}

int run_chain(const RunConfig& config, const CommandOptions& options) {
    validate_config(config);
    std::filesystem::create_directories(options.out_dir);
    const auto chain_config = make_chain_config(config);
    const auto t_start = Clock::now();
    const auto model = build_chain(chain_config);
    if (int rc = check_structure(model)) return rc;

    const VectorX<double> e0 = VectorX<double>::Zero(model.dim());
    const auto traj = simulate<double>(model, chain_config.input_signal(), e0,
                                       dt_seconds(config), horizon_seconds(config));
    const double wall = seconds_since(t_start);
    if (int rc = check_power_balance(traj)) return rc;

    const auto path =
        write_table(options.out_dir, "trajectory", options.format,
                    make_chain_trajectory_table(traj));

    const double h_max = traj.hamiltonians.maxCoeff();
    const double max_residual = traj.residuals.cwiseAbs().maxCoeff();
    nlohmann::ordered_json summary;
    summary["command"] = "chain";
    summary["n_springs"] = config.chain_n_springs;
    summary["dt_s"] = dt_seconds(config);
    summary["t_final_s"] = horizon_seconds(config);
    summary["final_hamiltonian_J"] = traj.hamiltonians[traj.n_steps()];
    summary["max_hamiltonian_J"] = h_max;
    summary["max_abs_energy_residual_J"] = max_residual;
    summary["relative_energy_residual"] = h_max > 0 ? max_residual / h_max : 0.0;
    summary["wall_time_s"] = wall;
    summary["trajectory_file"] = path.filename().string();
    write_summary(options.out_dir, summary);

    std::cout << "chain n_springs=" << config.chain_n_springs
              << ": H_final=" << format_sci(traj.hamiltonians[traj.n_steps()])
              << " max|dH|=" << format_sci(max_residual) << " -> " << path.string() << "\n";
    return 0;
}

int run_validate(const RunConfig& config, const CommandOptions& options) {
    (void)options;
    validate_config(config);
    int rc = 0;
    for (int n : config.rod_n_elements) {
        const auto rod = assemble_rod(make_rod_config(config, n));
        const auto report = validate(rod.model);
        std::cout << "rod model, " << n << " elements (dim " << rod.model.dim() << "):\n"
                  << report << "\n";
        if (!report.ok()) {
            rc = fail_check("rod-structure", "see report above");
        }
    }
    const auto chain_model = build_chain(make_chain_config(config));
    const auto chain_report = validate(chain_model);
    std::cout << "chain model, " << config.chain_n_springs << " springs (dim "
              << chain_model.dim() << "):\n"
              << chain_report << "\n";
    if (!chain_report.ok()) {
        rc = fail_check("chain-structure", "see report above");
    }
    return rc;
}

int run_command(const std::string& command, const RunConfig& config,
                const CommandOptions& options) {
    if (command == "simulate") return run_simulate(config, options);
    if (command == "eigen") return run_eigen(config, options);
    if (command == "chain") return run_chain(config, options);
    if (command == "validate") return run_validate(config, options);
    std::cerr << "unknown command '" << command << "'\n";
    return 2;
}

}  // namespace phfem::app
