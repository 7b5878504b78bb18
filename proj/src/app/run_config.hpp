#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "phfem/chain.hpp"
#include "phfem/rod.hpp"

namespace phfem::app {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat key=value run configuration. Fields keep the units their keys name;
/// conversion to SI happens when the domain configs are built. Defaults are
/// the steel-rod benchmark preset.
struct RunConfig {
    double rod_length_m = 1.0;
    double rod_rho_kg_per_m = 0.785;
    double rod_E_N_per_mm2 = 200e3;
    double rod_A_mm2 = 100.0;
    std::vector<int> rod_n_elements{100};

    std::string bc_tau_shape = "pulse";  // constant | pulse | sine
    double bc_tau_N = 1000.0;
    double bc_tau_pulse_ms = 0.5;
    double bc_tau_freq_hz = 0.0;
    std::string bc_nu_shape = "constant";
    double bc_nu_m_per_s = 0.0;
    double bc_nu_pulse_ms = 0.0;
    double bc_nu_freq_hz = 0.0;

    double sim_dt_ms = 1e-3;
    double sim_T_ms = 10.0;

    int eigen_k_max = 6;

    int chain_n_springs = 2;
    std::vector<double> chain_mass_kg{1.0};
    std::vector<double> chain_stiffness_N_per_m{1.0};

    bool operator==(const RunConfig&) const = default;
};

/// Parse configuration text. Throws ConfigError with line and field
/// diagnostics.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::filesystem::path& path);

/// Canonical key=value rendering; re-parses to an equal RunConfig.
std::string dump_config(const RunConfig& config);

/// Field validation shared by all commands.
void validate_config(const RunConfig& config);

RodConfig<double> make_rod_config(const RunConfig& config, int n_elements);

ChainConfig<double> make_chain_config(const RunConfig& config);

double dt_seconds(const RunConfig& config);
double horizon_seconds(const RunConfig& config);

}  // namespace phfem::app
