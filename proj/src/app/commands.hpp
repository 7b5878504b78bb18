#pragma once

#include <filesystem>
#include <string>

#include "app/run_config.hpp"

namespace phfem::app {

struct CommandOptions {
    std::filesystem::path out_dir{"."};
    std::string format{"csv"};  // csv | json
};

/// Command drivers. Each returns 0 on success, 1 when an internal invariant
/// check fails (the failing check is named on stderr).
int run_simulate(const RunConfig& config, const CommandOptions& options);
int run_eigen(const RunConfig& config, const CommandOptions& options);
int run_chain(const RunConfig& config, const CommandOptions& options);
int run_validate(const RunConfig& config, const CommandOptions& options);

int run_command(const std::string& command, const RunConfig& config,
                const CommandOptions& options);

}  // namespace phfem::app
