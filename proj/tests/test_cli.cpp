#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "app/artifacts.hpp"
#include "app/commands.hpp"
#include "app/run_config.hpp"

using namespace phfem::app;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "phfem_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Small, fast variant of the benchmark preset.
RunConfig small_config() {
    RunConfig cfg;
    cfg.rod_n_elements = {10};
    cfg.sim_T_ms = 0.05;  // 50 steps
    return cfg;
}

}  // namespace

TEST_CASE("config parsing: defaults are the benchmark preset") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.rod_length_m == 1.0);
    CHECK(cfg.rod_rho_kg_per_m == 0.785);
    CHECK(cfg.rod_E_N_per_mm2 == 200e3);
    CHECK(cfg.rod_A_mm2 == 100.0);
    CHECK(cfg.rod_n_elements == std::vector<int>{100});
    CHECK(cfg.bc_tau_shape == "pulse");
    CHECK(cfg.bc_tau_N == 1000.0);
    CHECK(cfg.bc_tau_pulse_ms == 0.5);
    CHECK(cfg.bc_nu_m_per_s == 0.0);
    CHECK(cfg.sim_dt_ms == 1e-3);
    CHECK(cfg.sim_T_ms == 10.0);
}

TEST_CASE("config parsing: keys, comments, unit alternatives") {
    const std::string text =
        "# refinement study\n"
        "rod.n_elements = 50, 100\n"
        "rod.E_N_per_m2 = 2e11   # same modulus, base units\n"
        "rod.A_m2=1e-4\n"
        "sim.dt_ms=2e-3\n"
        "bc.tau_shape=sine\n"
        "bc.tau_freq_hz=440\n";
    const RunConfig cfg = parse_config(text);
    CHECK(cfg.rod_n_elements == std::vector<int>({50, 100}));
    CHECK(cfg.rod_E_N_per_mm2 == doctest::Approx(200e3).epsilon(1e-15));
    CHECK(cfg.rod_A_mm2 == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(cfg.sim_dt_ms == 2e-3);
    CHECK(cfg.bc_tau_shape == "sine");
    CHECK(cfg.bc_tau_freq_hz == 440.0);
}

TEST_CASE("config parsing: diagnostics carry line and field") {
    try {
        parse_config("rod.length_m=1\nrod.rho_kg_per_m=abc\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("rod.rho_kg_per_m") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("rod.bogus_key=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("rod.length_m\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("bc.tau_shape=triangle\n"), ConfigError);
}

TEST_CASE("config validation rejects inconsistent fields") {
    RunConfig cfg;
    cfg.sim_dt_ms = 20.0;  // larger than T
    cfg.sim_T_ms = 10.0;
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    RunConfig cfg2;
    cfg2.rod_rho_kg_per_m = -0.1;
    CHECK_THROWS_AS(validate_config(cfg2), ConfigError);
}

TEST_CASE("dump round-trip: parse(dump(cfg)) == cfg") {
    RunConfig cfg = small_config();
    cfg.rod_rho_kg_per_m = 0.7850000000000001;  // exercise full precision
    cfg.sim_dt_ms = 1.0 / 3.0;
    cfg.sim_T_ms = 7.0 / 3.0;
    cfg.chain_mass_kg = {1.25, 2.5};
    cfg.chain_stiffness_N_per_m = {0.1, 0.2};
    cfg.chain_n_springs = 2;
    const RunConfig reparsed = parse_config(dump_config(cfg));
    CHECK(reparsed == cfg);
    // and dumping again is byte-stable
    CHECK(dump_config(reparsed) == dump_config(cfg));
}

TEST_CASE("SI conversion into the rod configuration") {
    const RunConfig cfg = small_config();
    const auto rod = make_rod_config(cfg, 10);
    CHECK(rod.youngs_modulus == doctest::Approx(2e11).epsilon(1e-15));
    CHECK(rod.area == doctest::Approx(1e-4).epsilon(1e-15));
    CHECK(rod.axial_stiffness() == doctest::Approx(2e7).epsilon(1e-15));
    CHECK(rod.neumann_traction(0.4e-3) == 1000.0);
    CHECK(rod.neumann_traction(0.6e-3) == 0.0);
    CHECK(dt_seconds(cfg) == doctest::Approx(1e-6).epsilon(1e-15));
}

TEST_CASE("simulate command: deterministic byte-identical CSV") {
    const auto dir_a = fresh_dir("sim_a");
    const auto dir_b = fresh_dir("sim_b");
    const RunConfig cfg = small_config();
    CHECK(run_simulate(cfg, {dir_a, "csv"}) == 0);
    CHECK(run_simulate(cfg, {dir_b, "csv"}) == 0);
    const std::string a = slurp(dir_a / "trajectory.csv");
    const std::string b = slurp(dir_b / "trajectory.csv");
    CHECK(a == b);
    CHECK(a.find("t,H,dH_residual,v_at_0,v_at_L,sigma_at_0,sigma_at_L,y1,y2,u_tau,u_nu\n") ==
          0);
    // scientific notation with 17 significant digits
    CHECK(a.find("0.0000000000000000e+00") != std::string::npos);
    CHECK(a.find('\r') == std::string::npos);
}

TEST_CASE("simulate command: zero inputs produce an identically zero energy") {
    const auto dir = fresh_dir("sim_zero");
    RunConfig cfg = small_config();
    cfg.bc_tau_N = 0.0;
    cfg.bc_nu_m_per_s = 0.0;
    CHECK(run_simulate(cfg, {dir, "csv"}) == 0);
    const std::string csv = slurp(dir / "trajectory.csv");
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);  // header
    while (std::getline(ss, line)) {
        const auto first_comma = line.find(',');
        const auto second_comma = line.find(',', first_comma + 1);
        const double h = std::stod(line.substr(first_comma + 1, second_comma - first_comma));
        CHECK(h == 0.0);
    }
}

TEST_CASE("simulate command: benchmark residual bound in the summary") {
    const auto dir = fresh_dir("sim_bench");
    RunConfig cfg;  // full benchmark preset except a shorter horizon
    cfg.sim_T_ms = 1.0;
    CHECK(run_simulate(cfg, {dir, "csv"}) == 0);
    const std::string summary = slurp(dir / "summary.json");
    const auto pos = summary.find("\"relative_energy_residual\":");
    REQUIRE(pos != std::string::npos);
    const double rel = std::stod(summary.substr(pos + 28));
    CHECK(rel < 1e-9);
}

TEST_CASE("simulate command: refinement studies write per-run directories") {
    const auto dir = fresh_dir("sim_multi");
    RunConfig cfg = small_config();
    cfg.rod_n_elements = {5, 10};
    CHECK(run_simulate(cfg, {dir, "csv"}) == 0);
    CHECK(fs::exists(dir / "ne_5" / "trajectory.csv"));
    CHECK(fs::exists(dir / "ne_10" / "trajectory.csv"));
    CHECK(fs::exists(dir / "ne_5" / "summary.json"));
}

TEST_CASE("eigen command: spectrum rows follow the reference table") {
    const auto dir = fresh_dir("eig");
    RunConfig cfg;
    CHECK(run_eigen(cfg, {dir, "csv"}) == 0);
    const std::string csv = slurp(dir / "spectrum.csv");
    std::stringstream ss(csv);
    std::string header, row1, row2, row3;
    std::getline(ss, header);
    CHECK(header == "k,lambda_computed,lambda_exact,abs_err");
    std::getline(ss, row1);
    std::getline(ss, row2);
    std::getline(ss, row3);
    CHECK(row1.substr(0, 2) == "1,");
    const auto col = [](const std::string& row, int index) {
        std::stringstream rs(row);
        std::string cell;
        for (int i = 0; i <= index; ++i) std::getline(rs, cell, ',');
        return std::stod(cell);
    };
    CHECK(col(row1, 1) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(col(row2, 1) == doctest::Approx(2.4674).epsilon(1e-4));
    CHECK(col(row3, 1) == doctest::Approx(22.2067).epsilon(1e-4));
}

TEST_CASE("eigen command: json format") {
    const auto dir = fresh_dir("eig_json");
    RunConfig cfg;
    cfg.eigen_k_max = 3;
    CHECK(run_eigen(cfg, {dir, "json"}) == 0);
    const std::string json = slurp(dir / "spectrum.json");
    CHECK(json.find("\"lambda_computed\"") != std::string::npos);
    CHECK(json.find("\"k\"") != std::string::npos);
}

TEST_CASE("chain command: writes trajectory and balanced summary") {
    const auto dir = fresh_dir("chain");
    RunConfig cfg;
    cfg.chain_n_springs = 3;
    cfg.sim_dt_ms = 10.0;   // dt 0.01 s
    cfg.sim_T_ms = 2000.0;  // 2 s horizon
    CHECK(run_chain(cfg, {dir, "csv"}) == 0);
    CHECK(fs::exists(dir / "trajectory.csv"));
    const std::string csv = slurp(dir / "trajectory.csv");
    CHECK(csv.find("t,H,dH_residual,v_first,v_last,F_first,F_last,y1,y2,u_tau,u_nu\n") == 0);
    const std::string summary = slurp(dir / "summary.json");
    CHECK(summary.find("\"command\": \"chain\"") != std::string::npos);
}

TEST_CASE("validate command reports a clean structure") {
    RunConfig cfg = small_config();
    CHECK(run_validate(cfg, {fresh_dir("val"), "csv"}) == 0);
}

TEST_CASE("unknown command is a usage error") {
    CHECK(run_command("solve", small_config(), {fresh_dir("cmd"), "csv"}) == 2);
    CHECK(run_command("eigen", small_config(), {fresh_dir("cmd2"), "csv"}) == 0);
}

TEST_CASE("chain parameter lists broadcast or match the spring count") {
    RunConfig cfg;
    cfg.chain_n_springs = 3;
    cfg.chain_mass_kg = {2.0};
    cfg.chain_stiffness_N_per_m = {1.0, 2.0, 3.0};
    const auto chain = make_chain_config(cfg);
    CHECK(chain.masses == std::vector<double>({2.0, 2.0, 2.0}));
    CHECK(chain.stiffnesses == std::vector<double>({1.0, 2.0, 3.0}));

    cfg.chain_mass_kg = {1.0, 2.0};  // neither scalar nor full length
    CHECK_THROWS_AS(make_chain_config(cfg), ConfigError);
}
