#include "app/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace phfem::app {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': invalid number '" + value + "'");
    }
}

int parse_int(const std::string& value, int line, const std::string& key) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': invalid integer '" + value + "'");
    }
    return v;
}

template <typename T>
std::vector<T> parse_list(const std::string& value, int line, const std::string& key,
                          T (*parse_one)(const std::string&, int, const std::string&)) {
    std::vector<T> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        items.push_back(parse_one(trim(item), line, key));
    }
    if (items.empty()) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': empty list");
    }
    return items;
}

std::string parse_shape(const std::string& value, int line, const std::string& key) {
    if (value != "constant" && value != "pulse" && value != "sine") {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': unknown signal shape '" + value +
                          "' (expected constant, pulse or sine)");
    }
    return value;
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename T>
std::string join(const std::vector<T>& items, const std::function<std::string(T)>& fmt) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += fmt(items[i]);
    }
    return out;
}

BoundarySignal<double> make_signal(const std::string& shape, double amplitude,
                                   double pulse_ms, double freq_hz) {
    if (shape == "pulse") return BoundarySignal<double>::pulse(amplitude, pulse_ms * 1e-3);
    if (shape == "sine") return BoundarySignal<double>::sine(amplitude, freq_hz);
    return BoundarySignal<double>::constant(amplitude);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    using Setter = std::function<void(RunConfig&, const std::string&, int)>;
    static const std::map<std::string, Setter> setters = {
        {"rod.length_m", [](RunConfig& c, const std::string& v, int l) {
             c.rod_length_m = parse_double(v, l, "rod.length_m"); }},
        {"rod.rho_kg_per_m", [](RunConfig& c, const std::string& v, int l) {
             c.rod_rho_kg_per_m = parse_double(v, l, "rod.rho_kg_per_m"); }},
        {"rod.E_N_per_mm2", [](RunConfig& c, const std::string& v, int l) {
             c.rod_E_N_per_mm2 = parse_double(v, l, "rod.E_N_per_mm2"); }},
        {"rod.E_N_per_m2", [](RunConfig& c, const std::string& v, int l) {
             c.rod_E_N_per_mm2 = parse_double(v, l, "rod.E_N_per_m2") * 1e-6; }},
        {"rod.A_mm2", [](RunConfig& c, const std::string& v, int l) {
             c.rod_A_mm2 = parse_double(v, l, "rod.A_mm2"); }},
        {"rod.A_m2", [](RunConfig& c, const std::string& v, int l) {
             c.rod_A_mm2 = parse_double(v, l, "rod.A_m2") * 1e6; }},
        {"rod.n_elements", [](RunConfig& c, const std::string& v, int l) {
             c.rod_n_elements = parse_list<int>(v, l, "rod.n_elements", parse_int); }},
        {"bc.tau_shape", [](RunConfig& c, const std::string& v, int l) {
             c.bc_tau_shape = parse_shape(v, l, "bc.tau_shape"); }},
        {"bc.tau_N", [](RunConfig& c, const std::string& v, int l) {
             c.bc_tau_N = parse_double(v, l, "bc.tau_N"); }},
        {"bc.tau_pulse_ms", [](RunConfig& c, const std::string& v, int l) {
             c.bc_tau_pulse_ms = parse_double(v, l, "bc.tau_pulse_ms"); }},
        {"bc.tau_freq_hz", [](RunConfig& c, const std::string& v, int l) {
             c.bc_tau_freq_hz = parse_double(v, l, "bc.tau_freq_hz"); }},
        {"bc.nu_shape", [](RunConfig& c, const std::string& v, int l) {
             c.bc_nu_shape = parse_shape(v, l, "bc.nu_shape"); }},
        {"bc.nu_m_per_s", [](RunConfig& c, const std::string& v, int l) {
             c.bc_nu_m_per_s = parse_double(v, l, "bc.nu_m_per_s"); }},
        {"bc.nu_pulse_ms", [](RunConfig& c, const std::string& v, int l) {
             c.bc_nu_pulse_ms = parse_double(v, l, "bc.nu_pulse_ms"); }},
        {"bc.nu_freq_hz", [](RunConfig& c, const std::string& v, int l) {
             c.bc_nu_freq_hz = parse_double(v, l, "bc.nu_freq_hz"); }},
        {"sim.dt_ms", [](RunConfig& c, const std::string& v, int l) {
             c.sim_dt_ms = parse_double(v, l, "sim.dt_ms"); }},
        {"sim.T_ms", [](RunConfig& c, const std::string& v, int l) {
             c.sim_T_ms = parse_double(v, l, "sim.T_ms"); }},
        {"eigen.k_max", [](RunConfig& c, const std::string& v, int l) {
             c.eigen_k_max = parse_int(v, l, "eigen.k_max"); }},
        {"chain.n_springs", [](RunConfig& c, const std::string& v, int l) {
             c.chain_n_springs = parse_int(v, l, "chain.n_springs"); }},
        {"chain.mass_kg", [](RunConfig& c, const std::string& v, int l) {
             c.chain_mass_kg = parse_list<double>(v, l, "chain.mass_kg", parse_double); }},
        {"chain.stiffness_N_per_m", [](RunConfig& c, const std::string& v, int l) {
             c.chain_stiffness_N_per_m =
                 parse_list<double>(v, l, "chain.stiffness_N_per_m", parse_double); }},
    };

    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const auto comment = raw.find('#');
        if (comment != std::string::npos) raw.erase(comment);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line) + ": expected key=value, got '" +
                              stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
        it->second(cfg, value, line);
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string dump_config(const RunConfig& c) {
    std::string out;
    const auto emit = [&out](const std::string& key, const std::string& value) {
        out += key + "=" + value + "\n";
    };
    emit("rod.length_m", format_value(c.rod_length_m));
    emit("rod.rho_kg_per_m", format_value(c.rod_rho_kg_per_m));
    emit("rod.E_N_per_mm2", format_value(c.rod_E_N_per_mm2));
    emit("rod.A_mm2", format_value(c.rod_A_mm2));
    emit("rod.n_elements",
         join<int>(c.rod_n_elements, [](int n) { return std::to_string(n); }));
    emit("bc.tau_shape", c.bc_tau_shape);
    emit("bc.tau_N", format_value(c.bc_tau_N));
    emit("bc.tau_pulse_ms", format_value(c.bc_tau_pulse_ms));
    emit("bc.tau_freq_hz", format_value(c.bc_tau_freq_hz));
    emit("bc.nu_shape", c.bc_nu_shape);
    emit("bc.nu_m_per_s", format_value(c.bc_nu_m_per_s));
    emit("bc.nu_pulse_ms", format_value(c.bc_nu_pulse_ms));
    emit("bc.nu_freq_hz", format_value(c.bc_nu_freq_hz));
    emit("sim.dt_ms", format_value(c.sim_dt_ms));
    emit("sim.T_ms", format_value(c.sim_T_ms));
    emit("eigen.k_max", std::to_string(c.eigen_k_max));
    emit("chain.n_springs", std::to_string(c.chain_n_springs));
    emit("chain.mass_kg", join<double>(c.chain_mass_kg, format_value));
    emit("chain.stiffness_N_per_m", join<double>(c.chain_stiffness_N_per_m, format_value));
    return out;
}

void validate_config(const RunConfig& c) {
    const auto positive = [](double v, const char* what) {
        if (!(v > 0) || !std::isfinite(v)) {
            throw ConfigError(std::string("field '") + what + "' must be positive and finite");
        }
    };
    positive(c.rod_length_m, "rod.length_m");
    positive(c.rod_rho_kg_per_m, "rod.rho_kg_per_m");
    positive(c.rod_E_N_per_mm2, "rod.E_N_per_mm2");
    positive(c.rod_A_mm2, "rod.A_mm2");
    positive(c.sim_dt_ms, "sim.dt_ms");
    positive(c.sim_T_ms, "sim.T_ms");
    if (c.rod_n_elements.empty()) {
        throw ConfigError("field 'rod.n_elements' must list at least one mesh size");
    }
    for (int n : c.rod_n_elements) {
        if (n < 1) throw ConfigError("field 'rod.n_elements' entries must be >= 1");
    }
    if (!(c.sim_dt_ms < c.sim_T_ms)) {
        throw ConfigError("field 'sim.dt_ms' must be smaller than 'sim.T_ms'");
    }
    if (c.eigen_k_max < 1) {
        throw ConfigError("field 'eigen.k_max' must be >= 1");
    }
    if (c.chain_n_springs < 1) {
        throw ConfigError("field 'chain.n_springs' must be >= 1");
    }
    for (double m : c.chain_mass_kg) positive(m, "chain.mass_kg");
    for (double k : c.chain_stiffness_N_per_m) positive(k, "chain.stiffness_N_per_m");
}

RodConfig<double> make_rod_config(const RunConfig& c, int n_elements) {
    RodConfig<double> rod;
    rod.length = c.rod_length_m;
    rod.density_per_length = c.rod_rho_kg_per_m;
    rod.youngs_modulus = c.rod_E_N_per_mm2 * 1e6;  // N/mm^2 -> N/m^2
    rod.area = c.rod_A_mm2 * 1e-6;                 // mm^2 -> m^2
    rod.n_elements = n_elements;
    rod.neumann_traction =
        make_signal(c.bc_tau_shape, c.bc_tau_N, c.bc_tau_pulse_ms, c.bc_tau_freq_hz);
    rod.dirichlet_velocity =
        make_signal(c.bc_nu_shape, c.bc_nu_m_per_s, c.bc_nu_pulse_ms, c.bc_nu_freq_hz);
    return rod;
}

namespace {

std::vector<double> broadcast(const std::vector<double>& values, int n, const char* what) {
    if (int(values.size()) == n) return values;
    if (values.size() == 1) return std::vector<double>(n, values[0]);
    throw ConfigError(std::string("field '") + what + "' must have 1 or chain.n_springs (" +
                      std::to_string(n) + ") entries, got " + std::to_string(values.size()));
}

}  // namespace

ChainConfig<double> make_chain_config(const RunConfig& c) {
    ChainConfig<double> chain;
    chain.masses = broadcast(c.chain_mass_kg, c.chain_n_springs, "chain.mass_kg");
    chain.stiffnesses =
        broadcast(c.chain_stiffness_N_per_m, c.chain_n_springs, "chain.stiffness_N_per_m");
    chain.neumann_force =
        make_signal(c.bc_tau_shape, c.bc_tau_N, c.bc_tau_pulse_ms, c.bc_tau_freq_hz);
    chain.dirichlet_velocity =
        make_signal(c.bc_nu_shape, c.bc_nu_m_per_s, c.bc_nu_pulse_ms, c.bc_nu_freq_hz);
    return chain;
}

double dt_seconds(const RunConfig& c) { return c.sim_dt_ms * 1e-3; }
double horizon_seconds(const RunConfig& c) { return c.sim_T_ms * 1e-3; }

}  // namespace phfem::app
