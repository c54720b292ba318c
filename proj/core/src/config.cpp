#include "hamlift/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hamlift {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config key '" + key + "': trailing characters in '" + value + "'");
    return v;
}

long parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config key '" + key + "': trailing characters in '" + value + "'");
    return v;
}

}  // namespace

HamiltonianSpec RunConfig::hamiltonian() const {
    if (use_preset) return presets::by_name(preset);
    return quadratic().to_spec();
}

QuadraticHamiltonian RunConfig::quadratic() const {
    if (use_preset) {
        // The quadratic presets map onto blocks; others have no block form.
        if (preset == "oscillator") return QuadraticHamiltonian::scalar(1, 0, 1, "oscillator");
        if (preset == "free") return QuadraticHamiltonian::scalar(0, 0, 1, "free");
        if (preset == "shear") return QuadraticHamiltonian::scalar(0, 1, 0, "shear");
        throw ConfigError("config key 'hamiltonian.preset': preset '" + preset +
                          "' has no quadratic block form");
    }
    return QuadraticHamiltonian::scalar(quad_a, quad_b, quad_c, "quadratic");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key=value, got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "hbar") {
            cfg.hbar = parse_real(key, value);
            if (!(cfg.hbar > 0)) throw ConfigError("config key 'hbar': must be positive");
        } else if (key == "grid.n") {
            cfg.grid_n = parse_int(key, value);
            if (cfg.grid_n < 16 || (cfg.grid_n & (cfg.grid_n - 1)) != 0)
                throw ConfigError("config key 'grid.n': must be a power of two >= 16");
        } else if (key == "grid.x_min") {
            cfg.grid_x_min = parse_real(key, value);
        } else if (key == "grid.x_max") {
            cfg.grid_x_max = parse_real(key, value);
        } else if (key == "integrator.method") {
            if (value == "rk4")
                cfg.method = IntegrationMethod::rk4;
            else if (value == "leapfrog")
                cfg.method = IntegrationMethod::symplectic_leapfrog;
            else
                throw ConfigError("config key 'integrator.method': unknown method '" + value +
                                  "' (rk4 or leapfrog)");
        } else if (key == "integrator.steps") {
            cfg.steps = static_cast<int>(parse_int(key, value));
            if (cfg.steps < 1)
                throw ConfigError("config key 'integrator.steps': must be positive");
        } else if (key == "hamiltonian.preset") {
            cfg.use_preset = true;
            cfg.preset = value;
            try {
                presets::by_name(value);
            } catch (const std::exception&) {
                throw ConfigError("config key 'hamiltonian.preset': unknown preset '" + value +
                                  "'");
            }
        } else if (key == "hamiltonian.quadratic.a") {
            cfg.use_preset = false;
            cfg.quad_a = parse_real(key, value);
        } else if (key == "hamiltonian.quadratic.b") {
            cfg.use_preset = false;
            cfg.quad_b = parse_real(key, value);
        } else if (key == "hamiltonian.quadratic.c") {
            cfg.use_preset = false;
            cfg.quad_c = parse_real(key, value);
        } else if (key == "seed") {
            cfg.seed = parse_int(key, value);
        } else {
            throw ConfigError("config key '" + key + "': unknown key");
        }
    }
    if (!(cfg.grid_x_max > cfg.grid_x_min))
        throw ConfigError("config key 'grid.x_max': must exceed grid.x_min");
    if (const char* env = std::getenv("HAMLIFT_HBAR")) {
        cfg.hbar = parse_real("HAMLIFT_HBAR", env);
        if (!(cfg.hbar > 0)) throw ConfigError("config key 'HAMLIFT_HBAR': must be positive");
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config file '" + path + "': cannot open");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

}  // namespace hamlift
