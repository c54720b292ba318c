#pragma once

#include <stdexcept>
#include <string>

#include "hamlift/flow.hpp"
#include "hamlift/grid.hpp"
#include "hamlift/hamiltonian.hpp"

namespace hamlift {

/// Raised on malformed config text or invalid values; the message names
/// the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Run parameters shared by all CLI commands. Parsed from key=value text
/// with dotted keys:
///   hbar=1.0
///   grid.n=256
///   grid.x_min=-12
///   grid.x_max=12
///   integrator.method=rk4|leapfrog
///   integrator.steps=1000
///   hamiltonian.preset=oscillator         (or inline quadratic blocks:)
///   hamiltonian.quadratic.a=1
///   hamiltonian.quadratic.b=0
///   hamiltonian.quadratic.c=1
///   seed=1
/// Lines starting with '#' and blank lines are ignored. The environment
/// variable HAMLIFT_HBAR, when set, overrides hbar.
struct RunConfig {
    double hbar = 1.0;
    Eigen::Index grid_n = 256;
    double grid_x_min = -12.0;
    double grid_x_max = 12.0;
    IntegrationMethod method = IntegrationMethod::rk4;
    int steps = 1000;
    bool use_preset = true;
    std::string preset = "oscillator";
    double quad_a = 1.0, quad_b = 0.0, quad_c = 1.0;
    long seed = 1;

    Grid grid() const { return {grid_n, grid_x_min, grid_x_max, hbar}; }
    /// Preset lookup or the inline quadratic block.
    HamiltonianSpec hamiltonian() const;
    QuadraticHamiltonian quadratic() const;
};

/// Parse config text; unknown keys and unparseable values raise
/// ConfigError naming the key. Applies the HAMLIFT_HBAR override.
RunConfig parse_config(const std::string& text);

/// Parse the file at path (ConfigError if unreadable).
RunConfig parse_config_file(const std::string& path);

}  // namespace hamlift
