#pragma once

#include "msfem/solvers.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msfem {

/// Flat simulation configuration. Keys in the text format:
///   mesh.M  fe.degree  time.dt  time.T  physics.gamma  physics.V0  problem
///   solver.rtol  solver.max_iter_factor
///   source.charge_integral  source.charge_subintervals
///   output.csv_path  output.vtk_every  output.vtk_prefix
///   output.line_samples  output.line_path  output.probe_path
struct SimulationConfig
{
    int mesh_m = 8;
    int degree = 1;
    double dt = 0.0025;
    double final_time = 0.5;
    double gamma = 1.0;
    double v0 = 0.0;
    std::string problem = "example51";
    SolverOptions solver;
    bool charge_integral = true;
    int charge_subintervals = 10;
    std::string csv_path;
    int vtk_every = 0; ///< 0 = never
    std::string vtk_prefix = "msfem";
    int line_samples = 0; ///< points on the diagonal x1 = x2 = x3; 0 = off
    std::string line_path;
    std::string probe_path;
};

/// Thrown for malformed text, unknown keys or values out of range.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Names of all accepted keys, in serialization order.
const std::vector<std::string>& config_keys();

/// Sets one key; throws ConfigError naming the key on failure.
void set_config_value(SimulationConfig& config, std::string_view key, std::string_view value);

/// Parses whitespace- or newline-separated key=value pairs on top of `base`.
/// '#' starts a comment running to the end of the line. All unknown keys are
/// collected and reported together. The result is validated.
SimulationConfig parse_config(std::string_view text, const SimulationConfig& base = {});

/// Throws ConfigError unless dt > 0, T > 0, gamma > 0, degree in {1, 2}, M >= 1, ...
void validate(const SimulationConfig& config);

/// One key=value per line; doubles with 17 significant digits.
std::string serialize_config(const SimulationConfig& config);

} // namespace msfem
