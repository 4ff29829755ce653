#pragma once

#include "msfem/config.hpp"
#include "msfem/geometry.hpp"
#include "msfem/stepper.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace msfem {

struct PresetInfo
{
    std::string name;
    std::string description;
};

/// example51        ground mode Psi_0 = 2 sqrt(2) sin sin sin with a polynomial A_0,
///                  charge-integral source, T = 0.5, dt = 0.0025
/// example51-free   the same initial data with g = 0 and no charge source
/// example52        manufactured solution, P2, gamma = 1, V0 = 5, T = 4
/// example53        ground mode driven by a rotating uniform g, T = 10
const std::vector<PresetInfo>& preset_list();

/// Default configuration of a preset. Throws ConfigError for unknown names.
SimulationConfig preset_config(std::string_view name);

/// Initial data and sources for config.problem; gamma, V0 and the
/// charge-integral settings are taken from the config.
Problem make_problem(const SimulationConfig& config);

/// Probe points x(1) = (0.25, 0.5, 0.75), x(2) = (0.5, 0.5, 0.5), x(3) = (0.4, 0.5, 0.6).
std::vector<Point3> standard_probes();

} // namespace msfem
