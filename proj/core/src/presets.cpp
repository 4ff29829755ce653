#include "msfem/presets.hpp"

#include "msfem/convergence.hpp"
#include "msfem/manufactured.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace msfem {

namespace {

constexpr double kPi = std::numbers::pi;

cplx ground_mode(const Point3& x)
{
    return 2.0 * std::numbers::sqrt2 * std::sin(kPi * x[0]) * std::sin(kPi * x[1]) * std::sin(kPi * x[2]);
}

Vec3 example51_potential(const Point3& x)
{
    const double p = 10.0 * x[0] * x[1] * x[2];
    return {p * (1.0 - x[1]) * (1.0 - x[2]), p * (1.0 - x[0]) * (1.0 - x[2]), p * (1.0 - x[0]) * (1.0 - x[1])};
}

Vec3 zero_vector(const Point3&) { return {0.0, 0.0, 0.0}; }

} // namespace

const std::vector<PresetInfo>& preset_list()
{
    static const std::vector<PresetInfo> list = {
        {"example51", "ground mode with polynomial A0, charge-integral source (T=0.5, dt=0.0025, M=8, P1)"},
        {"example51-free", "example51 initial data with g=0, V0=0 and no charge source (50 steps)"},
        {"example52", "manufactured solution for convergence (T=4, gamma=1, V0=5, M=4, P2, dt=h)"},
        {"example53", "ground mode driven by a rotating uniform source g (T=10, dt=0.0025, M=8, P1)"},
    };
    return list;
}

SimulationConfig preset_config(std::string_view name)
{
    SimulationConfig c;
    c.problem = name;
    c.gamma = 1.0;
    if (name == "example51") {
        c.mesh_m = 8;
        c.degree = 1;
        c.dt = 0.0025;
        c.final_time = 0.5;
        c.v0 = 0.0;
        c.charge_integral = true;
        c.charge_subintervals = 10;
    } else if (name == "example51-free") {
        c.mesh_m = 8;
        c.degree = 1;
        c.dt = 0.0025;
        c.final_time = 0.125;
        c.v0 = 0.0;
        c.charge_integral = false;
    } else if (name == "example52") {
        c.mesh_m = 4;
        c.degree = 2;
        c.dt = 0.25;
        c.final_time = Example52Solution::kFinalTime;
        c.v0 = 5.0;
        c.charge_integral = false;
    } else if (name == "example53") {
        c.mesh_m = 8;
        c.degree = 1;
        c.dt = 0.0025;
        c.final_time = 10.0;
        c.v0 = 0.0;
        c.charge_integral = false;
    } else {
        std::string known;
        for (const auto& p : preset_list()) known += " " + p.name;
        throw ConfigError("unknown preset '" + std::string(name) + "' (known:" + known + ")");
    }
    return c;
}

Problem make_problem(const SimulationConfig& config)
{
    Problem p;
    const std::string& name = config.problem;
    if (name == "example51" || name == "example51-free") {
        p.name = name;
        p.psi0 = ground_mode;
        p.a0 = example51_potential;
        p.a1 = zero_vector;
    } else if (name == "example52") {
        auto exact = std::make_shared<Example52Solution>(config.gamma, config.v0);
        p = manufactured_problem(*exact, name);
        // Keep the exact solution alive inside the closures.
        p.psi0 = [exact](const Point3& x) { return exact->psi(x, 0.0); };
        p.a0 = [exact](const Point3& x) { return exact->a(x, 0.0); };
        p.a1 = [exact](const Point3& x) { return exact->a_t(x, 0.0); };
        p.f = [exact](const Point3& x, double t) { return exact->schrodinger_source(x, t); };
        p.g = [exact](const Point3& x, double t) { return exact->maxwell_source(x, t); };
    } else if (name == "example53") {
        p.name = name;
        p.psi0 = ground_mode;
        p.a0 = zero_vector;
        p.a1 = zero_vector;
        p.g = [](const Point3&, double t) {
            const double w = 1.5 * kPi * kPi * t;
            return Vec3{10.0 * std::sin(w), 10.0 * std::sin(w), 10.0 * std::cos(w)};
        };
    } else {
        preset_config(name); // throws with the list of known presets
    }
    p.charge_integral = config.charge_integral;
    p.charge_subintervals = config.charge_subintervals;
    return p;
}

std::vector<Point3> standard_probes() { return {{0.25, 0.5, 0.75}, {0.5, 0.5, 0.5}, {0.4, 0.5, 0.6}}; }

} // namespace msfem
