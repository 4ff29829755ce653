#include "msfem/config.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace msfem {

namespace {

std::string in_quotes(std::string_view s) { return "'" + std::string(s) + "'"; }

int to_int(std::string_view key, std::string_view v)
{
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(std::string(key) + ": expected an integer, got " + in_quotes(v));
    return out;
}

double to_double(std::string_view key, std::string_view v)
{
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(std::string(key) + ": expected a number, got " + in_quotes(v));
    return out;
}

bool to_bool(std::string_view key, std::string_view v)
{
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw ConfigError(std::string(key) + ": expected true/false, got " + in_quotes(v));
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = {
        "problem",          "mesh.M",           "fe.degree",          "time.dt",
        "time.T",           "physics.gamma",    "physics.V0",         "solver.rtol",
        "solver.max_iter_factor", "source.charge_integral", "source.charge_subintervals",
        "output.csv_path",  "output.vtk_every", "output.vtk_prefix",  "output.line_samples",
        "output.line_path", "output.probe_path",
    };
    return keys;
}

void set_config_value(SimulationConfig& c, std::string_view key, std::string_view v)
{
    if (key == "problem") c.problem = v;
    else if (key == "mesh.M") c.mesh_m = to_int(key, v);
    else if (key == "fe.degree") {
        c.degree = to_int(key, v);
        if (c.degree != 1 && c.degree != 2)
            throw ConfigError("fe.degree: unsupported degree " + std::string(v) + " (supported: 1, 2)");
    }
    else if (key == "time.dt") c.dt = to_double(key, v);
    else if (key == "time.T") c.final_time = to_double(key, v);
    else if (key == "physics.gamma") c.gamma = to_double(key, v);
    else if (key == "physics.V0") c.v0 = to_double(key, v);
    else if (key == "solver.rtol") c.solver.rtol = to_double(key, v);
    else if (key == "solver.max_iter_factor") c.solver.max_iter_factor = to_double(key, v);
    else if (key == "source.charge_integral") c.charge_integral = to_bool(key, v);
    else if (key == "source.charge_subintervals") c.charge_subintervals = to_int(key, v);
    else if (key == "output.csv_path") c.csv_path = v;
    else if (key == "output.vtk_every") c.vtk_every = to_int(key, v);
    else if (key == "output.vtk_prefix") c.vtk_prefix = v;
    else if (key == "output.line_samples") c.line_samples = to_int(key, v);
    else if (key == "output.line_path") c.line_path = v;
    else if (key == "output.probe_path") c.probe_path = v;
    else throw ConfigError("unknown key " + in_quotes(key));
}

SimulationConfig parse_config(std::string_view text, const SimulationConfig& base)
{
    SimulationConfig c = base;
    std::vector<std::string> unknown;
    std::istringstream lines{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got " + in_quotes(tok));
            const std::string_view key(tok.data(), eq);
            const std::string_view value(tok.data() + eq + 1, tok.size() - eq - 1);
            bool known = false;
            for (const auto& k : config_keys()) known = known || k == key;
            if (!known) {
                unknown.emplace_back(key);
                continue;
            }
            set_config_value(c, key, value);
        }
    }
    if (!unknown.empty()) {
        std::string msg = "unknown keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw ConfigError(msg);
    }
    validate(c);
    return c;
}

void validate(const SimulationConfig& c)
{
    if (c.mesh_m < 1) throw ConfigError("mesh.M: must be >= 1");
    if (c.degree != 1 && c.degree != 2)
        throw ConfigError("fe.degree: unsupported degree " + std::to_string(c.degree) + " (supported: 1, 2)");
    if (!(c.dt > 0.0)) throw ConfigError("time.dt: must be > 0");
    if (!(c.final_time > 0.0)) throw ConfigError("time.T: must be > 0");
    if (!(c.gamma > 0.0)) throw ConfigError("physics.gamma: must be > 0");
    if (!(c.solver.rtol > 0.0)) throw ConfigError("solver.rtol: must be > 0");
    if (!(c.solver.max_iter_factor > 0.0)) throw ConfigError("solver.max_iter_factor: must be > 0");
    if (c.charge_subintervals < 1) throw ConfigError("source.charge_subintervals: must be >= 1");
    if (c.vtk_every < 0) throw ConfigError("output.vtk_every: must be >= 0");
    if (c.line_samples < 0 || c.line_samples == 1) throw ConfigError("output.line_samples: must be 0 or >= 2");
    if (c.problem.empty()) throw ConfigError("problem: must not be empty");
}

std::string serialize_config(const SimulationConfig& c)
{
    std::ostringstream out;
    out << "problem=" << c.problem << '\n'
        << "mesh.M=" << c.mesh_m << '\n'
        << "fe.degree=" << c.degree << '\n'
        << "time.dt=" << fmt(c.dt) << '\n'
        << "time.T=" << fmt(c.final_time) << '\n'
        << "physics.gamma=" << fmt(c.gamma) << '\n'
        << "physics.V0=" << fmt(c.v0) << '\n'
        << "solver.rtol=" << fmt(c.solver.rtol) << '\n'
        << "solver.max_iter_factor=" << fmt(c.solver.max_iter_factor) << '\n'
        << "source.charge_integral=" << (c.charge_integral ? "true" : "false") << '\n'
        << "source.charge_subintervals=" << c.charge_subintervals << '\n';
    out << "output.csv_path=" << c.csv_path << '\n'
        << "output.vtk_every=" << c.vtk_every << '\n'
        << "output.vtk_prefix=" << c.vtk_prefix << '\n'
        << "output.line_samples=" << c.line_samples << '\n'
        << "output.line_path=" << c.line_path << '\n'
        << "output.probe_path=" << c.probe_path << '\n';
    return out.str();
}

} // namespace msfem
