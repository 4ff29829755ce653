// msfem: command-line driver.
//
//   msfem preset-list
//   msfem run --preset example51 --check mass
//   msfem converge --preset example52 --degree 2 --grid 4,8,16 -T 1
//
// Exit codes: 0 success, 1 usage, 2 configuration, 3 failed --check or
// source gate, 4 linear solver failure, 5 I/O, 6 other runtime error.

#include "msfem/config.hpp"
#include "msfem/convergence.hpp"
#include "msfem/manufactured.hpp"
#include "msfem/output.hpp"
#include "msfem/presets.hpp"
#include "msfem/stepper.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode
{
    kOk = 0,
    kUsage = 1,
    kConfig = 2,
    kCheckFailed = 3,
    kSolver = 4,
    kIo = 5,
    kRuntime = 6,
};

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::ofstream open_or_throw(const std::string& path)
{
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    return f;
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw IoError("cannot read '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct RunArgs
{
    std::string preset = "example51";
    std::string config_file;
    std::vector<std::string> overrides;
    std::vector<std::string> checks;
    double mass_tol = 1e-8;
    double energy_tol = 1e-8;
    bool quiet = false;
};

msfem::SimulationConfig build_config(const RunArgs& a)
{
    msfem::SimulationConfig c = msfem::preset_config(a.preset);
    if (!a.config_file.empty()) c = msfem::parse_config(read_file(a.config_file), c);
    std::string text;
    for (const auto& kv : a.overrides) text += kv + "\n";
    return msfem::parse_config(text, c);
}

int cmd_run(const RunArgs& args)
{
    using namespace msfem;
    const SimulationConfig cfg = build_config(args);
    const TimeGrid grid = effective_time_grid(cfg.final_time, cfg.dt);

    if (!args.quiet) {
        std::cerr << serialize_config(cfg);
        std::fprintf(stderr, "# effective dt=%.17g steps=%d\n", grid.dt, grid.steps);
    }

    const Mesh mesh = Mesh::unit_cube(cfg.mesh_m);
    const ScalarSpace ss(mesh, cfg.degree);
    const VectorSpace vs(ss);
    const FormContext ctx(ss, vs, cfg.gamma, cfg.v0);
    Stepper stepper(ctx, make_problem(cfg), grid.dt, cfg.final_time, cfg.solver);

    std::ofstream csv_file;
    std::ostream* csv = &std::cout;
    if (!cfg.csv_path.empty()) {
        csv_file = open_or_throw(cfg.csv_path);
        csv = &csv_file;
    }
    std::ofstream line_file, probe_file;
    if (cfg.line_samples > 0 && !cfg.line_path.empty()) {
        line_file = open_or_throw(cfg.line_path);
        write_line_samples_header(line_file);
    }
    const std::vector<Point3> probes = standard_probes();
    if (!cfg.probe_path.empty()) {
        probe_file = open_or_throw(cfg.probe_path);
        write_probe_header(probe_file, probes.size());
    }

    write_diagnostics_header(*csv);
    // Line samples follow the VTK cadence; without snapshots, every tenth of the run.
    const int sample_every = cfg.vtk_every > 0 ? cfg.vtk_every : std::max(1, grid.steps / 10);
    const auto observer = [&](const FieldState& s, const Diagnostics& d) {
        write_diagnostics_row(*csv, d);
        if (probe_file.is_open()) write_probe_row(probe_file, s.psi, d.t, probes);
        if (line_file.is_open() && (s.k % sample_every == 0 || s.k == grid.steps))
            write_line_samples(line_file, s.psi, d.t, cfg.line_samples);
        if (cfg.vtk_every > 0 && (s.k % cfg.vtk_every == 0 || s.k == grid.steps)) {
            char name[64];
            std::snprintf(name, sizeof name, "_%06d.vtk", s.k);
            write_vtk(cfg.vtk_prefix + name, s.psi, s.a);
        }
    };
    const RunResult result = run(stepper, grid.steps, observer);
    csv->flush();
    if (!*csv) throw IoError("writing diagnostics failed");

    double mass_drift = 0.0, energy_drift = 0.0;
    const Diagnostics& first = result.history.front();
    for (const Diagnostics& d : result.history) {
        mass_drift = std::max(mass_drift, std::abs(d.mass - first.mass) / first.mass);
        energy_drift = std::max(energy_drift, std::abs(d.energy - first.energy) / std::abs(first.energy));
    }
    if (!args.quiet)
        std::fprintf(stderr, "# max relative mass drift %.3e, energy drift %.3e\n", mass_drift, energy_drift);

    int code = kOk;
    for (const auto& check : args.checks) {
        if (check == "mass" && mass_drift > args.mass_tol) {
            std::fprintf(stderr, "check mass FAILED: drift %.3e > %.3e\n", mass_drift, args.mass_tol);
            code = kCheckFailed;
        } else if (check == "energy" && energy_drift > args.energy_tol) {
            std::fprintf(stderr, "check energy FAILED: drift %.3e > %.3e\n", energy_drift, args.energy_tol);
            code = kCheckFailed;
        }
    }
    return code;
}

struct ConvergeArgs
{
    std::string preset = "example52";
    int degree = 2;
    std::vector<int> grid{4, 8, 16};
    std::string rule = "h";
    double final_time = msfem::Example52Solution::kFinalTime;
    std::vector<double> report_times;
    bool interpolation_only = false;
    std::string out;
    bool quiet = false;
};

int cmd_converge(const ConvergeArgs& a)
{
    using namespace msfem;
    if (a.preset != "example52") throw ConfigError("converge: only the manufactured preset example52 is supported");
    const SimulationConfig base = preset_config(a.preset);

    ConvergenceOptions o;
    o.degree = a.degree;
    o.grid = a.grid;
    o.rule = a.rule == "sqrt" ? TimeStepRule::SqrtMeshSize : TimeStepRule::MeshSize;
    o.final_time = a.final_time;
    o.report_times.clear();
    if (!a.report_times.empty()) {
        o.report_times = a.report_times;
    } else {
        for (double t = 1.0; t <= a.final_time + 1e-12; t += 1.0) o.report_times.push_back(t);
        if (o.report_times.empty()) o.report_times.push_back(a.final_time);
    }
    o.gamma = base.gamma;
    o.v0 = base.v0;
    o.solver = base.solver;
    o.interpolation_only = a.interpolation_only;
    if (!a.quiet) o.log = [](const std::string& s) { std::cerr << "# " << s << '\n'; };

    const Example52Solution exact(o.gamma, o.v0);
    const SourceCheck gate = check_sources(exact, 20, 1e-4, o.final_time);
    if (!a.quiet)
        std::fprintf(stderr, "# source check: f %.2e, g %.2e\n", gate.max_schrodinger_residual,
                     gate.max_maxwell_residual);
    if (!gate.passed) {
        std::fprintf(stderr, "manufactured sources failed the residual check; refusing to run\n");
        return kCheckFailed;
    }

    const ConvergenceTable table = convergence_study(o);
    if (a.out.empty()) {
        write_convergence_csv(std::cout, table);
    } else {
        std::ofstream f = open_or_throw(a.out);
        write_convergence_csv(f, table);
        if (!f) throw IoError("writing '" + a.out + "' failed");
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite element solver for the Maxwell-Schrodinger system in the temporal gauge"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Time-step a preset and write diagnostics CSV");
    run->add_option("-p,--preset", run_args.preset, "Preset providing defaults and the problem")
        ->capture_default_str();
    run->add_option("-c,--config", run_args.config_file, "key=value file applied on top of the preset");
    run->add_option("-s,--set", run_args.overrides, "Override one key, e.g. --set mesh.M=4 (repeatable)");
    run->add_option("--check", run_args.checks, "Invariants to enforce: mass, energy")
        ->check(CLI::IsMember({"mass", "energy"}));
    run->add_option("--mass-tol", run_args.mass_tol, "Relative mass drift tolerance")->capture_default_str();
    run->add_option("--energy-tol", run_args.energy_tol, "Relative energy drift tolerance")->capture_default_str();
    run->add_flag("-q,--quiet", run_args.quiet, "Do not echo the configuration");

    ConvergeArgs conv_args;
    auto* conv = app.add_subcommand("converge", "Convergence study against the manufactured solution");
    conv->add_option("-p,--preset", conv_args.preset)->capture_default_str();
    conv->add_option("-r,--degree", conv_args.degree)->check(CLI::IsMember({1, 2}))->capture_default_str();
    conv->add_option("--grid", conv_args.grid, "Cells per axis, e.g. 4,8,16")->delimiter(',');
    conv->add_option("--dt-rule", conv_args.rule, "dt = h or dt = sqrt(h)")
        ->check(CLI::IsMember({"h", "sqrt"}))
        ->capture_default_str();
    conv->add_option("-T,--final-time", conv_args.final_time)->capture_default_str();
    conv->add_option("--report-times", conv_args.report_times, "Default: 1, 2, ... up to T")->delimiter(',');
    conv->add_flag("--interpolation-only", conv_args.interpolation_only, "Interpolation errors, no stepping");
    conv->add_option("-o,--output", conv_args.out, "CSV path (default stdout)");
    conv->add_flag("-q,--quiet", conv_args.quiet);

    auto* list = app.add_subcommand("preset-list", "List presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (list->parsed()) {
            for (const auto& p : msfem::preset_list()) std::cout << p.name << "\t" << p.description << '\n';
            return kOk;
        }
        if (run->parsed()) return cmd_run(run_args);
        if (conv->parsed()) return cmd_converge(conv_args);
    } catch (const msfem::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const msfem::SolveError& e) {
        std::cerr << "solver failure: " << e.what() << " (iterations " << e.report().iterations
                  << ", residual " << e.report().relative_residual << ")\n";
        return kSolver;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}
