#include "msfem/config.hpp"
#include "msfem/output.hpp"
#include "msfem/presets.hpp"
#include "msfem/stepper.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace msfem;

TEST(Config, ParsesKeyValuePairs)
{
    const SimulationConfig c = parse_config("mesh.M=8 fe.degree=1 time.dt=0.1 time.T=1");
    EXPECT_EQ(c.mesh_m, 8);
    EXPECT_EQ(c.degree, 1);
    EXPECT_DOUBLE_EQ(c.dt, 0.1);
    EXPECT_DOUBLE_EQ(c.final_time, 1.0);
}

TEST(Config, CommentsAndNewlines)
{
    const SimulationConfig c = parse_config("# a run\nmesh.M=4\n\nphysics.V0=2.5  # trailing\nsource.charge_integral=off\n");
    EXPECT_EQ(c.mesh_m, 4);
    EXPECT_DOUBLE_EQ(c.v0, 2.5);
    EXPECT_FALSE(c.charge_integral);
}

TEST(Config, RejectsUnsupportedDegree)
{
    try {
        parse_config("fe.degree=3");
        FAIL();
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("fe.degree"), std::string::npos);
        EXPECT_NE(msg.find("supported: 1, 2"), std::string::npos);
    }
}

TEST(Config, ListsUnknownKeys)
{
    try {
        parse_config("mesh.M=4 mesh.N=3 foo=1");
        FAIL();
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("mesh.N"), std::string::npos);
        EXPECT_NE(msg.find("foo"), std::string::npos);
    }
}

TEST(Config, RejectsMalformedValues)
{
    EXPECT_THROW(parse_config("mesh.M=four"), ConfigError);
    EXPECT_THROW(parse_config("time.dt=0.1x"), ConfigError);
    EXPECT_THROW(parse_config("source.charge_integral=maybe"), ConfigError);
    EXPECT_THROW(parse_config("mesh.M"), ConfigError);
    SimulationConfig c;
    c.dt = -1.0;
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Config, RoundTrip)
{
    SimulationConfig c = preset_config("example52");
    c.dt = 0.1 / 3.0;
    c.csv_path = "out/run.csv";
    c.line_samples = 17;
    const SimulationConfig d = parse_config(serialize_config(c));
    EXPECT_EQ(serialize_config(d), serialize_config(c));
    EXPECT_EQ(d.dt, c.dt);
    EXPECT_EQ(d.csv_path, c.csv_path);
    for (const std::string& key : config_keys())
        EXPECT_NE(serialize_config(c).find(key + "="), std::string::npos) << key;
}

TEST(Presets, GroundStateExample)
{
    const SimulationConfig c = preset_config("example51");
    EXPECT_DOUBLE_EQ(c.final_time, 0.5);
    EXPECT_DOUBLE_EQ(c.dt, 0.0025);
    EXPECT_DOUBLE_EQ(c.v0, 0.0);
    EXPECT_EQ(c.degree, 1);
    EXPECT_TRUE(c.charge_integral);
    const Problem p = make_problem(c);
    EXPECT_NEAR(std::abs(p.psi0({0.5, 0.5, 0.5})), 2.0 * std::sqrt(2.0), 1e-14);
    EXPECT_THROW(preset_config("example99"), ConfigError);
    EXPECT_EQ(preset_list().size(), 4u);
}

TEST(Presets, ManufacturedDefaults)
{
    const SimulationConfig c = preset_config("example52");
    EXPECT_EQ(c.degree, 2);
    EXPECT_DOUBLE_EQ(c.v0, 5.0);
    EXPECT_DOUBLE_EQ(c.final_time, 4.0);
    const Problem p = make_problem(c);
    ASSERT_TRUE(p.f);
    ASSERT_TRUE(p.g);
}

namespace {

struct VtkFile
{
    int points = 0;
    int cells = 0;
    std::vector<int> types;
    std::vector<double> rho;
};

// Minimal legacy-format reader: just enough to check the structure.
VtkFile read_vtk(std::istream& in)
{
    VtkFile f;
    std::string word;
    while (in >> word) {
        if (word == "POINTS") {
            std::string type;
            in >> f.points >> type;
            for (int i = 0; i < 3 * f.points; ++i) in >> word;
        } else if (word == "CELLS") {
            int size = 0;
            in >> f.cells >> size;
            for (int i = 0; i < size; ++i) in >> word;
        } else if (word == "CELL_TYPES") {
            int n = 0;
            in >> n;
            f.types.resize(n);
            for (int& t : f.types) in >> t;
        } else if (word == "SCALARS") {
            std::string name, type;
            in >> name >> type;
            while (in >> word && word != "default") {
            }
            std::vector<double> values(f.points);
            for (double& v : values) in >> v;
            if (name == "rho") f.rho = values;
        }
    }
    return f;
}

} // namespace

TEST(Vtk, StructureOnSmallMesh)
{
    const Mesh mesh = Mesh::unit_cube(1);
    const ScalarSpace ss(mesh, 2);
    const VectorSpace vs(ss);
    const ScalarField psi = interpolate_scalar(ss, [](const Point3& x) { return cplx(x[0], -x[1]); }, false);
    const VectorField a = interpolate_vector(vs, [](const Point3& x) { return Vec3{x[0], 0.0, 0.0}; });
    std::stringstream s;
    write_vtk(s, psi, a);
    EXPECT_EQ(s.str().rfind("# vtk DataFile Version 3.0\n", 0), 0u);
    const VtkFile f = read_vtk(s);
    EXPECT_EQ(f.points, 8);
    EXPECT_EQ(f.cells, 6);
    ASSERT_EQ(f.types.size(), 6u);
    for (int t : f.types) EXPECT_EQ(t, 10);
    ASSERT_EQ(f.rho.size(), 8u);
    for (double r : f.rho) EXPECT_GE(r, 0.0);
    // Vertex (1,1,0) carries |1 - i|^2 = 2 somewhere in the list.
    EXPECT_NE(std::find_if(f.rho.begin(), f.rho.end(), [](double r) { return std::abs(r - 2.0) < 1e-12; }),
              f.rho.end());
}

TEST(Vtk, UnwritablePathThrows)
{
    const Mesh mesh = Mesh::unit_cube(1);
    const ScalarSpace ss(mesh, 1);
    const VectorSpace vs(ss);
    EXPECT_THROW(write_vtk("/nonexistent-dir/x.vtk", ScalarField(ss), VectorField(vs)), std::runtime_error);
}

TEST(LineSamples, ZeroAndGroundMode)
{
    const Mesh mesh = Mesh::unit_cube(2);
    const ScalarSpace ss(mesh, 2);
    std::ostringstream zero;
    write_line_samples(zero, ScalarField(ss), 0.0, 5);
    std::istringstream in(zero.str());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(line.substr(line.rfind(',') + 1), format_double(0.0));
    }
    EXPECT_EQ(rows, 5);

    const ScalarField ground = interpolate_scalar(ss, make_problem(preset_config("example51")).psi0);
    std::ostringstream out;
    write_line_samples(out, ground, 0.0, 3);
    std::istringstream rows3(out.str());
    std::getline(rows3, line);
    std::getline(rows3, line);
    EXPECT_NEAR(std::stod(line.substr(line.rfind(',') + 1)), 8.0, 1e-12);
}

TEST(Diagnostics, DeterministicCsv)
{
    auto once = [] {
        const Mesh mesh = Mesh::unit_cube(2);
        const ScalarSpace ss(mesh, 1);
        const VectorSpace vs(ss);
        const FormContext ctx(ss, vs, 1.0, 0.0);
        SimulationConfig c = preset_config("example51");
        c.mesh_m = 2;
        Stepper st(ctx, make_problem(c), 0.01, 0.05);
        std::ostringstream out;
        write_diagnostics_header(out);
        run(st, 3, [&](const FieldState&, const Diagnostics& d) { write_diagnostics_row(out, d); });
        return out.str();
    };
    const std::string a = once();
    EXPECT_EQ(a, once());
    EXPECT_EQ(a.rfind("k,t,mass,energy,", 0), 0u);
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 5);
    EXPECT_EQ(format_double(0.1), "1.0000000000000001e-01");
}

namespace {

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(MSFEM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli("preset-list"), 0);
    EXPECT_EQ(run_cli(""), 1);
    EXPECT_EQ(run_cli("run --no-such-flag"), 1);
    EXPECT_EQ(run_cli("run --set fe.degree=3"), 2);
    EXPECT_EQ(run_cli("run --preset nope"), 2);
    EXPECT_EQ(run_cli("run -q --set mesh.M=2 --set time.T=0.01 --check mass"), 0);
    EXPECT_EQ(run_cli("run -q --set mesh.M=2 --set time.T=0.01 --set output.csv_path=/nonexistent-dir/a.csv"), 5);
    EXPECT_EQ(run_cli("run -q --set mesh.M=2 --set time.T=0.01 --set solver.max_iter_factor=0.001"), 4);
}

TEST(Cli, WritesOutputs)
{
    const auto dir = std::filesystem::temp_directory_path() / "msfem_cli_test";
    std::filesystem::create_directories(dir);
    const std::string prefix = (dir / "snap").string();
    const std::string csv = (dir / "d.csv").string();
    const std::string line = (dir / "line.csv").string();
    EXPECT_EQ(run_cli("run -q --set mesh.M=2 --set time.T=0.02 --set time.dt=0.01 --set output.vtk_every=1"
                      " --set output.vtk_prefix=" + prefix + " --set output.csv_path=" + csv +
                      " --set output.line_samples=4 --set output.line_path=" + line),
              0);
    EXPECT_TRUE(std::filesystem::exists(prefix + "_000000.vtk"));
    EXPECT_TRUE(std::filesystem::exists(prefix + "_000002.vtk"));
    std::ifstream in(csv);
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
    std::ifstream ls(line);
    const std::string ltext((std::istreambuf_iterator<char>(ls)), {});
    EXPECT_EQ(std::count(ltext.begin(), ltext.end(), '\n'), 1 + 3 * 4);
    std::filesystem::remove_all(dir);
}
