#include "msfem/assembly.hpp"
#include "msfem/presets.hpp"
#include "msfem/stepper.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace msfem;

namespace {

struct Problem3
{
    Mesh mesh;
    ScalarSpace scalar;
    VectorSpace vector;
    FormContext ctx;

    Problem3(int m, int r) : mesh(Mesh::unit_cube(m)), scalar(mesh, r), vector(scalar), ctx(scalar, vector, 1.0, 0.0) {}
};

VectorField random_potential(const VectorSpace& vs)
{
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    VectorField a(vs);
    for (double& v : a.coeffs) v = nd(rng);
    apply_tangential_constraints(vs, a.coeffs);
    return a;
}

void BM_AssembleB(benchmark::State& state)
{
    const Problem3 p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const VectorField a = random_potential(p.vector);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_B(p.ctx, a));
    state.counters["cells"] = p.mesh.num_cells();
}
BENCHMARK(BM_AssembleB)->Args({8, 1})->Args({16, 1})->Args({8, 2})->Unit(benchmark::kMillisecond);

void BM_AssembleDensityMass(benchmark::State& state)
{
    const Problem3 p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const ScalarField psi = interpolate_scalar(p.scalar, make_problem(preset_config("example51")).psi0);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_density_mass(p.ctx, psi));
}
BENCHMARK(BM_AssembleDensityMass)->Args({8, 1})->Args({8, 2})->Unit(benchmark::kMillisecond);

void BM_ComplexMatVec(benchmark::State& state)
{
    const Problem3 p(static_cast<int>(state.range(0)), 2);
    const ComplexMatrix b = assemble_B(p.ctx, random_potential(p.vector));
    std::vector<cplx> x(b.rows(), cplx(1.0, 0.5)), y(b.rows());
    for (auto _ : state) {
        b.multiply(std::span<const cplx>(x), std::span<cplx>(y));
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(b.values().size()));
}
BENCHMARK(BM_ComplexMatVec)->Arg(8)->Arg(16);

void BM_TimeStep(benchmark::State& state)
{
    const Problem3 p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    Stepper st(p.ctx, make_problem(preset_config("example51")), 0.0025, 1.0);
    FieldState s = st.initialize();
    for (auto _ : state) st.advance(s);
}
BENCHMARK(BM_TimeStep)->Args({8, 1})->Args({8, 2})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
