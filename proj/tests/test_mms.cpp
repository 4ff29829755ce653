#include "msfem/convergence.hpp"
#include "msfem/manufactured.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace msfem;

namespace {

constexpr double kPi = std::numbers::pi;

// Second, independent transcription of the closed forms.
cplx psi_direct(const Point3& x, double t)
{
    const cplx i(0.0, 1.0);
    double poly = std::exp((x[0] + x[1] + x[2]) / 5.0);
    double sines = 1.0;
    for (int a = 0; a < 3; ++a) {
        poly *= x[a] * (1.0 - x[a]);
        sines *= std::sin(2.0 * kPi * x[a]);
    }
    return 20.0 * std::exp(i * t) * (1.0 + 3.0 * t * t) * poly + 5.0 * std::exp(i * kPi * t) * sines;
}

Vec3 a_direct(const Point3& x, double t)
{
    auto s2 = [&](int a) { return std::sin(2 * kPi * x[a]); };
    auto c2 = [&](int a) { return std::cos(2 * kPi * x[a]); };
    auto s1 = [&](int a) { return std::sin(kPi * x[a]); };
    auto c1 = [&](int a) { return std::cos(kPi * x[a]); };
    const double st = std::sin(kPi * t), ct = std::cos(kPi * t);
    return {st * c2(0) * s2(1) * s2(2) + ct * c1(0) * s1(1) * s1(2),
            st * s2(0) * c2(1) * s2(2) + ct * s1(0) * c1(1) * s1(2),
            st * s2(0) * s2(1) * c2(2) + ct * s1(0) * s1(1) * c1(2)};
}

// The manufactured solution with the time derivative of Psi deliberately wrong.
class BrokenSolution final : public ExactSolution
{
public:
    BrokenSolution() : ExactSolution(1.0, 5.0) {}
    cplx psi(const Point3& x, double t) const override { return e_.psi(x, t); }
    CVec3 grad_psi(const Point3& x, double t) const override { return e_.grad_psi(x, t); }
    cplx laplacian_psi(const Point3& x, double t) const override { return e_.laplacian_psi(x, t); }
    cplx psi_t(const Point3& x, double t) const override { return -e_.psi_t(x, t); }
    Vec3 a(const Point3& x, double t) const override { return e_.a(x, t); }
    Mat3 jacobian_a(const Point3& x, double t) const override { return e_.jacobian_a(x, t); }
    std::array<Mat3, 3> hessian_a(const Point3& x, double t) const override { return e_.hessian_a(x, t); }
    Vec3 a_t(const Point3& x, double t) const override { return e_.a_t(x, t); }
    Vec3 a_tt(const Point3& x, double t) const override { return e_.a_tt(x, t); }

private:
    Example52Solution e_;
};

} // namespace

TEST(ManufacturedSolution, ValueAtCentre)
{
    const Example52Solution ex;
    // 20 e^{0.3} (1/4)^3 with the sine term vanishing.
    const double expect = 20.0 * std::exp(0.3) / 64.0;
    EXPECT_NEAR(std::abs(ex.psi({0.5, 0.5, 0.5}, 0.0) - expect), 0.0, 1e-14);
    for (const Point3& x : {Point3{0.1, 0.7, 0.3}, Point3{0.9, 0.2, 0.45}})
        for (double t : {0.0, 0.37, 2.5}) {
            EXPECT_NEAR(std::abs(ex.psi(x, t) - psi_direct(x, t)), 0.0, 1e-12);
            const Vec3 a = ex.a(x, t), b = a_direct(x, t);
            for (int c = 0; c < 3; ++c) EXPECT_NEAR(a[c], b[c], 1e-14);
        }
}

TEST(ManufacturedSolution, InitialPotentialIsTheCosineTriple)
{
    const Example52Solution ex;
    const Point3 x{0.2, 0.6, 0.3};
    const Vec3 a = ex.a(x, 0.0);
    EXPECT_NEAR(a[0], std::cos(kPi * 0.2) * std::sin(kPi * 0.6) * std::sin(kPi * 0.3), 1e-15);
}

TEST(ManufacturedSolution, BoundaryTraces)
{
    const Example52Solution ex;
    for (double t : {0.0, 0.8, 3.1})
        for (int axis = 0; axis < 3; ++axis)
            for (double side : {0.0, 1.0}) {
                Point3 x{0.31, 0.62, 0.77};
                x[axis] = side;
                EXPECT_LT(std::abs(ex.psi(x, t)), 1e-12);
                // Tangential components vanish and so does div A.
                const Vec3 a = ex.a(x, t);
                for (int c = 0; c < 3; ++c)
                    if (c != axis) EXPECT_NEAR(a[c], 0.0, 1e-12);
                EXPECT_NEAR(ex.div_a(x, t), 0.0, 1e-10);
            }
}

TEST(ManufacturedSolution, PotentialIsCurlFree)
{
    const Example52Solution ex;
    const Vec3 c = ex.curl_a({0.3, 0.4, 0.8}, 1.7);
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(c[a], 0.0, 1e-12);
}

TEST(SourceGate, HandDerivedSourcesPass)
{
    const Example52Solution ex;
    const SourceCheck r = check_sources(ex, 20, 1e-4, Example52Solution::kFinalTime);
    EXPECT_TRUE(r.passed);
    EXPECT_LT(r.max_schrodinger_residual, 1e-6);
    EXPECT_LT(r.max_maxwell_residual, 1e-6);
}

TEST(SourceGate, WrongDerivativeIsCaught)
{
    const BrokenSolution bad;
    const SourceCheck r = check_sources(bad, 20, 1e-4, 4.0);
    EXPECT_FALSE(r.passed);
    EXPECT_GT(r.max_schrodinger_residual, 1e-2);
}

TEST(Convergence, RefusesToRunWithBrokenSources)
{
    const BrokenSolution bad;
    ConvergenceOptions o;
    o.degree = 1;
    o.grid = {1, 2};
    o.exact = &bad;
    EXPECT_THROW(convergence_study(o), std::runtime_error);
    o.grid = {2};
    EXPECT_THROW(convergence_study(o), std::invalid_argument);
}

TEST(Convergence, EmpiricalOrder)
{
    EXPECT_DOUBLE_EQ(empirical_order(4.0, 1.0, 0.5, 0.25), 2.0);
    EXPECT_NEAR(empirical_order(3.3770e-02, 8.4984e-03, 1.0 / 25, 1.0 / 50), 1.99, 0.01);
}

TEST(Convergence, TimeGridHitsReportTimes)
{
    const TimeGrid g = convergence_time_grid(std::sqrt(1.0 / 50.0), TimeStepRule::MeshSize, 4.0, {1, 2, 3, 4});
    // ceil applied to a unit interval: 8 steps per unit.
    EXPECT_EQ(g.steps, 32);
    EXPECT_DOUBLE_EQ(g.dt, 0.125);
    const TimeGrid s = convergence_time_grid(1.0 / 8, TimeStepRule::SqrtMeshSize, 1.0, {1.0});
    EXPECT_EQ(s.steps, 3);
}

TEST(ErrorNorms, ZeroAgainstZero)
{
    class Zero final : public ExactSolution
    {
    public:
        Zero() : ExactSolution(1.0, 0.0) {}
        cplx psi(const Point3&, double) const override { return 0.0; }
        CVec3 grad_psi(const Point3&, double) const override { return {}; }
        cplx laplacian_psi(const Point3&, double) const override { return 0.0; }
        cplx psi_t(const Point3&, double) const override { return 0.0; }
        Vec3 a(const Point3&, double) const override { return {}; }
        Mat3 jacobian_a(const Point3&, double) const override { return {}; }
        std::array<Mat3, 3> hessian_a(const Point3&, double) const override { return {}; }
        Vec3 a_t(const Point3&, double) const override { return {}; }
        Vec3 a_tt(const Point3&, double) const override { return {}; }
    } zero;
    const Mesh mesh = Mesh::unit_cube(2);
    const ScalarSpace ss(mesh, 2);
    const VectorSpace vs(ss);
    const FormContext ctx(ss, vs, 1.0, 0.0);
    const ErrorReport e = compute_errors(ctx, ScalarField(ss), VectorField(vs), zero, 0.0);
    EXPECT_EQ(e.psi_h1, 0.0);
    EXPECT_EQ(e.a_h1, 0.0);
}

TEST(ErrorNorms, ExactForInterpolableFields)
{
    // Quadratic fields are captured exactly by P2, so every error vanishes.
    class Quadratic final : public ExactSolution
    {
    public:
        Quadratic() : ExactSolution(1.0, 0.0) {}
        cplx psi(const Point3& x, double) const override { return cplx(x[0] * x[1], x[2] * x[2]); }
        CVec3 grad_psi(const Point3& x, double) const override
        {
            return {cplx(x[1], 0.0), cplx(x[0], 0.0), cplx(0.0, 2.0 * x[2])};
        }
        cplx laplacian_psi(const Point3&, double) const override { return cplx(0.0, 2.0); }
        cplx psi_t(const Point3&, double) const override { return 0.0; }
        Vec3 a(const Point3& x, double) const override { return {x[0] * x[0], x[1], 0.0}; }
        Mat3 jacobian_a(const Point3& x, double) const override
        {
            Mat3 j{};
            j[0][0] = 2.0 * x[0];
            j[1][1] = 1.0;
            return j;
        }
        std::array<Mat3, 3> hessian_a(const Point3&, double) const override { return {}; }
        Vec3 a_t(const Point3&, double) const override { return {}; }
        Vec3 a_tt(const Point3&, double) const override { return {}; }
    } q;
    const Mesh mesh = Mesh::unit_cube(2);
    const ScalarSpace ss(mesh, 2);
    const VectorSpace vs(ss);
    const FormContext ctx(ss, vs, 1.0, 0.0);
    const ScalarField psi = interpolate_scalar(ss, [&](const Point3& x) { return q.psi(x, 0.0); }, false);
    VectorField a(vs);
    for (int node = 0; node < ss.num_dofs(); ++node) {
        const Vec3 v = q.a(ss.node(node), 0.0);
        for (int c = 0; c < 3; ++c) a.coeffs[vs.dof(node, c)] = v[c];
    }
    const ErrorReport e = compute_errors(ctx, psi, a, q, 0.0);
    EXPECT_LT(e.psi_h1, 1e-12);
    EXPECT_LT(e.a_h1, 1e-12);
}

TEST(Convergence, InterpolationOnlyRates)
{
    for (int r : {1, 2}) {
        ConvergenceOptions o;
        o.degree = r;
        o.grid = {4, 8, 16};
        o.final_time = 1.0;
        o.report_times = {0.5};
        o.interpolation_only = true;
        const ConvergenceTable t = convergence_study(o);
        ASSERT_EQ(t.rows.size(), 3u);
        EXPECT_NEAR(t.eoc(2, 0, &ErrorReport::psi_h1), r, 0.2);
        EXPECT_NEAR(t.eoc(2, 0, &ErrorReport::a_h1), r, 0.2);
        EXPECT_NEAR(t.eoc(2, 0, &ErrorReport::psi_l2), r + 1, 0.2);
        EXPECT_NEAR(t.eoc(2, 0, &ErrorReport::a_l2), r + 1, 0.2);
        // Orders approach the asymptotic value from one level to the next.
        EXPECT_LE(std::abs(t.eoc(2, 0, &ErrorReport::psi_h1) - r), std::abs(t.eoc(1, 0, &ErrorReport::psi_h1) - r));
    }
}

TEST(Convergence, CsvLayout)
{
    ConvergenceOptions o;
    o.degree = 1;
    o.grid = {2, 4};
    o.final_time = 1.0;
    o.report_times = {1.0};
    o.interpolation_only = true;
    std::ostringstream out;
    write_convergence_csv(out, convergence_study(o));
    std::istringstream in(out.str());
    std::string header, first, second;
    std::getline(in, header);
    std::getline(in, first);
    std::getline(in, second);
    EXPECT_EQ(header.rfind("M,h,dt,t,errA_L2,errA_div,errA_curl,errA_H1,errPsi_L2,errPsi_H1semi,errPsi_H1,", 0), 0u);
    EXPECT_EQ(std::count(first.begin(), first.end(), ','), 14);
    EXPECT_EQ(first.substr(first.size() - 4), ",,,,");
    EXPECT_NE(second.substr(second.size() - 4), ",,,,");
}
