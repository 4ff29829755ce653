#include "msfem/quadrature.hpp"
#include "msfem/reference_element.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace msfem;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Integral of x^a y^b z^c over the reference tetrahedron.
double monomial_integral(int a, int b, int c)
{
    return factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
}

} // namespace

TEST(Quadrature, ExactForMonomialsUpToDegree)
{
    for (int d = 0; d <= kMaxQuadratureDegree; ++d) {
        const QuadratureRule& rule = quadrature_for(d);
        EXPECT_GE(rule.degree, d);
        for (int a = 0; a <= d; ++a)
            for (int b = 0; a + b <= d; ++b)
                for (int c = 0; a + b + c <= d; ++c) {
                    double s = 0.0;
                    for (int q = 0; q < rule.size(); ++q) {
                        const Point3& p = rule.points[q];
                        s += rule.weights[q] * std::pow(p[0], a) * std::pow(p[1], b) * std::pow(p[2], c);
                    }
                    EXPECT_NEAR(s, monomial_integral(a, b, c), 1e-15) << "degree " << d << " monomial " << a << b << c;
                }
    }
}

TEST(Quadrature, PointsInsideAndWeightsPositive)
{
    for (int d = 0; d <= kMaxQuadratureDegree; ++d) {
        const QuadratureRule& rule = quadrature_for(d);
        EXPECT_NEAR(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), 1.0 / 6.0, 1e-15);
        for (int q = 0; q < rule.size(); ++q) {
            EXPECT_GT(rule.weights[q], 0.0);
            const Point3& p = rule.points[q];
            EXPECT_GT(std::min({p[0], p[1], p[2]}), 0.0);
            EXPECT_LT(p[0] + p[1] + p[2], 1.0);
        }
    }
    EXPECT_EQ(quadrature_for(1).size(), 1);
}

TEST(Quadrature, RejectsUnsupportedDegrees)
{
    EXPECT_THROW(quadrature_for(-1), std::invalid_argument);
    EXPECT_THROW(quadrature_for(kMaxQuadratureDegree + 1), std::invalid_argument);
}

TEST(Quadrature, GaussJacobiIntegratesWeightedPolynomials)
{
    // int_0^1 (1-s)^alpha s^k ds = k! alpha! / (k + alpha + 1)!
    for (int alpha : {0, 1, 2})
        for (int n : {1, 2, 3, 4}) {
            std::vector<double> x, w;
            gauss_jacobi_unit(n, alpha, x, w);
            for (int k = 0; k <= 2 * n - 1; ++k) {
                double s = 0.0;
                for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], k);
                EXPECT_NEAR(s, factorial(k) * factorial(alpha) / factorial(k + alpha + 1), 1e-15);
            }
        }
}

class LagrangeBasis : public ::testing::TestWithParam<int>
{
};

TEST_P(LagrangeBasis, KroneckerAtNodes)
{
    const LagrangeTet el(GetParam());
    const auto nodes = el.nodes();
    for (int j = 0; j < el.num_nodes(); ++j) {
        const auto v = el.eval(nodes[j]);
        for (int i = 0; i < el.num_nodes(); ++i) EXPECT_NEAR(v[i], i == j ? 1.0 : 0.0, 1e-15);
    }
}

TEST_P(LagrangeBasis, PartitionOfUnityAndGradientSum)
{
    const LagrangeTet el(GetParam());
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        Point3 p{u(rng), u(rng), u(rng)};
        const double s = p[0] + p[1] + p[2];
        if (s > 1.0) p = (0.9 / s) * p;
        const auto v = el.eval(p);
        const auto g = el.eval_gradients(p);
        EXPECT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 1.0, 1e-14);
        Vec3 gs{0, 0, 0};
        for (const Vec3& gi : g) gs = gs + gi;
        for (int a = 0; a < 3; ++a) EXPECT_NEAR(gs[a], 0.0, 1e-13);
    }
}

TEST_P(LagrangeBasis, GradientsMatchFiniteDifferences)
{
    const LagrangeTet el(GetParam());
    const Point3 p{0.21, 0.17, 0.33};
    const auto g = el.eval_gradients(p);
    const double h = 1e-6;
    for (int a = 0; a < 3; ++a) {
        Point3 pp = p, pm = p;
        pp[a] += h;
        pm[a] -= h;
        const auto vp = el.eval(pp), vm = el.eval(pm);
        for (int i = 0; i < el.num_nodes(); ++i) EXPECT_NEAR(g[i][a], (vp[i] - vm[i]) / (2 * h), 1e-8);
    }
}

TEST_P(LagrangeBasis, ReproducesPolynomialsOfItsDegree)
{
    const int r = GetParam();
    const LagrangeTet el(r);
    auto f = [r](const Point3& x) {
        return r == 1 ? 1.0 + 2.0 * x[0] - x[1] + 0.5 * x[2]
                      : 1.0 + x[0] * x[1] - 3.0 * x[2] * x[2] + x[0] + 0.25 * x[1] * x[2];
    };
    const Point3 p{0.1, 0.3, 0.2};
    const auto v = el.eval(p);
    double s = 0.0;
    for (int i = 0; i < el.num_nodes(); ++i) s += f(el.nodes()[i]) * v[i];
    EXPECT_NEAR(s, f(p), 1e-14);
}

INSTANTIATE_TEST_SUITE_P(Degrees, LagrangeBasis, ::testing::Values(1, 2));

TEST(LagrangeTet, NodeLayout)
{
    const LagrangeTet p2(2);
    ASSERT_EQ(p2.num_nodes(), 10);
    // Edge (1,2) midpoint.
    const Point3& m = p2.nodes()[4 + 3];
    EXPECT_DOUBLE_EQ(m[0], 0.5);
    EXPECT_DOUBLE_EQ(m[1], 0.5);
    EXPECT_DOUBLE_EQ(m[2], 0.0);
}

TEST(LagrangeTet, RejectsUnsupportedDegree)
{
    try {
        LagrangeTet el(3);
        FAIL() << "degree 3 accepted";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("supported: 1, 2"), std::string::npos);
    }
}
