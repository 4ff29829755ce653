#include "msfem/space.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace msfem;

TEST(ScalarSpace, DofCounts)
{
    const Mesh mesh = Mesh::unit_cube(3);
    for (int r : {1, 2}) {
        const ScalarSpace s(mesh, r);
        const int n1 = 3 * r + 1;
        EXPECT_EQ(s.num_dofs(), n1 * n1 * n1);
        EXPECT_EQ(static_cast<int>(s.dirichlet_dofs().size()), n1 * n1 * n1 - (n1 - 2) * (n1 - 2) * (n1 - 2));
    }
    EXPECT_THROW(ScalarSpace(mesh, 3), std::invalid_argument);
}

TEST(ScalarSpace, CellDofsSitOnMappedReferenceNodes)
{
    const Mesh mesh = Mesh::unit_cube(2);
    const ScalarSpace s(mesh, 2);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const CellGeometry g = mesh.geometry(c);
        const auto dofs = s.cell_dofs(c);
        for (int i = 0; i < s.nodes_per_cell(); ++i) {
            const Point3 x = g.origin + mat_vec(g.jacobian, s.element().nodes()[i]);
            const Point3& node = s.node(dofs[i]);
            for (int a = 0; a < 3; ++a) EXPECT_NEAR(x[a], node[a], 1e-15);
        }
    }
}

TEST(ScalarSpace, InterpolationReproducesPolynomials)
{
    const Mesh mesh = Mesh::unit_cube(2);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int r : {1, 2}) {
        const ScalarSpace s(mesh, r);
        const ScalarFunction f = [r](const Point3& x) {
            const double re = 1.0 + x[0] - 2.0 * x[1] + 0.5 * x[2] + (r == 2 ? x[0] * x[2] - x[1] * x[1] : 0.0);
            return cplx(re, 0.3 * x[1]);
        };
        const ScalarField fh = interpolate_scalar(s, f, false);
        for (int t = 0; t < 100; ++t) {
            const Point3 x{u(rng), u(rng), u(rng)};
            const ScalarValue v = evaluate_at(fh, x);
            EXPECT_NEAR(std::abs(v.value - f(x)), 0.0, 1e-13);
        }
        // Gradient of the linear part.
        const ScalarValue v = evaluate_at(fh, {0.3, 0.4, 0.6});
        const double gx = 1.0 + (r == 2 ? 0.6 : 0.0);
        EXPECT_NEAR(v.gradient[0].real(), gx, 1e-12);
        EXPECT_NEAR(v.gradient[1].imag(), 0.3, 1e-12);
    }
}

TEST(ScalarSpace, ZeroBoundaryInterpolation)
{
    const Mesh mesh = Mesh::unit_cube(2);
    const ScalarSpace s(mesh, 2);
    const ScalarField fh = interpolate_scalar(s, [](const Point3&) { return cplx(1.0, 1.0); });
    for (int d : s.dirichlet_dofs()) EXPECT_EQ(fh.coeffs[d], cplx(0.0));
    int interior = 0;
    for (int d = 0; d < s.num_dofs(); ++d)
        if (!s.on_boundary(d)) {
            EXPECT_EQ(fh.coeffs[d], cplx(1.0, 1.0));
            ++interior;
        }
    EXPECT_EQ(interior, 27);
}

TEST(VectorSpace, TangentialConstraints)
{
    const Mesh mesh = Mesh::unit_cube(2);
    const ScalarSpace s(mesh, 1);
    const VectorSpace v(s);
    EXPECT_EQ(v.num_dofs(), 3 * 27);
    // Corners: all 3 components; edge nodes: all 3 (two faces, each fixing two);
    // face centres: 2; interior: 0.
    int expected = 0;
    for (int node = 0; node < s.num_dofs(); ++node) {
        const NormalSet n = s.node_normals(node);
        int axes = 0;
        for (int a = 0; a < 3; ++a) axes += n.touches_axis(a);
        const int fixed = axes == 0 ? 0 : (axes == 1 ? 2 : 3);
        int got = 0;
        for (int c = 0; c < 3; ++c) got += v.constrained(v.dof(node, c));
        EXPECT_EQ(got, fixed);
        expected += fixed;
        if (axes == 1)
            for (int a = 0; a < 3; ++a)
                if (n.touches_axis(a)) EXPECT_FALSE(v.constrained(v.dof(node, a))) << "normal component must stay free";
    }
    EXPECT_EQ(static_cast<int>(v.constrained_dofs().size()), expected);
}

TEST(VectorSpace, InterpolationAppliesConstraints)
{
    // M = 4 keeps the cells around the centre free of boundary nodes.
    const Mesh mesh = Mesh::unit_cube(4);
    const ScalarSpace s(mesh, 2);
    const VectorSpace v(s);
    const VectorField f = interpolate_vector(v, [](const Point3& x) { return Vec3{1.0 + x[0], 2.0, x[2]}; });
    for (int d : v.constrained_dofs()) EXPECT_EQ(f.coeffs[d], 0.0);
    const VectorValue val = evaluate_at(f, {0.5, 0.5, 0.5});
    EXPECT_NEAR(val.value[0], 1.5, 1e-14);
    EXPECT_NEAR(val.value[1], 2.0, 1e-14);
    EXPECT_NEAR(val.jacobian[0][0], 1.0, 1e-12);
    EXPECT_NEAR(val.jacobian[2][2], 1.0, 1e-12);
}
