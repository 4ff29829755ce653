#include "msfem/reference_element.hpp"

#include <stdexcept>
#include <string>

namespace msfem {

namespace {

// Gradients of the barycentric coordinates on the reference tetrahedron.
constexpr std::array<Vec3, 4> kBaryGrad{{{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

std::array<double, 4> barycentric(const Point3& p)
{
    return {1.0 - p[0] - p[1] - p[2], p[0], p[1], p[2]};
}

} // namespace

LagrangeTet::LagrangeTet(int degree) : degree_(degree)
{
    if (degree != 1 && degree != 2)
        throw std::invalid_argument("unsupported element degree " + std::to_string(degree) +
                                    " (supported: 1, 2)");
    const std::array<Point3, 4> verts{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int v = 0; v < 4; ++v) {
        nodes_.push_back(verts[v]);
        std::array<double, 4> b{};
        b[v] = 1.0;
        node_bary_.push_back(b);
    }
    if (degree == 2) {
        for (const auto& e : kEdges) {
            nodes_.push_back(0.5 * (verts[e[0]] + verts[e[1]]));
            std::array<double, 4> b{};
            b[e[0]] = 0.5;
            b[e[1]] = 0.5;
            node_bary_.push_back(b);
        }
    }
}

void LagrangeTet::eval(const Point3& ref, std::span<double> values) const
{
    const auto l = barycentric(ref);
    if (degree_ == 1) {
        for (int i = 0; i < 4; ++i) values[i] = l[i];
        return;
    }
    for (int i = 0; i < 4; ++i) values[i] = l[i] * (2.0 * l[i] - 1.0);
    for (int e = 0; e < 6; ++e) values[4 + e] = 4.0 * l[kEdges[e][0]] * l[kEdges[e][1]];
}

void LagrangeTet::eval_gradients(const Point3& ref, std::span<Vec3> gradients) const
{
    if (degree_ == 1) {
        for (int i = 0; i < 4; ++i) gradients[i] = kBaryGrad[i];
        return;
    }
    const auto l = barycentric(ref);
    for (int i = 0; i < 4; ++i) gradients[i] = (4.0 * l[i] - 1.0) * kBaryGrad[i];
    for (int e = 0; e < 6; ++e) {
        const int a = kEdges[e][0];
        const int b = kEdges[e][1];
        gradients[4 + e] = (4.0 * l[b]) * kBaryGrad[a] + (4.0 * l[a]) * kBaryGrad[b];
    }
}

std::vector<double> LagrangeTet::eval(const Point3& ref) const
{
    std::vector<double> v(num_nodes());
    eval(ref, v);
    return v;
}

std::vector<Vec3> LagrangeTet::eval_gradients(const Point3& ref) const
{
    std::vector<Vec3> g(num_nodes());
    eval_gradients(ref, g);
    return g;
}

} // namespace msfem
