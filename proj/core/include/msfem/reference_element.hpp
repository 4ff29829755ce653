#pragma once

#include "msfem/geometry.hpp"

#include <array>
#include <span>
#include <vector>

namespace msfem {

/// Lagrange element of degree 1 or 2 on the reference tetrahedron
/// with vertices (0,0,0), (1,0,0), (0,1,0), (0,0,1).
///
/// Node order: the four vertices, then (degree 2) the six edge midpoints
/// with edges ordered lexicographically by their endpoint indices:
/// (0,1), (0,2), (0,3), (1,2), (1,3), (2,3).
class LagrangeTet
{
public:
    /// Throws std::invalid_argument for degrees other than 1 and 2.
    explicit LagrangeTet(int degree);

    int degree() const { return degree_; }
    int num_nodes() const { return degree_ == 1 ? 4 : 10; }
    std::span<const Point3> nodes() const { return nodes_; }

    /// Barycentric coordinates of a node, in multiples of 1/degree.
    std::span<const std::array<double, 4>> node_barycentrics() const { return node_bary_; }

    void eval(const Point3& ref, std::span<double> values) const;
    void eval_gradients(const Point3& ref, std::span<Vec3> gradients) const;

    std::vector<double> eval(const Point3& ref) const;
    std::vector<Vec3> eval_gradients(const Point3& ref) const;

    static constexpr std::array<std::array<int, 2>, 6> kEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

private:
    int degree_;
    std::vector<Point3> nodes_;
    std::vector<std::array<double, 4>> node_bary_;
};

} // namespace msfem
