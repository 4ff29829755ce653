#include "msfem/mesh.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace msfem {

namespace {

// Axis permutations in lexicographic order with their parity.
constexpr std::array<std::array<int, 3>, 6> kPermutations{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};
constexpr std::array<bool, 6> kOddPermutation{false, true, true, false, false, true};

} // namespace

int NormalSet::size() const { return std::popcount(static_cast<unsigned>(bits_)); }

Mesh Mesh::unit_cube(int cells_per_axis)
{
    if (cells_per_axis < 1)
        throw std::invalid_argument("mesh: cells per axis must be >= 1, got " +
                                    std::to_string(cells_per_axis));
    Mesh mesh;
    const int m = cells_per_axis;
    mesh.m_ = m;
    const double h = 1.0 / m;

    mesh.vertices_.reserve(static_cast<std::size_t>(m + 1) * (m + 1) * (m + 1));
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j)
            for (int k = 0; k <= m; ++k) mesh.vertices_.push_back({i * h, j * h, k * h});

    mesh.cells_.reserve(static_cast<std::size_t>(6) * m * m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int p = 0; p < 6; ++p) {
                    std::array<int, 3> g{i, j, k};
                    std::array<int, 4> cell{};
                    cell[0] = mesh.vertex_index(g[0], g[1], g[2]);
                    for (int s = 0; s < 3; ++s) {
                        ++g[kPermutations[p][s]];
                        cell[s + 1] = mesh.vertex_index(g[0], g[1], g[2]);
                    }
                    if (kOddPermutation[p]) std::swap(cell[2], cell[3]);
                    mesh.cells_.push_back(cell);
                }

    for (int c = 0; c < mesh.num_cells(); ++c) {
        const auto& cell = mesh.cells_[c];
        for (int f = 0; f < 4; ++f) {
            std::array<std::array<int, 3>, 3> g{};
            int n = 0;
            for (int v = 0; v < 4; ++v)
                if (v != f) g[n++] = mesh.vertex_grid(cell[v]);
            for (int axis = 0; axis < 3; ++axis) {
                const int a = g[0][axis];
                if (a != g[1][axis] || a != g[2][axis]) continue;
                if (a == 0) mesh.boundary_faces_.push_back({c, f, axis, -1});
                if (a == m) mesh.boundary_faces_.push_back({c, f, axis, +1});
            }
        }
    }
    return mesh;
}

std::array<int, 3> Mesh::vertex_grid(int vertex) const
{
    const int n = m_ + 1;
    return {vertex / (n * n), (vertex / n) % n, vertex % n};
}

CellGeometry Mesh::geometry(int cell) const
{
    const auto& c = cells_[cell];
    const Point3& x0 = vertices_[c[0]];
    CellGeometry g{};
    g.origin = x0;
    for (int col = 0; col < 3; ++col) {
        const Vec3 e = vertices_[c[col + 1]] - x0;
        for (int row = 0; row < 3; ++row) g.jacobian[row][col] = e[row];
    }
    g.det = det(g.jacobian);
    g.inverse_transpose = transpose(inverse(g.jacobian));
    return g;
}

double Mesh::signed_volume(int cell) const { return geometry(cell).det / 6.0; }

CellPoint Mesh::locate(const Point3& x) const
{
    std::array<int, 3> cube{};
    std::array<double, 3> frac{};
    for (int a = 0; a < 3; ++a) {
        const double s = x[a] * m_;
        cube[a] = std::clamp(static_cast<int>(std::floor(s)), 0, m_ - 1);
        frac[a] = s - cube[a];
    }
    // The Kuhn simplex containing the point orders the local coordinates.
    int perm = 0;
    for (int p = 0; p < 6; ++p) {
        const auto& q = kPermutations[p];
        if (frac[q[0]] >= frac[q[1]] && frac[q[1]] >= frac[q[2]]) {
            perm = p;
            break;
        }
    }
    const int cell = ((cube[0] * m_ + cube[1]) * m_ + cube[2]) * 6 + perm;
    const CellGeometry g = geometry(cell);
    const Vec3 ref = mat_vec(transpose(g.inverse_transpose), x - g.origin);
    return {cell, ref};
}

NormalSet lattice_normals(int i, int j, int k, int n)
{
    NormalSet s;
    const std::array<int, 3> g{i, j, k};
    for (int a = 0; a < 3; ++a) {
        if (g[a] == 0) s.insert(a, -1);
        if (g[a] == n) s.insert(a, +1);
    }
    return s;
}

std::vector<NormalSet> boundary_vertex_classification(const Mesh& mesh)
{
    std::vector<NormalSet> out;
    out.reserve(mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const auto g = mesh.vertex_grid(v);
        out.push_back(lattice_normals(g[0], g[1], g[2], mesh.cells_per_axis()));
    }
    return out;
}

} // namespace msfem
