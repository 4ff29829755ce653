#pragma once

#include "msfem/geometry.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace msfem {

/// Set of outward unit normals ±e_i of the cube faces a point lies on.
class NormalSet
{
public:
    constexpr NormalSet() = default;

    /// side is -1 or +1.
    constexpr void insert(int axis, int side) { bits_ |= bit(axis, side); }
    constexpr bool contains(int axis, int side) const { return (bits_ & bit(axis, side)) != 0; }
    /// True when the point lies on a face x_axis = 0 or x_axis = 1.
    constexpr bool touches_axis(int axis) const { return contains(axis, -1) || contains(axis, +1); }
    constexpr bool empty() const { return bits_ == 0; }
    int size() const;
    constexpr std::uint8_t bits() const { return bits_; }

    friend constexpr bool operator==(NormalSet, NormalSet) = default;

private:
    static constexpr std::uint8_t bit(int axis, int side)
    {
        return static_cast<std::uint8_t>(1u << (2 * axis + (side > 0 ? 1 : 0)));
    }
    std::uint8_t bits_ = 0;
};

/// Face of a cell lying on the boundary; the face is opposite local vertex `local_face`.
struct BoundaryFace
{
    int cell;
    int local_face;
    int axis;
    int side; ///< outward normal is side * e_axis
};

/// Location of a physical point inside the mesh.
struct CellPoint
{
    int cell;
    Point3 reference;
};

/// Affine map x = origin + jacobian * xi from the reference tetrahedron.
struct CellGeometry
{
    Point3 origin;
    Mat3 jacobian;
    Mat3 inverse_transpose; ///< maps reference gradients to physical gradients
    double det;
};

/// Uniform Kuhn triangulation of the unit cube.
///
/// Each of the M^3 subcubes is split into six tetrahedra sharing the diagonal
/// from the cube's lower corner to its upper corner; one tetrahedron per
/// permutation of the axes. The split is translation invariant, so faces of
/// neighbouring cubes match without alternation.
class Mesh
{
public:
    /// Throws std::invalid_argument when cells_per_axis < 1.
    static Mesh unit_cube(int cells_per_axis);

    int cells_per_axis() const { return m_; }
    double h() const { return 1.0 / m_; }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_cells() const { return static_cast<int>(cells_.size()); }

    std::span<const Point3> vertices() const { return vertices_; }
    std::span<const std::array<int, 4>> cells() const { return cells_; }
    std::span<const BoundaryFace> boundary_faces() const { return boundary_faces_; }

    /// Integer lattice coordinates (i, j, k) of a vertex, x = (i, j, k) / M.
    std::array<int, 3> vertex_grid(int vertex) const;
    int vertex_index(int i, int j, int k) const { return (i * (m_ + 1) + j) * (m_ + 1) + k; }

    double signed_volume(int cell) const;
    CellGeometry geometry(int cell) const;

    /// Cell containing x (points on shared faces resolve to one of the cells).
    CellPoint locate(const Point3& x) const;

private:
    int m_ = 0;
    std::vector<Point3> vertices_;
    std::vector<std::array<int, 4>> cells_;
    std::vector<BoundaryFace> boundary_faces_;
};

/// Face normals active at each vertex: ±e_i when the vertex lies on x_i = 0 or 1.
std::vector<NormalSet> boundary_vertex_classification(const Mesh& mesh);

/// Same classification for a lattice point (i, j, k) of an n-segment grid.
NormalSet lattice_normals(int i, int j, int k, int n);

} // namespace msfem
