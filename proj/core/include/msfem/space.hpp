#pragma once

#include "msfem/geometry.hpp"
#include "msfem/mesh.hpp"
#include "msfem/reference_element.hpp"

#include <functional>
#include <span>
#include <vector>

namespace msfem {

/// Lagrange space of degree r on the structured mesh.
///
/// Nodes coincide with the points of the lattice with n = M r segments per
/// axis, numbered lexicographically by lattice index (i, j, k). The space
/// keeps a reference to the mesh; the mesh must outlive it.
class ScalarSpace
{
public:
    ScalarSpace(const Mesh& mesh, int degree);

    const Mesh& mesh() const { return *mesh_; }
    const LagrangeTet& element() const { return element_; }
    int degree() const { return element_.degree(); }
    int num_dofs() const { return static_cast<int>(nodes_.size()); }
    int nodes_per_cell() const { return element_.num_nodes(); }
    int lattice_segments() const { return n_; }

    std::span<const int> cell_dofs(int cell) const
    {
        return {cell_dofs_.data() + static_cast<std::size_t>(cell) * nodes_per_cell(),
                static_cast<std::size_t>(nodes_per_cell())};
    }
    const Point3& node(int dof) const { return nodes_[dof]; }
    NormalSet node_normals(int dof) const { return normals_[dof]; }
    bool on_boundary(int dof) const { return !normals_[dof].empty(); }

    /// Dofs whose node lies on the boundary (homogeneous Dirichlet set).
    std::span<const int> dirichlet_dofs() const { return dirichlet_; }

private:
    const Mesh* mesh_;
    LagrangeTet element_;
    int n_;
    std::vector<int> cell_dofs_;
    std::vector<Point3> nodes_;
    std::vector<NormalSet> normals_;
    std::vector<int> dirichlet_;
};

/// Real 3-vector Lagrange space with vanishing tangential trace.
///
/// Dofs are blocked by component: dof(node, c) = c * nodes + node. A node on
/// the face x_i = const has the components j != i constrained to zero; nodes
/// on edges and corners collect the union over their faces.
class VectorSpace
{
public:
    explicit VectorSpace(const ScalarSpace& scalar);

    const ScalarSpace& scalar() const { return *scalar_; }
    const Mesh& mesh() const { return scalar_->mesh(); }
    int degree() const { return scalar_->degree(); }
    int num_nodes() const { return scalar_->num_dofs(); }
    int num_dofs() const { return 3 * num_nodes(); }
    int dof(int node, int component) const { return component * num_nodes() + node; }

    bool constrained(int dof) const { return constrained_mask_[dof] != 0; }
    std::span<const int> constrained_dofs() const { return constrained_; }
    std::span<const char> constrained_mask() const { return constrained_mask_; }

private:
    const ScalarSpace* scalar_;
    std::vector<char> constrained_mask_;
    std::vector<int> constrained_;
};

using ScalarFunction = std::function<cplx(const Point3&)>;
using VectorFunction = std::function<Vec3(const Point3&)>;

/// Complex finite element function in a ScalarSpace.
struct ScalarField
{
    const ScalarSpace* space = nullptr;
    std::vector<cplx> coeffs;

    ScalarField() = default;
    explicit ScalarField(const ScalarSpace& s) : space(&s), coeffs(s.num_dofs()) {}
};

/// Real finite element function in a VectorSpace.
struct VectorField
{
    const VectorSpace* space = nullptr;
    std::vector<double> coeffs;

    VectorField() = default;
    explicit VectorField(const VectorSpace& s) : space(&s), coeffs(s.num_dofs()) {}
};

/// Nodal interpolant I_h f. With `zero_boundary` the Dirichlet dofs are set to 0.
ScalarField interpolate_scalar(const ScalarSpace& space, const ScalarFunction& f, bool zero_boundary = true);

/// Nodal interpolant of g with the tangential constraints applied.
VectorField interpolate_vector(const VectorSpace& space, const VectorFunction& g);

/// Zeroes the constrained entries of a vector-space coefficient array.
void apply_tangential_constraints(const VectorSpace& space, std::span<double> coeffs);

struct ScalarValue
{
    cplx value;
    CVec3 gradient;
};

struct VectorValue
{
    Vec3 value;
    Mat3 jacobian; ///< jacobian[i][j] = d value_i / d x_j
};

ScalarValue evaluate(const ScalarField& field, int cell, const Point3& ref);
VectorValue evaluate(const VectorField& field, int cell, const Point3& ref);

/// Evaluation at a physical point (located through the structured mesh).
ScalarValue evaluate_at(const ScalarField& field, const Point3& x);
VectorValue evaluate_at(const VectorField& field, const Point3& x);

} // namespace msfem
