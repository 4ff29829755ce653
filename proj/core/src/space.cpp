#include "msfem/space.hpp"

#include <cmath>

namespace msfem {

ScalarSpace::ScalarSpace(const Mesh& mesh, int degree)
    : mesh_(&mesh), element_(degree), n_(mesh.cells_per_axis() * degree)
{
    const int n1 = n_ + 1;
    const int count = n1 * n1 * n1;
    nodes_.reserve(count);
    normals_.reserve(count);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            for (int k = 0; k < n1; ++k) {
                nodes_.push_back({static_cast<double>(i) / n_, static_cast<double>(j) / n_,
                                  static_cast<double>(k) / n_});
                normals_.push_back(lattice_normals(i, j, k, n_));
            }
    for (int d = 0; d < count; ++d)
        if (!normals_[d].empty()) dirichlet_.push_back(d);

    // A local node with barycentrics b sits at lattice point r * sum_v b_v g_v.
    const int r = degree;
    const auto bary = element_.node_barycentrics();
    cell_dofs_.reserve(static_cast<std::size_t>(mesh.num_cells()) * element_.num_nodes());
    for (const auto& cell : mesh.cells()) {
        std::array<std::array<int, 3>, 4> g{};
        for (int v = 0; v < 4; ++v) g[v] = mesh.vertex_grid(cell[v]);
        for (const auto& b : bary) {
            std::array<int, 3> p{};
            for (int a = 0; a < 3; ++a) {
                double s = 0.0;
                for (int v = 0; v < 4; ++v) s += b[v] * g[v][a];
                p[a] = static_cast<int>(std::lround(r * s));
            }
            cell_dofs_.push_back((p[0] * n1 + p[1]) * n1 + p[2]);
        }
    }
}

VectorSpace::VectorSpace(const ScalarSpace& scalar) : scalar_(&scalar)
{
    const int n = scalar.num_dofs();
    constrained_mask_.assign(static_cast<std::size_t>(3) * n, 0);
    for (int node = 0; node < n; ++node) {
        const NormalSet s = scalar.node_normals(node);
        if (s.empty()) continue;
        // A x n = 0 on the face x_i = const leaves only component i free.
        for (int face = 0; face < 3; ++face) {
            if (!s.touches_axis(face)) continue;
            for (int c = 0; c < 3; ++c)
                if (c != face) constrained_mask_[dof(node, c)] = 1;
        }
    }
    for (int d = 0; d < num_dofs(); ++d)
        if (constrained_mask_[d]) constrained_.push_back(d);
}

ScalarField interpolate_scalar(const ScalarSpace& space, const ScalarFunction& f, bool zero_boundary)
{
    ScalarField out(space);
    for (int d = 0; d < space.num_dofs(); ++d)
        out.coeffs[d] = (zero_boundary && space.on_boundary(d)) ? cplx{} : f(space.node(d));
    return out;
}

void apply_tangential_constraints(const VectorSpace& space, std::span<double> coeffs)
{
    for (int d : space.constrained_dofs()) coeffs[d] = 0.0;
}

VectorField interpolate_vector(const VectorSpace& space, const VectorFunction& g)
{
    VectorField out(space);
    const int n = space.num_nodes();
    for (int node = 0; node < n; ++node) {
        const Vec3 v = g(space.scalar().node(node));
        for (int c = 0; c < 3; ++c) out.coeffs[space.dof(node, c)] = v[c];
    }
    apply_tangential_constraints(space, out.coeffs);
    return out;
}

namespace {

template <class Fn>
void for_each_basis(const ScalarSpace& space, int cell, const Point3& ref, Fn&& fn)
{
    const auto& el = space.element();
    std::array<double, 10> phi{};
    std::array<Vec3, 10> dphi{};
    el.eval(ref, std::span<double>(phi.data(), el.num_nodes()));
    el.eval_gradients(ref, std::span<Vec3>(dphi.data(), el.num_nodes()));
    const CellGeometry g = space.mesh().geometry(cell);
    const auto dofs = space.cell_dofs(cell);
    for (int i = 0; i < el.num_nodes(); ++i) fn(dofs[i], phi[i], mat_vec(g.inverse_transpose, dphi[i]));
}

} // namespace

ScalarValue evaluate(const ScalarField& field, int cell, const Point3& ref)
{
    ScalarValue out{};
    for_each_basis(*field.space, cell, ref, [&](int dof, double phi, const Vec3& grad) {
        const cplx c = field.coeffs[dof];
        out.value += c * phi;
        for (int a = 0; a < 3; ++a) out.gradient[a] += c * grad[a];
    });
    return out;
}

VectorValue evaluate(const VectorField& field, int cell, const Point3& ref)
{
    VectorValue out{};
    const VectorSpace& vs = *field.space;
    for_each_basis(vs.scalar(), cell, ref, [&](int node, double phi, const Vec3& grad) {
        for (int c = 0; c < 3; ++c) {
            const double coef = field.coeffs[vs.dof(node, c)];
            out.value[c] += coef * phi;
            for (int a = 0; a < 3; ++a) out.jacobian[c][a] += coef * grad[a];
        }
    });
    return out;
}

ScalarValue evaluate_at(const ScalarField& field, const Point3& x)
{
    const CellPoint p = field.space->mesh().locate(x);
    return evaluate(field, p.cell, p.reference);
}

VectorValue evaluate_at(const VectorField& field, const Point3& x)
{
    const CellPoint p = field.space->mesh().locate(x);
    return evaluate(field, p.cell, p.reference);
}

} // namespace msfem
