#include "msfem/error_norms.hpp"

#include <cmath>
#include <vector>

namespace msfem {

ErrorReport compute_errors(const FormContext& ctx, const ScalarField& psi, const VectorField& a,
                           const ExactSolution& exact, double t)
{
    const Tabulation& tab = ctx.error_tabulation();
    const ScalarSpace& ss = ctx.scalar_space();
    const VectorSpace& vs = ctx.vector_space();
    const int nb = tab.num_basis;
    std::vector<Vec3> grad(static_cast<std::size_t>(tab.num_points) * nb);

    double e_a = 0.0, e_div = 0.0, e_curl = 0.0, e_psi = 0.0, e_grad = 0.0;
    for (int cell = 0; cell < ctx.mesh().num_cells(); ++cell) {
        const CellGeometry& geo = ctx.geometry(cell);
        ctx.physical_gradients(cell, tab, grad);
        const auto dofs = ss.cell_dofs(cell);
        const double vol = std::abs(geo.det);
        for (int q = 0; q < tab.num_points; ++q) {
            cplx ph{};
            CVec3 gph{};
            Vec3 av{};
            Mat3 ja{};
            for (int i = 0; i < nb; ++i) {
                const double phi = tab.phi[q * nb + i];
                const Vec3& g = grad[q * nb + i];
                const cplx c = psi.coeffs[dofs[i]];
                ph += c * phi;
                for (int d = 0; d < 3; ++d) gph[d] += c * g[d];
                for (int comp = 0; comp < 3; ++comp) {
                    const double ac = a.coeffs[vs.dof(dofs[i], comp)];
                    av[comp] += ac * phi;
                    for (int d = 0; d < 3; ++d) ja[comp][d] += ac * g[d];
                }
            }
            const Point3 x = geo.origin + mat_vec(geo.jacobian, tab.rule->points[q]);
            const double w = tab.rule->weights[q] * vol;

            e_psi += w * std::norm(exact.psi(x, t) - ph);
            const CVec3 gex = exact.grad_psi(x, t);
            for (int d = 0; d < 3; ++d) e_grad += w * std::norm(gex[d] - gph[d]);

            const Vec3 aex = exact.a(x, t);
            const Mat3 jex = exact.jacobian_a(x, t);
            Mat3 dj{};
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) dj[r][c] = jex[r][c] - ja[r][c];
            const Vec3 da = aex - av;
            e_a += w * dot(da, da);
            const double ddiv = dj[0][0] + dj[1][1] + dj[2][2];
            e_div += w * ddiv * ddiv;
            const Vec3 dcurl{dj[2][1] - dj[1][2], dj[0][2] - dj[2][0], dj[1][0] - dj[0][1]};
            e_curl += w * dot(dcurl, dcurl);
        }
    }
    ErrorReport r;
    r.t = t;
    r.a_l2 = std::sqrt(e_a);
    r.a_div = std::sqrt(e_div);
    r.a_curl = std::sqrt(e_curl);
    r.a_h1 = std::sqrt(e_a + e_div + e_curl);
    r.psi_l2 = std::sqrt(e_psi);
    r.psi_h1semi = std::sqrt(e_grad);
    r.psi_h1 = std::sqrt(e_psi + e_grad);
    return r;
}

} // namespace msfem
