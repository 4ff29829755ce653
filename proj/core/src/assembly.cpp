#include "msfem/assembly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace msfem {

Tabulation::Tabulation(const LagrangeTet& element, const QuadratureRule& r)
    : rule(&r), num_points(r.size()), num_basis(element.num_nodes())
{
    phi.resize(static_cast<std::size_t>(num_points) * num_basis);
    ref_grad.resize(phi.size());
    for (int q = 0; q < num_points; ++q) {
        element.eval(r.points[q], std::span<double>(phi.data() + q * num_basis, num_basis));
        element.eval_gradients(r.points[q], std::span<Vec3>(ref_grad.data() + q * num_basis, num_basis));
    }
}

namespace {

std::shared_ptr<const SparsityPattern> build_scalar_pattern(const ScalarSpace& s)
{
    std::vector<std::vector<int>> rows(s.num_dofs());
    for (int c = 0; c < s.mesh().num_cells(); ++c) {
        const auto dofs = s.cell_dofs(c);
        for (int j : dofs)
            for (int i : dofs) rows[j].push_back(i);
    }
    return SparsityPattern::from_rows(std::move(rows));
}

/// Vector pattern from the scalar one; `coupled` keeps all 3x3 component blocks.
std::shared_ptr<const SparsityPattern> build_vector_pattern(const SparsityPattern& s, bool coupled)
{
    const int n = s.size();
    std::vector<int> rp{0};
    std::vector<int> cols;
    rp.reserve(3 * static_cast<std::size_t>(n) + 1);
    cols.reserve(static_cast<std::size_t>(s.nnz()) * (coupled ? 9 : 3));
    for (int a = 0; a < 3; ++a)
        for (int r = 0; r < n; ++r) {
            for (int b = 0; b < 3; ++b) {
                if (!coupled && b != a) continue;
                for (int c : s.row(r)) cols.push_back(c + b * n);
            }
            rp.push_back(static_cast<int>(cols.size()));
        }
    return SparsityPattern::from_csr(std::move(rp), std::move(cols));
}

int nb_of(const FormContext& ctx) { return ctx.scalar_space().nodes_per_cell(); }

/// Scatter a real local matrix [j * nb + i] into a scalar-pattern matrix.
template <class T>
void scatter_scalar(const FormContext& ctx, int cell, std::span<const T> local, CsrMatrix<T>& m)
{
    const auto pos = ctx.scalar_positions(cell);
    auto vals = m.values();
    for (std::size_t k = 0; k < pos.size(); ++k) vals[pos[k]] += local[k];
}

/// Scatter a scalar local matrix into each diagonal block of a block-pattern matrix.
void scatter_block_diagonal(const FormContext& ctx, int cell, std::span<const double> local, RealMatrix& m)
{
    const auto pos = ctx.scalar_positions(cell);
    const int nnz_s = ctx.scalar_pattern()->nnz();
    auto vals = m.values();
    for (int a = 0; a < 3; ++a)
        for (std::size_t k = 0; k < pos.size(); ++k) vals[a * nnz_s + pos[k]] += local[k];
}

/// Scatter a local vector matrix [(b * nb + j) * 3 nb + (c * nb + i)] (test comp b,
/// trial comp c) into a coupled-pattern matrix.
void scatter_coupled(const FormContext& ctx, int cell, std::span<const double> local, RealMatrix& m)
{
    const int nb = nb_of(ctx);
    const int n = ctx.scalar_space().num_dofs();
    const auto pos = ctx.scalar_positions(cell);
    const auto dofs = ctx.scalar_space().cell_dofs(cell);
    const auto srp = ctx.scalar_pattern()->row_ptr();
    const auto vrp = m.pattern().row_ptr();
    auto vals = m.values();
    for (int b = 0; b < 3; ++b)
        for (int j = 0; j < nb; ++j) {
            const int row = dofs[j];
            const int len = srp[row + 1] - srp[row];
            const int base = vrp[b * n + row];
            for (int c = 0; c < 3; ++c)
                for (int i = 0; i < nb; ++i) {
                    const int offset = pos[j * nb + i] - srp[row];
                    vals[base + c * len + offset] += local[(b * nb + j) * 3 * nb + (c * nb + i)];
                }
        }
}

/// Per-cell quadrature loop state: weights scaled by |det J| and physical gradients.
struct CellQuad
{
    const Tabulation& tab;
    std::vector<Vec3> grad;
    std::vector<double> wdet;

    explicit CellQuad(const Tabulation& t)
        : tab(t), grad(static_cast<std::size_t>(t.num_points) * t.num_basis), wdet(t.num_points)
    {
    }

    void reset(const FormContext& ctx, int cell)
    {
        ctx.physical_gradients(cell, tab, grad);
        const double d = std::abs(ctx.geometry(cell).det);
        for (int q = 0; q < tab.num_points; ++q) wdet[q] = tab.rule->weights[q] * d;
    }
    double phi(int q, int i) const { return tab.phi[q * tab.num_basis + i]; }
    const Vec3& g(int q, int i) const { return grad[q * tab.num_basis + i]; }
};

Point3 map_point(const CellGeometry& g, const Point3& ref) { return g.origin + mat_vec(g.jacobian, ref); }

/// Scalar mass or stiffness on the scalar pattern.
RealMatrix assemble_scalar_operator(const FormContext& ctx, bool stiffness)
{
    RealMatrix m(ctx.scalar_pattern());
    const int nb = nb_of(ctx);
    CellQuad cq(ctx.operator_tabulation());
    std::vector<double> local(static_cast<std::size_t>(nb) * nb);
    for (int cell = 0; cell < ctx.mesh().num_cells(); ++cell) {
        cq.reset(ctx, cell);
        std::fill(local.begin(), local.end(), 0.0);
        for (int q = 0; q < cq.tab.num_points; ++q)
            for (int j = 0; j < nb; ++j)
                for (int i = 0; i < nb; ++i)
                    local[j * nb + i] += cq.wdet[q] * (stiffness ? dot(cq.g(q, i), cq.g(q, j))
                                                                 : cq.phi(q, i) * cq.phi(q, j));
        scatter_scalar<double>(ctx, cell, local, m);
    }
    return m;
}

/// (div, div) and (curl, curl) weighted by the given factors.
RealMatrix assemble_div_curl(const FormContext& ctx, double div_weight, double curl_weight)
{
    RealMatrix m(ctx.vector_pattern());
    const int nb = nb_of(ctx);
    const int nl = 3 * nb;
    CellQuad cq(ctx.operator_tabulation());
    std::vector<double> local(static_cast<std::size_t>(nl) * nl);
    for (int cell = 0; cell < ctx.mesh().num_cells(); ++cell) {
        cq.reset(ctx, cell);
        std::fill(local.begin(), local.end(), 0.0);
        for (int q = 0; q < cq.tab.num_points; ++q) {
            const double w = cq.wdet[q];
            for (int j = 0; j < nb; ++j) {
                const Vec3& gj = cq.g(q, j);
                for (int i = 0; i < nb; ++i) {
                    const Vec3& gi = cq.g(q, i);
                    const double gg = dot(gi, gj);
                    // trial phi_i e_c, test phi_j e_b:
                    // div: d_c phi_i d_b phi_j; curl: delta_bc gi.gj - d_b phi_i d_c phi_j
                    for (int b = 0; b < 3; ++b)
                        for (int c = 0; c < 3; ++c) {
                            double v = div_weight * gi[c] * gj[b];
                            v += curl_weight * ((b == c ? gg : 0.0) - gi[b] * gj[c]);
                            local[(b * nb + j) * nl + (c * nb + i)] += w * v;
                        }
                }
            }
        }
        scatter_coupled(ctx, cell, local, m);
    }
    return m;
}

} // namespace

FormContext::FormContext(const ScalarSpace& scalar, const VectorSpace& vector, double gamma, double v0)
    : scalar_(&scalar), vector_(&vector), gamma_(gamma), v0_(v0), nb_(scalar.nodes_per_cell())
{
    if (!(gamma > 0.0)) throw std::invalid_argument("penalty factor gamma must be > 0");
    if (&vector.scalar() != &scalar) throw std::invalid_argument("vector space not built on scalar space");
    const int r = scalar.degree();
    operator_tab_ = std::make_unique<Tabulation>(scalar.element(), quadrature_for(2 * r));
    coefficient_tab_ =
        std::make_unique<Tabulation>(scalar.element(), quadrature_for(std::min(4 * r, kMaxQuadratureDegree)));
    error_tab_ = std::make_unique<Tabulation>(scalar.element(), quadrature_for(kMaxQuadratureDegree));

    const Mesh& mesh = scalar.mesh();
    geometry_.reserve(mesh.num_cells());
    for (int c = 0; c < mesh.num_cells(); ++c) geometry_.push_back(mesh.geometry(c));

    scalar_pattern_ = build_scalar_pattern(scalar);
    vector_pattern_ = build_vector_pattern(*scalar_pattern_, true);
    vector_block_pattern_ = build_vector_pattern(*scalar_pattern_, false);

    scalar_positions_.reserve(static_cast<std::size_t>(mesh.num_cells()) * nb_ * nb_);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const auto dofs = scalar.cell_dofs(c);
        for (int j = 0; j < nb_; ++j)
            for (int i = 0; i < nb_; ++i) scalar_positions_.push_back(scalar_pattern_->find(dofs[j], dofs[i]));
    }
}

void FormContext::physical_gradients(int cell, const Tabulation& tab, std::span<Vec3> out) const
{
    const Mat3& jit = geometry_[cell].inverse_transpose;
    const std::size_t n = static_cast<std::size_t>(tab.num_points) * tab.num_basis;
    if (scalar_->degree() == 1) {
        // P1 gradients are constant on the cell.
        std::array<Vec3, 4> g{};
        for (int i = 0; i < 4; ++i) g[i] = mat_vec(jit, tab.ref_grad[i]);
        for (std::size_t k = 0; k < n; ++k) out[k] = g[k % 4];
        return;
    }
    for (std::size_t k = 0; k < n; ++k) out[k] = mat_vec(jit, tab.ref_grad[k]);
}

RealMatrix assemble_scalar_mass(const FormContext& ctx) { return assemble_scalar_operator(ctx, false); }

RealMatrix assemble_scalar_stiffness(const FormContext& ctx) { return assemble_scalar_operator(ctx, true); }

RealMatrix assemble_vector_mass(const FormContext& ctx)
{
    const RealMatrix s = assemble_scalar_mass(ctx);
    RealMatrix m(ctx.vector_block_pattern());
    const int nnz = s.nnz();
    for (int a = 0; a < 3; ++a) std::copy(s.values().begin(), s.values().end(), m.values().begin() + a * nnz);
    return m;
}

RealMatrix assemble_vector_stiffness(const FormContext& ctx)
{
    const RealMatrix s = assemble_scalar_stiffness(ctx);
    RealMatrix m(ctx.vector_block_pattern());
    const int nnz = s.nnz();
    for (int a = 0; a < 3; ++a) std::copy(s.values().begin(), s.values().end(), m.values().begin() + a * nnz);
    return m;
}

RealMatrix assemble_divergence_form(const FormContext& ctx) { return assemble_div_curl(ctx, 1.0, 0.0); }

RealMatrix assemble_curl_form(const FormContext& ctx) { return assemble_div_curl(ctx, 0.0, 1.0); }

RealMatrix assemble_D(const FormContext& ctx) { return assemble_div_curl(ctx, ctx.gamma(), 1.0); }

namespace {

Vec3 vector_at(const VectorField& a, std::span<const int> dofs, const CellQuad& cq, int q)
{
    const VectorSpace& vs = *a.space;
    Vec3 v{};
    for (int i = 0; i < cq.tab.num_basis; ++i) {
        const double p = cq.phi(q, i);
        for (int c = 0; c < 3; ++c) v[c] += a.coeffs[vs.dof(dofs[i], c)] * p;
    }
    return v;
}

ScalarValue scalar_at(const ScalarField& psi, std::span<const int> dofs, const CellQuad& cq, int q)
{
    ScalarValue s{};
    for (int i = 0; i < cq.tab.num_basis; ++i) {
        const cplx c = psi.coeffs[dofs[i]];
        s.value += c * cq.phi(q, i);
        const Vec3& g = cq.g(q, i);
        for (int a = 0; a < 3; ++a) s.gradient[a] += c * g[a];
    }
    return s;
}

enum class CoefficientPart { Full, WeightedMass, Coupling };

/// Single pass over the pieces of B(A); `part` selects what is accumulated.
template <class T>
CsrMatrix<T> assemble_b_parts(const FormContext& ctx, const VectorField& a, CoefficientPart part)
{
    CsrMatrix<T> m(ctx.scalar_pattern());
    const int nb = nb_of(ctx);
    CellQuad cq(ctx.coefficient_tabulation());
    std::vector<T> local(static_cast<std::size_t>(nb) * nb);
    std::array<double, 10> ag{};
    for (int cell = 0; cell < ctx.mesh().num_cells(); ++cell) {
        cq.reset(ctx, cell);
        const auto dofs = ctx.scalar_space().cell_dofs(cell);
        std::fill(local.begin(), local.end(), T{});
        for (int q = 0; q < cq.tab.num_points; ++q) {
            const Vec3 av = vector_at(a, dofs, cq, q);
            const double a2 = dot(av, av);
            const double w = cq.wdet[q];
            for (int i = 0; i < nb; ++i) ag[i] = dot(av, cq.g(q, i));
            for (int j = 0; j < nb; ++j) {
                const double pj = cq.phi(q, j);
                for (int i = 0; i < nb; ++i) {
                    const double pi = cq.phi(q, i);
                    const double mass = a2 * pi * pj;
                    const double coup = pj * ag[i] - pi * ag[j];
                    if constexpr (std::is_same_v<T, cplx>) {
                        local[j * nb + i] += w * cplx(dot(cq.g(q, i), cq.g(q, j)) + mass, coup);
                    } else {
                        local[j * nb + i] += w * (part == CoefficientPart::WeightedMass ? mass : coup);
                    }
                }
            }
        }
        scatter_scalar<T>(ctx, cell, local, m);
    }
    return m;
}

} // namespace

ComplexMatrix assemble_B(const FormContext& ctx, const VectorField& a)
{
    return assemble_b_parts<cplx>(ctx, a, CoefficientPart::Full);
}

RealMatrix assemble_field_weighted_mass(const FormContext& ctx, const VectorField& a)
{
    return assemble_b_parts<double>(ctx, a, CoefficientPart::WeightedMass);
}

RealMatrix assemble_current_coupling(const FormContext& ctx, const VectorField& a)
{
    return assemble_b_parts<double>(ctx, a, CoefficientPart::Coupling);
}

std::vector<double> assemble_current(const FormContext& ctx, const ScalarField& psi, double* imag_residue)
{
    const VectorSpace& vs = ctx.vector_space();
    std::vector<cplx> acc(vs.num_dofs());
    const int nb = nb_of(ctx);
    CellQuad cq(ctx.coefficient_tabulation());
    const cplx half_i(0.0, 0.5);
    for (int cell = 0; cell < ctx.mesh().num_cells(); ++cell) {
        cq.reset(ctx, cell);
        const auto dofs = ctx.scalar_space().cell_dofs(cell);
        for (int q = 0; q < cq.tab.num_points; ++q) {
            const ScalarValue s = scalar_at(psi, dofs, cq, q);
            CVec3 f{};
            for (int c = 0; c < 3; ++c)
                f[c] = half_i * (std::conj(s.value) * s.gradient[c] - s.value * std::conj(s.gradient[c]));
            for (int j = 0; j < nb; ++j) {
                const double wp = cq.wdet[q] * cq.phi(q, j);
                for (int c = 0; c < 3; ++c) acc[vs.dof(dofs[j], c)] += wp * f[c];
            }
        }
    }
    std::vector<double> out(acc.size());
    double residue = 0.0;
    for (std::size_t k = 0; k < acc.size(); ++k) {
        out[k] = acc[k].real();
        residue = std::max(residue, std::abs(acc[k].imag()));
    }
    if (imag_residue) *imag_residue = residue;
    return out;
}

RealMatrix assemble_density_mass(const FormContext& ctx, const ScalarField& psi)
{
    RealMatrix m(ctx.vector_block_pattern());
    const int nb = nb_of(ctx);
    CellQuad cq(ctx.coefficient_tabulation());
    std::vector<double> local(static_cast<std::size_t>(nb) * nb);
    for (int cell = 0; cell < ctx.mesh().num_cells(); ++cell) {
        cq.reset(ctx, cell);
        const auto dofs = ctx.scalar_space().cell_dofs(cell);
        std::fill(local.begin(), local.end(), 0.0);
        for (int q = 0; q < cq.tab.num_points; ++q) {
            cplx v{};
            for (int i = 0; i < nb; ++i) v += psi.coeffs[dofs[i]] * cq.phi(q, i);
            const double w = cq.wdet[q] * std::norm(v);
            if (w == 0.0) continue;
            for (int j = 0; j < nb; ++j)
                for (int i = 0; i < nb; ++i) local[j * nb + i] += w * cq.phi(q, i) * cq.phi(q, j);
        }
        scatter_block_diagonal(ctx, cell, local, m);
    }
    return m;
}

std::vector<cplx> assemble_load(const FormContext& ctx, const ScalarFunction& f)
{
    std::vector<cplx> out(ctx.scalar_space().num_dofs());
    const int nb = nb_of(ctx);
    const Tabulation& tab = ctx.coefficient_tabulation();
    for (int cell = 0; cell < ctx.mesh().num_cells(); ++cell) {
        const CellGeometry& g = ctx.geometry(cell);
        const double d = std::abs(g.det);
        const auto dofs = ctx.scalar_space().cell_dofs(cell);
        for (int q = 0; q < tab.num_points; ++q) {
            const cplx v = f(map_point(g, tab.rule->points[q])) * (tab.rule->weights[q] * d);
            for (int j = 0; j < nb; ++j) out[dofs[j]] += v * tab.phi[q * nb + j];
        }
    }
    return out;
}

std::vector<double> assemble_load(const FormContext& ctx, const VectorFunction& gfun)
{
    const VectorSpace& vs = ctx.vector_space();
    std::vector<double> out(vs.num_dofs());
    const int nb = nb_of(ctx);
    const Tabulation& tab = ctx.coefficient_tabulation();
    for (int cell = 0; cell < ctx.mesh().num_cells(); ++cell) {
        const CellGeometry& g = ctx.geometry(cell);
        const double d = std::abs(g.det);
        const auto dofs = ctx.scalar_space().cell_dofs(cell);
        for (int q = 0; q < tab.num_points; ++q) {
            const Vec3 v = (tab.rule->weights[q] * d) * gfun(map_point(g, tab.rule->points[q]));
            for (int j = 0; j < nb; ++j) {
                const double p = tab.phi[q * nb + j];
                for (int c = 0; c < 3; ++c) out[vs.dof(dofs[j], c)] += v[c] * p;
            }
        }
    }
    return out;
}

std::vector<cplx> assemble_load(const FormContext& ctx, const TimeScalarFunction& f, double t)
{
    return assemble_load(ctx, ScalarFunction([&](const Point3& x) { return f(x, t); }));
}

std::vector<double> assemble_load(const FormContext& ctx, const TimeVectorFunction& g, double t)
{
    return assemble_load(ctx, VectorFunction([&](const Point3& x) { return g(x, t); }));
}

std::vector<double> assemble_divergence_load(const FormContext& ctx, std::span<const double> nodal)
{
    const VectorSpace& vs = ctx.vector_space();
    std::vector<double> out(vs.num_dofs());
    const int nb = nb_of(ctx);
    CellQuad cq(ctx.coefficient_tabulation());
    for (int cell = 0; cell < ctx.mesh().num_cells(); ++cell) {
        cq.reset(ctx, cell);
        const auto dofs = ctx.scalar_space().cell_dofs(cell);
        for (int q = 0; q < cq.tab.num_points; ++q) {
            double s = 0.0;
            for (int i = 0; i < nb; ++i) s += nodal[dofs[i]] * cq.phi(q, i);
            const double w = cq.wdet[q] * s;
            // div(phi_j e_c) = d_c phi_j
            for (int j = 0; j < nb; ++j) {
                const Vec3& g = cq.g(q, j);
                for (int c = 0; c < 3; ++c) out[vs.dof(dofs[j], c)] += w * g[c];
            }
        }
    }
    return out;
}

} // namespace msfem
