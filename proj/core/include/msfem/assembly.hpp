#pragma once

#include "msfem/quadrature.hpp"
#include "msfem/space.hpp"
#include "msfem/sparse.hpp"

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace msfem {

/// Reference basis values and gradients tabulated at the points of one rule.
struct Tabulation
{
    const QuadratureRule* rule = nullptr;
    int num_points = 0;
    int num_basis = 0;
    std::vector<double> phi;     ///< [q * num_basis + i]
    std::vector<Vec3> ref_grad;  ///< [q * num_basis + i]

    Tabulation(const LagrangeTet& element, const QuadratureRule& rule);
};

/// Everything the form assemblers share: spaces, penalty factor, potential,
/// quadrature policy, symbolic patterns and cell scatter maps.
///
/// Quadrature policy: forms with constant coefficients use a rule exact to
/// degree 2r; forms whose integrand carries discrete-field coefficients
/// (|A|^2, |Psi|^2, currents) and analytic loads use degree min(4r, 6).
class FormContext
{
public:
    /// Throws std::invalid_argument unless gamma > 0.
    FormContext(const ScalarSpace& scalar, const VectorSpace& vector, double gamma, double v0);

    const ScalarSpace& scalar_space() const { return *scalar_; }
    const VectorSpace& vector_space() const { return *vector_; }
    const Mesh& mesh() const { return scalar_->mesh(); }
    double gamma() const { return gamma_; }
    double v0() const { return v0_; }

    const Tabulation& operator_tabulation() const { return *operator_tab_; }
    const Tabulation& coefficient_tabulation() const { return *coefficient_tab_; }
    const Tabulation& error_tabulation() const { return *error_tab_; }
    const CellGeometry& geometry(int cell) const { return geometry_[cell]; }

    const std::shared_ptr<const SparsityPattern>& scalar_pattern() const { return scalar_pattern_; }
    /// Full 3x3 block coupling between components (curl/div forms).
    const std::shared_ptr<const SparsityPattern>& vector_pattern() const { return vector_pattern_; }
    /// Component-diagonal blocks only (mass-type forms).
    const std::shared_ptr<const SparsityPattern>& vector_block_pattern() const { return vector_block_pattern_; }

    /// Positions in the scalar value array of the local (test j, trial i) pairs,
    /// stored row-major as [j * nb + i].
    std::span<const int> scalar_positions(int cell) const
    {
        const std::size_t nb2 = static_cast<std::size_t>(nb_) * nb_;
        return {scalar_positions_.data() + cell * nb2, nb2};
    }

    /// Physical basis gradients of `cell` at the points of `tab`, [q * nb + i].
    void physical_gradients(int cell, const Tabulation& tab, std::span<Vec3> out) const;

private:
    const ScalarSpace* scalar_;
    const VectorSpace* vector_;
    double gamma_;
    double v0_;
    int nb_;
    std::unique_ptr<Tabulation> operator_tab_;
    std::unique_ptr<Tabulation> coefficient_tab_;
    std::unique_ptr<Tabulation> error_tab_;
    std::vector<CellGeometry> geometry_;
    std::shared_ptr<const SparsityPattern> scalar_pattern_;
    std::shared_ptr<const SparsityPattern> vector_pattern_;
    std::shared_ptr<const SparsityPattern> vector_block_pattern_;
    std::vector<int> scalar_positions_;
};

using TimeScalarFunction = std::function<cplx(const Point3&, double)>;
using TimeVectorFunction = std::function<Vec3(const Point3&, double)>;

// Matrices are indexed (row = test function, column = trial function) and
// are assembled on the unconstrained space; the stepper eliminates
// constrained dofs from its own copies.

RealMatrix assemble_scalar_mass(const FormContext& ctx);
RealMatrix assemble_scalar_stiffness(const FormContext& ctx);
/// Block diagonal: three copies of the scalar mass.
RealMatrix assemble_vector_mass(const FormContext& ctx);

/// (div u, div v)
RealMatrix assemble_divergence_form(const FormContext& ctx);
/// (curl u, curl v)
RealMatrix assemble_curl_form(const FormContext& ctx);
/// D(u, v) = gamma (div u, div v) + (curl u, curl v)
RealMatrix assemble_D(const FormContext& ctx);
/// Full vector H1 seminorm form sum_c (grad u_c, grad v_c), block diagonal.
RealMatrix assemble_vector_stiffness(const FormContext& ctx);

/// B(A; psi, phi) = ((i grad + A) psi, (i grad + A) phi). Hermitian.
ComplexMatrix assemble_B(const FormContext& ctx, const VectorField& a);
/// (|A|^2 psi, phi)
RealMatrix assemble_field_weighted_mass(const FormContext& ctx, const VectorField& a);
/// C(j, i) = (A . (phi_j grad phi_i - phi_i grad phi_j), 1); B = K + M_|A|^2 + i C.
RealMatrix assemble_current_coupling(const FormContext& ctx, const VectorField& a);

/// Entries (f(psi, psi), v_j) with f(psi, phi) = (i/2)(phi* grad psi - psi grad phi*).
/// `imag_residue` receives the largest imaginary part discarded.
std::vector<double> assemble_current(const FormContext& ctx, const ScalarField& psi,
                                     double* imag_residue = nullptr);
/// (|psi|^2 u, v) on the vector space, block diagonal.
RealMatrix assemble_density_mass(const FormContext& ctx, const ScalarField& psi);

std::vector<cplx> assemble_load(const FormContext& ctx, const ScalarFunction& f);
std::vector<double> assemble_load(const FormContext& ctx, const VectorFunction& g);
std::vector<cplx> assemble_load(const FormContext& ctx, const TimeScalarFunction& f, double t);
std::vector<double> assemble_load(const FormContext& ctx, const TimeVectorFunction& g, double t);

/// Entries (s_h, div v_j) for a real nodal scalar field s_h.
std::vector<double> assemble_divergence_load(const FormContext& ctx, std::span<const double> nodal);

} // namespace msfem
