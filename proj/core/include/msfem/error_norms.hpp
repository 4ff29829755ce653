#pragma once

#include "msfem/assembly.hpp"
#include "msfem/manufactured.hpp"

namespace msfem {

/// Errors of a discrete pair against the exact solution at time t. Every
/// integral uses the degree-6 rule, independent of the element degree.
struct ErrorReport
{
    double t = 0.0;
    double a_l2 = 0.0;
    double a_div = 0.0;  ///< ||div(A - A_h)||
    double a_curl = 0.0; ///< ||curl(A - A_h)||
    double a_h1 = 0.0;   ///< (l2^2 + div^2 + curl^2)^(1/2)
    double psi_l2 = 0.0;
    double psi_h1semi = 0.0;
    double psi_h1 = 0.0;
};

ErrorReport compute_errors(const FormContext& ctx, const ScalarField& psi, const VectorField& a,
                           const ExactSolution& exact, double t);

} // namespace msfem
