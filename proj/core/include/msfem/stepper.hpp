#pragma once

#include "msfem/assembly.hpp"
#include "msfem/charge_integral.hpp"
#include "msfem/solvers.hpp"
#include "msfem/space.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace msfem {

/// Initial data and sources of one simulation.
struct Problem
{
    std::string name;
    ScalarFunction psi0;
    VectorFunction a0;
    VectorFunction a1;    ///< dA/dt at t = 0; empty means zero
    TimeVectorFunction g; ///< Maxwell source; empty means zero
    TimeScalarFunction f; ///< Schrodinger source (manufactured problems); empty means zero
    /// Adds gamma (div A_0 - S, div v) to the Maxwell load, S the charge integral.
    bool charge_integral = false;
    int charge_subintervals = 1;
};

/// Time step landing exactly on `final_time`: T / ceil(T / requested).
struct TimeGrid
{
    double dt;
    int steps;
};
TimeGrid effective_time_grid(double final_time, double requested_dt);

/// Sliding window {Psi^k, Psi^{k-1}, A^k, A^{k-1}, A^{k-2}} at step k.
struct FieldState
{
    int k = 0;
    double dt = 0.0;
    ScalarField psi;
    ScalarField psi_prev;
    VectorField a;
    VectorField a_prev;
    VectorField a_prev2;

    double time() const { return k * dt; }
};

struct Diagnostics
{
    int k = 0;
    double t = 0.0;
    double mass = 0.0;        ///< ||Psi^k||^2
    double energy = 0.0;      ///< discrete energy G^k
    double energy_imag = 0.0; ///< imaginary residue of B(Abar; Psi, Psi)
    double psi_h1 = 0.0;      ///< ||Psi^k||_H1
    double a_h1 = 0.0;        ///< (||A||^2 + ||div A||^2 + ||curl A||^2)^(1/2)
    SolveReport maxwell;
    SolveReport schrodinger;
};

struct StepReport
{
    SolveReport maxwell;
    SolveReport schrodinger;
};

/// Decoupled Crank-Nicolson time stepper.
///
/// Each step first solves the (SPD) Maxwell system for A^k, which only needs
/// Psi^{k-1}, then the Schrodinger system for Psi^k with the averaged
/// potential (A^k + A^{k-1}) / 2.
class Stepper
{
public:
    Stepper(const FormContext& ctx, Problem problem, double dt, double final_time, SolverOptions solver = {});

    const FormContext& context() const { return *ctx_; }
    const Problem& problem() const { return problem_; }
    double dt() const { return dt_; }

    /// Psi^0 = I_h Psi_0, A^0 = pi_h A_0, A^{-1} = A^0 - dt pi_h A_1.
    FieldState initialize();

    /// A^{k+1} from the window at step k (uses Psi^k and g(t_k)).
    VectorField maxwell_step(const FieldState& s, SolveReport* report = nullptr) const;
    /// Psi^{k+1} from the window at step k and the new potential A^{k+1}.
    ScalarField schrodinger_step(const FieldState& s, const VectorField& a_next,
                                 SolveReport* report = nullptr) const;

    /// Advances the window by one step. Throws SolveError (annotated with the step index).
    StepReport advance(FieldState& s);

    Diagnostics diagnostics(const FieldState& s) const;

    /// With the Maxwell update disabled A stays frozen at its initial value.
    void set_maxwell_enabled(bool enabled) { maxwell_enabled_ = enabled; }

    const RealMatrix& scalar_mass() const { return scalar_mass_; }
    const RealMatrix& scalar_stiffness() const { return scalar_stiffness_; }
    const RealMatrix& vector_mass() const { return vector_mass_; }
    const RealMatrix& d_form() const { return d_; }
    const std::optional<ChargeIntegral>& charge_integral() const { return charge_; }

    /// Nodal density |Psi_i|^2.
    static std::vector<double> nodal_density(const ScalarField& psi);

private:
    ComplexMatrix schrodinger_matrix(const ComplexMatrix& b) const;
    std::vector<double> initial_density_rate(const ScalarField& psi, const VectorField& a) const;

    const FormContext* ctx_;
    Problem problem_;
    double dt_;
    double final_time_;
    SolverOptions solver_;
    bool maxwell_enabled_ = true;

    RealMatrix scalar_mass_;
    RealMatrix scalar_stiffness_;
    RealMatrix vector_mass_;
    RealMatrix div_form_;
    RealMatrix curl_form_;
    RealMatrix d_;
    std::vector<char> dirichlet_mask_;
    std::vector<double> div_a0_load_;
    std::optional<ChargeIntegral> charge_;

    // B(Abar^k) from the most recent Schrodinger step, reused by diagnostics.
    mutable int cached_b_step_ = -1;
    mutable ComplexMatrix cached_b_;
    StepReport last_report_;
};

using Observer = std::function<void(const FieldState&, const Diagnostics&)>;

struct RunResult
{
    std::vector<Diagnostics> history;
    FieldState final_state;
};

/// initialize, then `steps` calls to advance, with diagnostics after each.
RunResult run(Stepper& stepper, int steps, const Observer& observer = {});

} // namespace msfem
