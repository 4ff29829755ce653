#include "msfem/stepper.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace msfem {

TimeGrid effective_time_grid(double final_time, double requested_dt)
{
    if (!(final_time > 0.0) || !(requested_dt > 0.0))
        throw std::invalid_argument("time grid: T and dt must be positive");
    // Guard against T/dt landing a hair above an integer.
    const double ratio = final_time / requested_dt;
    int steps = static_cast<int>(std::ceil(ratio - 1e-9 * ratio));
    steps = std::max(steps, 1);
    return {final_time / steps, steps};
}

namespace {

double real_dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// sum conj(a_i) b_i
cplx herm_dot(std::span<const cplx> a, std::span<const cplx> b)
{
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double quadratic(const RealMatrix& m, std::span<const double> x)
{
    const auto y = m * x;
    return real_dot(x, y);
}

std::vector<cplx> apply_real(const RealMatrix& m, std::span<const cplx> x)
{
    std::vector<cplx> y(x.size());
    m.multiply<cplx>(x, std::span<cplx>(y));
    return y;
}

} // namespace

Stepper::Stepper(const FormContext& ctx, Problem problem, double dt, double final_time, SolverOptions solver)
    : ctx_(&ctx), problem_(std::move(problem)), dt_(dt), final_time_(final_time), solver_(solver)
{
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be > 0");
    if (!problem_.psi0 || !problem_.a0) throw std::invalid_argument("problem needs Psi_0 and A_0");
    scalar_mass_ = assemble_scalar_mass(ctx);
    scalar_stiffness_ = assemble_scalar_stiffness(ctx);
    vector_mass_ = assemble_vector_mass(ctx);
    div_form_ = assemble_divergence_form(ctx);
    curl_form_ = assemble_curl_form(ctx);
    d_ = RealMatrix(ctx.vector_pattern());
    d_.add_scaled(ctx.gamma(), div_form_);
    d_.add_scaled(1.0, curl_form_);

    const ScalarSpace& ss = ctx.scalar_space();
    dirichlet_mask_.assign(ss.num_dofs(), 0);
    for (int d : ss.dirichlet_dofs()) dirichlet_mask_[d] = 1;

    if (problem_.charge_integral) charge_.emplace(final_time_, std::max(1, problem_.charge_subintervals));
}

std::vector<double> Stepper::nodal_density(const ScalarField& psi)
{
    std::vector<double> rho(psi.coeffs.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(psi.coeffs[i]);
    return rho;
}

std::vector<double> Stepper::initial_density_rate(const ScalarField& psi, const VectorField& a) const
{
    // M R = (1/2 B(A) + V0 M) Psi, dPsi/dt = -i R, d rho/dt = 2 Im(conj(Psi) R).
    const ComplexMatrix b = assemble_B(*ctx_, a);
    const auto bpsi = b * std::span<const cplx>(psi.coeffs);
    const auto mpsi = apply_real(scalar_mass_, psi.coeffs);
    const int n = static_cast<int>(psi.coeffs.size());
    std::vector<double> re(n), im(n);
    for (int i = 0; i < n; ++i) {
        const cplx h = 0.5 * bpsi[i] + ctx_->v0() * mpsi[i];
        re[i] = dirichlet_mask_[i] ? 0.0 : h.real();
        im[i] = dirichlet_mask_[i] ? 0.0 : h.imag();
    }
    RealMatrix m = scalar_mass_;
    m.eliminate(dirichlet_mask_);
    const auto xr = solve_spd(m, re, solver_);
    const auto xi = solve_spd(m, im, solver_);
    std::vector<double> rate(n);
    for (int i = 0; i < n; ++i) rate[i] = 2.0 * std::imag(std::conj(psi.coeffs[i]) * cplx(xr.x[i], xi.x[i]));
    return rate;
}

FieldState Stepper::initialize()
{
    const ScalarSpace& ss = ctx_->scalar_space();
    const VectorSpace& vs = ctx_->vector_space();
    FieldState s;
    s.k = 0;
    s.dt = dt_;
    s.psi = interpolate_scalar(ss, problem_.psi0, true);
    s.psi_prev = s.psi;
    s.a = interpolate_vector(vs, problem_.a0);
    s.a_prev = s.a;
    if (problem_.a1) {
        const VectorField a1 = interpolate_vector(vs, problem_.a1);
        for (std::size_t i = 0; i < a1.coeffs.size(); ++i) s.a_prev.coeffs[i] -= dt_ * a1.coeffs[i];
    }
    s.a_prev2 = s.a_prev;

    cached_b_step_ = -1;
    last_report_ = {};
    if (charge_) {
        div_a0_load_ = div_form_ * std::span<const double>(s.a.coeffs);
        for (double& v : div_a0_load_) v *= ctx_->gamma();
        charge_->start(nodal_density(s.psi), initial_density_rate(s.psi, s.a));
    }
    return s;
}

VectorField Stepper::maxwell_step(const FieldState& s, SolveReport* report) const
{
    const VectorSpace& vs = ctx_->vector_space();
    const double t = s.time();
    const double inv_dt2 = 1.0 / (dt_ * dt_);
    const int n = vs.num_dofs();

    const RealMatrix rho_mass = assemble_density_mass(*ctx_, s.psi);
    RealMatrix lhs(ctx_->vector_pattern());
    lhs.add_scaled(0.5, d_);
    lhs.add_scaled(inv_dt2, vector_mass_);
    lhs.add_scaled(0.25, rho_mass);
    lhs.eliminate(vs.constrained_mask());

    const auto& a1 = s.a.coeffs;      // A^k
    const auto& a2 = s.a_prev.coeffs; // A^{k-1}
    std::vector<double> w(n), u(n);
    for (int i = 0; i < n; ++i) {
        w[i] = 2.0 * a1[i] - a2[i];
        u[i] = 2.0 * a1[i] + a2[i];
    }
    const auto mw = vector_mass_ * std::span<const double>(w);
    const auto da2 = d_ * std::span<const double>(a2);
    const auto ru = rho_mass * std::span<const double>(u);
    const auto current = assemble_current(*ctx_, s.psi);

    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = inv_dt2 * mw[i] - 0.5 * da2[i] - 0.25 * ru[i] - current[i];
    if (problem_.g) {
        const auto gl = assemble_load(*ctx_, problem_.g, t);
        for (int i = 0; i < n; ++i) rhs[i] += gl[i];
    }
    if (charge_) {
        // gamma (div A_0 - S(t_k), div v)
        const auto sval = charge_->value(t);
        const auto sl = assemble_divergence_load(*ctx_, sval);
        for (int i = 0; i < n; ++i) rhs[i] += div_a0_load_[i] - ctx_->gamma() * sl[i];
    }
    for (int d : vs.constrained_dofs()) rhs[d] = 0.0;

    VectorField next(vs);
    next.coeffs = w; // extrapolated initial guess
    for (int d : vs.constrained_dofs()) next.coeffs[d] = 0.0;
    const SolveReport rep = solve_spd(lhs, rhs, next.coeffs, solver_);
    if (report) *report = rep;
    return next;
}

ComplexMatrix Stepper::schrodinger_matrix(const ComplexMatrix& b) const
{
    // -(i/dt) M + B/4 + (V0/2) M
    ComplexMatrix lhs(ctx_->scalar_pattern());
    lhs.add_scaled(cplx(0.25, 0.0), b);
    lhs.add_scaled(cplx(0.5 * ctx_->v0(), -1.0 / dt_), scalar_mass_);
    lhs.eliminate(dirichlet_mask_);
    return lhs;
}

ScalarField Stepper::schrodinger_step(const FieldState& s, const VectorField& a_next, SolveReport* report) const
{
    const ScalarSpace& ss = ctx_->scalar_space();
    const int n = ss.num_dofs();
    VectorField abar(ctx_->vector_space());
    for (std::size_t i = 0; i < abar.coeffs.size(); ++i)
        abar.coeffs[i] = 0.5 * (a_next.coeffs[i] + s.a.coeffs[i]);
    ComplexMatrix b = assemble_B(*ctx_, abar);

    const auto bpsi = b * std::span<const cplx>(s.psi.coeffs);
    const auto mpsi = apply_real(scalar_mass_, s.psi.coeffs);
    const cplx mass_coef(-0.5 * ctx_->v0(), -1.0 / dt_);
    std::vector<cplx> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = mass_coef * mpsi[i] - 0.25 * bpsi[i];
    if (problem_.f) {
        const auto fl = assemble_load(*ctx_, problem_.f, s.time() + 0.5 * dt_);
        for (int i = 0; i < n; ++i) rhs[i] += fl[i];
    }
    for (int d : ss.dirichlet_dofs()) rhs[d] = 0.0;

    const ComplexMatrix lhs = schrodinger_matrix(b);
    ScalarField next = s.psi;
    const SolveReport rep = solve_complex(lhs, rhs, next.coeffs, solver_);
    if (report) *report = rep;

    cached_b_ = std::move(b);
    cached_b_step_ = s.k + 1;
    return next;
}

StepReport Stepper::advance(FieldState& s)
{
    StepReport rep;
    try {
        VectorField a_next = maxwell_enabled_ ? maxwell_step(s, &rep.maxwell) : s.a;
        ScalarField psi_next = schrodinger_step(s, a_next, &rep.schrodinger);
        s.a_prev2 = std::move(s.a_prev);
        s.a_prev = std::move(s.a);
        s.a = std::move(a_next);
        s.psi_prev = std::move(s.psi);
        s.psi = std::move(psi_next);
        ++s.k;
    } catch (const SolveError& e) {
        throw SolveError("step " + std::to_string(s.k + 1) + ": " + e.what(), e.report());
    }
    if (charge_) charge_->record(s.time(), nodal_density(s.psi));
    last_report_ = rep;
    return rep;
}

Diagnostics Stepper::diagnostics(const FieldState& s) const
{
    Diagnostics d;
    d.k = s.k;
    d.t = s.time();
    d.maxwell = last_report_.maxwell;
    d.schrodinger = last_report_.schrodinger;

    const auto& psi = s.psi.coeffs;
    const auto mpsi = apply_real(scalar_mass_, psi);
    const auto kpsi = apply_real(scalar_stiffness_, psi);
    d.mass = herm_dot(psi, mpsi).real();
    d.psi_h1 = std::sqrt(std::max(0.0, d.mass + herm_dot(psi, kpsi).real()));

    if (cached_b_step_ != s.k) {
        VectorField abar(ctx_->vector_space());
        for (std::size_t i = 0; i < abar.coeffs.size(); ++i)
            abar.coeffs[i] = 0.5 * (s.a.coeffs[i] + s.a_prev.coeffs[i]);
        cached_b_ = assemble_B(*ctx_, abar);
        cached_b_step_ = s.k;
    }
    const auto bpsi = cached_b_ * std::span<const cplx>(psi);
    const cplx bform = herm_dot(psi, bpsi);
    d.energy_imag = bform.imag();

    const auto& a = s.a.coeffs;
    const auto& ap = s.a_prev.coeffs;
    std::vector<double> da(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) da[i] = (a[i] - ap[i]) / dt_;
    d.energy = 0.5 * bform.real() + 0.25 * quadratic(d_, a) + 0.25 * quadratic(d_, ap) +
               ctx_->v0() * d.mass + 0.5 * quadratic(vector_mass_, da);

    const double a_l2 = quadratic(vector_mass_, a);
    d.a_h1 = std::sqrt(std::max(0.0, a_l2 + quadratic(div_form_, a) + quadratic(curl_form_, a)));
    return d;
}

RunResult run(Stepper& stepper, int steps, const Observer& observer)
{
    RunResult result;
    FieldState s = stepper.initialize();
    result.history.reserve(steps + 1);
    result.history.push_back(stepper.diagnostics(s));
    if (observer) observer(s, result.history.back());
    for (int k = 0; k < steps; ++k) {
        stepper.advance(s);
        result.history.push_back(stepper.diagnostics(s));
        if (observer) observer(s, result.history.back());
    }
    result.final_state = std::move(s);
    return result;
}

} // namespace msfem
