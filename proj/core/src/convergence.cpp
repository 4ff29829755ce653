#include "msfem/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace msfem {

Problem manufactured_problem(const ExactSolution& exact, std::string name)
{
    Problem p;
    p.name = std::move(name);
    const ExactSolution* e = &exact;
    p.psi0 = [e](const Point3& x) { return e->psi(x, 0.0); };
    p.a0 = [e](const Point3& x) { return e->a(x, 0.0); };
    p.a1 = [e](const Point3& x) { return e->a_t(x, 0.0); };
    p.f = [e](const Point3& x, double t) { return e->schrodinger_source(x, t); };
    p.g = [e](const Point3& x, double t) { return e->maxwell_source(x, t); };
    return p;
}

double empirical_order(double e_coarse, double e_fine, double h_coarse, double h_fine)
{
    return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

double ConvergenceTable::eoc(std::size_t grid_index, std::size_t time_index, double ErrorReport::*norm) const
{
    if (grid_index == 0 || grid_index >= grid.size()) throw std::out_of_range("eoc: no coarser level");
    const ConvergenceRow& coarse = row(grid_index - 1, time_index);
    const ConvergenceRow& fine = row(grid_index, time_index);
    return empirical_order(coarse.errors.*norm, fine.errors.*norm, coarse.h, fine.h);
}

TimeGrid convergence_time_grid(double h, TimeStepRule rule, double final_time,
                               const std::vector<double>& report_times)
{
    const double requested = rule == TimeStepRule::MeshSize ? h : std::sqrt(h);
    if (!report_times.empty()) {
        const double base = report_times.front();
        bool aligned = base > 0.0;
        auto multiple = [&](double v) {
            const double q = v / base;
            return std::abs(q - std::round(q)) < 1e-9 * std::max(1.0, q);
        };
        for (double t : report_times) aligned = aligned && multiple(t);
        aligned = aligned && multiple(final_time);
        if (aligned) {
            const TimeGrid g = effective_time_grid(base, requested);
            return {g.dt, static_cast<int>(std::lround(final_time / g.dt))};
        }
    }
    return effective_time_grid(final_time, requested);
}

ConvergenceTable convergence_study(const ConvergenceOptions& o)
{
    if (o.grid.size() < 2) throw std::invalid_argument("convergence study needs at least two grid levels");
    for (double t : o.report_times)
        if (!(t > 0.0) || t > o.final_time * (1.0 + 1e-12))
            throw std::invalid_argument("report times must lie in (0, T]");

    const Example52Solution default_exact(o.gamma, o.v0);
    const ExactSolution& exact = o.exact ? *o.exact : default_exact;
    const SourceCheck gate = check_sources(exact, 20, 1e-4, o.final_time);
    if (!gate.passed) {
        char msg[200];
        std::snprintf(msg, sizeof msg,
                      "manufactured sources failed the residual check (f: %.3e, g: %.3e); refusing to run",
                      gate.max_schrodinger_residual, gate.max_maxwell_residual);
        throw std::runtime_error(msg);
    }

    ConvergenceTable table;
    table.degree = o.degree;
    table.grid = o.grid;
    table.report_times = o.report_times;
    const Problem problem = manufactured_problem(exact, "example52");

    for (int m : o.grid) {
        const Mesh mesh = Mesh::unit_cube(m);
        const ScalarSpace ss(mesh, o.degree);
        const VectorSpace vs(ss);
        const FormContext ctx(ss, vs, o.gamma, o.v0);
        const double h = 1.0 / m;

        if (o.interpolation_only) {
            for (double t : o.report_times) {
                const ScalarField psi = interpolate_scalar(ss, [&](const Point3& x) { return exact.psi(x, t); });
                const VectorField a = interpolate_vector(vs, [&](const Point3& x) { return exact.a(x, t); });
                table.rows.push_back({m, h, 0.0, 0, compute_errors(ctx, psi, a, exact, t)});
            }
            continue;
        }

        const TimeGrid grid = convergence_time_grid(h, o.rule, o.final_time, o.report_times);
        if (o.log) {
            char msg[160];
            std::snprintf(msg, sizeof msg, "M=%d r=%d dofs=%d+%d dt=%.6g steps=%d", m, o.degree, ss.num_dofs(),
                          vs.num_dofs(), grid.dt, grid.steps);
            o.log(msg);
        }
        Stepper stepper(ctx, problem, grid.dt, o.final_time, o.solver);
        FieldState s = stepper.initialize();
        std::size_t next = 0;
        while (next < o.report_times.size()) {
            const double target = o.report_times[next];
            if (std::abs(s.time() - target) <= 1e-9 * o.final_time) {
                table.rows.push_back({m, h, grid.dt, s.k, compute_errors(ctx, s.psi, s.a, exact, s.time())});
                ++next;
                continue;
            }
            if (s.k >= grid.steps) throw std::logic_error("report time is not a step time");
            stepper.advance(s);
        }
    }
    return table;
}

namespace {

void put(std::ostream& out, double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    out << buf;
}

} // namespace

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table)
{
    out << "M,h,dt,t,errA_L2,errA_div,errA_curl,errA_H1,errPsi_L2,errPsi_H1semi,errPsi_H1,"
           "eocA_L2,eocA_H1,eocPsi_L2,eocPsi_H1\n";
    static constexpr double ErrorReport::*kEoc[] = {&ErrorReport::a_l2, &ErrorReport::a_h1, &ErrorReport::psi_l2,
                                                    &ErrorReport::psi_h1};
    for (std::size_t g = 0; g < table.grid.size(); ++g)
        for (std::size_t r = 0; r < table.report_times.size(); ++r) {
            const ConvergenceRow& row = table.row(g, r);
            const ErrorReport& e = row.errors;
            out << row.m;
            for (double v : {row.h, row.dt, e.t, e.a_l2, e.a_div, e.a_curl, e.a_h1, e.psi_l2, e.psi_h1semi, e.psi_h1}) {
                out << ',';
                put(out, v);
            }
            for (auto norm : kEoc) {
                out << ',';
                if (g > 0) put(out, table.eoc(g, r, norm));
            }
            out << '\n';
        }
}

} // namespace msfem
