#pragma once

#include "msfem/error_norms.hpp"
#include "msfem/manufactured.hpp"
#include "msfem/solvers.hpp"
#include "msfem/stepper.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace msfem {

/// Initial data and sources of a manufactured problem: Psi_0, A_0, A_t(0), f and g.
Problem manufactured_problem(const ExactSolution& exact, std::string name = "manufactured");

enum class TimeStepRule
{
    MeshSize,     ///< dt = h
    SqrtMeshSize, ///< dt = h^(1/2)
};

struct ConvergenceOptions
{
    int degree = 2;
    std::vector<int> grid{4, 8, 16};
    TimeStepRule rule = TimeStepRule::MeshSize;
    double final_time = 4.0;
    std::vector<double> report_times{1.0, 2.0, 3.0, 4.0};
    double gamma = 1.0;
    double v0 = 5.0;
    SolverOptions solver;
    /// Measure interpolation errors only, without time stepping.
    bool interpolation_only = false;
    /// Solution to test against; null selects Example52Solution(gamma, v0).
    const ExactSolution* exact = nullptr;
    std::function<void(const std::string&)> log;
};

struct ConvergenceRow
{
    int m = 0;
    double h = 0.0;
    double dt = 0.0;
    int steps = 0;
    ErrorReport errors;
};

struct ConvergenceTable
{
    int degree = 0;
    std::vector<int> grid;
    std::vector<double> report_times;
    /// Grid-major: rows[g * report_times.size() + r].
    std::vector<ConvergenceRow> rows;

    const ConvergenceRow& row(std::size_t grid_index, std::size_t time_index) const
    {
        return rows[grid_index * report_times.size() + time_index];
    }

    /// EOC between grid levels g-1 and g for one norm at one report time.
    double eoc(std::size_t grid_index, std::size_t time_index, double ErrorReport::*norm) const;
};

/// log(e_coarse / e_fine) / log(h_coarse / h_fine)
double empirical_order(double e_coarse, double e_fine, double h_coarse, double h_fine);

/// Requested dt for mesh size h under `rule`, adjusted so every report time
/// is a step time: the ceil rule is applied to the report spacing when the
/// report times are multiples of the first one, otherwise to the final time.
TimeGrid convergence_time_grid(double h, TimeStepRule rule, double final_time,
                               const std::vector<double>& report_times);

/// Runs the manufactured-solution study over `options.grid`.
/// Throws std::runtime_error if the manufactured-source check fails, and
/// std::invalid_argument for fewer than two grid levels.
ConvergenceTable convergence_study(const ConvergenceOptions& options);

/// CSV with 17 significant digits; EOC columns are empty on the coarsest level.
void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);

} // namespace msfem
