#pragma once

#include "msfem/sparse.hpp"

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace msfem {

struct SolverOptions
{
    double rtol = 1e-10;
    /// Iteration cap is max_iter_factor * n.
    double max_iter_factor = 10.0;
};

struct SolveReport
{
    int iterations = 0;
    /// ||b - A x|| / ||b||, recomputed from scratch after the iteration stops.
    double relative_residual = 0.0;
    bool converged = false;
};

class SolveError : public std::runtime_error
{
public:
    SolveError(const std::string& what, SolveReport report) : std::runtime_error(what), report_(report) {}
    const SolveReport& report() const { return report_; }

private:
    SolveReport report_;
};

template <class T>
struct Solution
{
    std::vector<T> x;
    SolveReport report;
};

/// Jacobi-preconditioned conjugate gradients for a real SPD matrix.
/// `x` holds the initial guess on entry. Throws SolveError on non-convergence.
SolveReport solve_spd(const RealMatrix& a, std::span<const double> b, std::span<double> x,
                      const SolverOptions& options = {});
Solution<double> solve_spd(const RealMatrix& a, std::span<const double> b, const SolverOptions& options = {});

/// Jacobi-preconditioned BiCGStab for general complex matrices, including
/// the non-Hermitian, non-symmetric Schrodinger step system.
SolveReport solve_complex(const ComplexMatrix& a, std::span<const std::complex<double>> b,
                          std::span<std::complex<double>> x, const SolverOptions& options = {});
Solution<std::complex<double>> solve_complex(const ComplexMatrix& a, std::span<const std::complex<double>> b,
                                             const SolverOptions& options = {});

inline constexpr int kDenseSolveLimit = 2000;

/// Dense LU fallback (n <= kDenseSolveLimit), used as an oracle.
std::vector<double> solve_dense(const RealMatrix& a, std::span<const double> b);
std::vector<std::complex<double>> solve_dense(const ComplexMatrix& a, std::span<const std::complex<double>> b);

} // namespace msfem
