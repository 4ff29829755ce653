#include "msfem/solvers.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace msfem {

namespace {

using cx = std::complex<double>;

double norm2(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm2(std::span<const cx> v)
{
    double s = 0.0;
    for (const cx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

/// sum conj(a_i) b_i
cx inner(std::span<const cx> a, std::span<const cx> b)
{
    cx s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

template <class T>
double residual(const CsrMatrix<T>& a, std::span<const T> b, std::span<const T> x, std::vector<T>& r)
{
    a.multiply(x, std::span<T>(r));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return norm2(std::span<const T>(r));
}

template <class T>
std::vector<T> inverse_diagonal(const CsrMatrix<T>& a)
{
    auto d = a.diagonal();
    for (auto& v : d) v = (v == T{}) ? T{1} : T{1} / v;
    return d;
}

int iteration_cap(int n, const SolverOptions& o)
{
    return std::max(1, static_cast<int>(std::ceil(o.max_iter_factor * n)));
}

[[noreturn]] void fail(const char* method, const SolveReport& rep)
{
    throw SolveError(std::string(method) + " did not converge: " + std::to_string(rep.iterations) +
                         " iterations, relative residual " + std::to_string(rep.relative_residual),
                     rep);
}

} // namespace

SolveReport solve_spd(const RealMatrix& a, std::span<const double> b, std::span<double> x,
                      const SolverOptions& options)
{
    const int n = a.rows();
    SolveReport rep;
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        rep.converged = true;
        return rep;
    }
    const auto dinv = inverse_diagonal(a);
    std::vector<double> r(n), z(n), p(n), q(n);
    double res = residual<double>(a, b, x, r);
    const int cap = iteration_cap(n, options);
    const double target = options.rtol * bnorm;

    while (res > target && rep.iterations < cap) {
        // (Re)start from the true residual.
        for (int i = 0; i < n; ++i) z[i] = dinv[i] * r[i];
        p = z;
        double rz = 0.0;
        for (int i = 0; i < n; ++i) rz += r[i] * z[i];
        double rnorm = res;
        while (rnorm > target && rep.iterations < cap) {
            a.multiply(std::span<const double>(p), std::span<double>(q));
            double pq = 0.0;
            for (int i = 0; i < n; ++i) pq += p[i] * q[i];
            if (pq <= 0.0) break;
            const double alpha = rz / pq;
            double rr = 0.0;
            for (int i = 0; i < n; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * q[i];
                rr += r[i] * r[i];
            }
            rnorm = std::sqrt(rr);
            ++rep.iterations;
            double rz_new = 0.0;
            for (int i = 0; i < n; ++i) {
                z[i] = dinv[i] * r[i];
                rz_new += r[i] * z[i];
            }
            const double beta = rz_new / rz;
            rz = rz_new;
            for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        }
        const double prev = res;
        res = residual<double>(a, b, x, r);
        if (rnorm > target && res >= prev) break; // no progress (indefinite or stagnated)
    }
    rep.relative_residual = res / bnorm;
    rep.converged = rep.relative_residual <= options.rtol;
    if (!rep.converged) fail("conjugate gradients", rep);
    return rep;
}

Solution<double> solve_spd(const RealMatrix& a, std::span<const double> b, const SolverOptions& options)
{
    Solution<double> s;
    s.x.assign(a.rows(), 0.0);
    s.report = solve_spd(a, b, s.x, options);
    return s;
}

SolveReport solve_complex(const ComplexMatrix& a, std::span<const cx> b, std::span<cx> x,
                          const SolverOptions& options)
{
    const int n = a.rows();
    SolveReport rep;
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), cx{});
        rep.converged = true;
        return rep;
    }
    const auto dinv = inverse_diagonal(a);
    std::vector<cx> r(n), rhat(n), p(n), v(n), y(n), s(n), z(n), t(n);
    double res = residual<cx>(a, b, x, r);
    const int cap = iteration_cap(n, options);
    const double target = options.rtol * bnorm;
    constexpr double kBreakdown = 1e-300;

    int stalls = 0;
    while (res > target && rep.iterations < cap && stalls < 3) {
        rhat = r;
        cx rho{1.0}, alpha{1.0}, omega{1.0};
        std::fill(p.begin(), p.end(), cx{});
        std::fill(v.begin(), v.end(), cx{});
        double rnorm = res;
        while (rnorm > target && rep.iterations < cap) {
            const cx rho_new = inner(rhat, r);
            if (std::abs(rho_new) < kBreakdown) break;
            const cx beta = (rho_new / rho) * (alpha / omega);
            rho = rho_new;
            for (int i = 0; i < n; ++i) {
                p[i] = r[i] + beta * (p[i] - omega * v[i]);
                y[i] = dinv[i] * p[i];
            }
            a.multiply(std::span<const cx>(y), std::span<cx>(v));
            const cx rv = inner(rhat, v);
            if (std::abs(rv) < kBreakdown) break;
            alpha = rho / rv;
            for (int i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
            ++rep.iterations;
            if (norm2(std::span<const cx>(s)) <= target) {
                for (int i = 0; i < n; ++i) x[i] += alpha * y[i];
                rnorm = 0.0;
                break;
            }
            for (int i = 0; i < n; ++i) z[i] = dinv[i] * s[i];
            a.multiply(std::span<const cx>(z), std::span<cx>(t));
            const double tt = std::real(inner(t, t));
            if (tt == 0.0) break;
            omega = inner(t, s) / tt;
            for (int i = 0; i < n; ++i) {
                x[i] += alpha * y[i] + omega * z[i];
                r[i] = s[i] - omega * t[i];
            }
            rnorm = norm2(std::span<const cx>(r));
            if (std::abs(omega) < kBreakdown) break;
        }
        const double prev = res;
        res = residual<cx>(a, b, x, r);
        stalls = (res < prev) ? 0 : stalls + 1;
    }
    rep.relative_residual = res / bnorm;
    rep.converged = rep.relative_residual <= options.rtol;
    if (!rep.converged) fail("BiCGStab", rep);
    return rep;
}

Solution<cx> solve_complex(const ComplexMatrix& a, std::span<const cx> b, const SolverOptions& options)
{
    Solution<cx> s;
    s.x.assign(a.rows(), cx{});
    s.report = solve_complex(a, b, s.x, options);
    return s;
}

namespace {

template <class T>
std::vector<T> dense_lu(const CsrMatrix<T>& a, std::span<const T> b)
{
    const int n = a.rows();
    if (n > kDenseSolveLimit)
        throw std::invalid_argument("dense solve limited to n <= " + std::to_string(kDenseSolveLimit));
    using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
    Mat dense = Mat::Zero(n, n);
    const auto rp = a.pattern().row_ptr();
    const auto cols = a.pattern().cols();
    for (int r = 0; r < n; ++r)
        for (int p = rp[r]; p < rp[r + 1]; ++p) dense(r, cols[p]) = a.values()[p];
    Vec rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = b[i];
    const Vec sol = dense.partialPivLu().solve(rhs);
    return std::vector<T>(sol.data(), sol.data() + n);
}

} // namespace

std::vector<double> solve_dense(const RealMatrix& a, std::span<const double> b) { return dense_lu(a, b); }

std::vector<cx> solve_dense(const ComplexMatrix& a, std::span<const cx> b) { return dense_lu(a, b); }

} // namespace msfem
