#include "msfem/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace msfem {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// f(x) = prod_m f_m(x_m) with d[m][o] the o-th derivative of f_m at x_m.
struct Separable
{
    std::array<std::array<double, 3>, 3> d{};

    double value() const { return d[0][0] * d[1][0] * d[2][0]; }

    Vec3 gradient() const
    {
        return {d[0][1] * d[1][0] * d[2][0], d[0][0] * d[1][1] * d[2][0], d[0][0] * d[1][0] * d[2][1]};
    }

    Mat3 hessian() const
    {
        Mat3 h{};
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) {
                double p = 1.0;
                for (int m = 0; m < 3; ++m) {
                    int order = (m == j) + (m == l);
                    p *= d[m][order];
                }
                h[j][l] = p;
            }
        return h;
    }

    double laplacian() const
    {
        const Mat3 h = hessian();
        return h[0][0] + h[1][1] + h[2][2];
    }
};

// e^{s/5} s (1 - s)
Separable polynomial_part(const Point3& x)
{
    Separable s;
    for (int m = 0; m < 3; ++m) {
        const double v = x[m];
        const double e = std::exp(v / 5.0);
        const double q = v * (1.0 - v);
        s.d[m][0] = e * q;
        s.d[m][1] = e * (q / 5.0 + 1.0 - 2.0 * v);
        s.d[m][2] = e * (q / 25.0 + 2.0 * (1.0 - 2.0 * v) / 5.0 - 2.0);
    }
    return s;
}

// prod sin(k x_m), with cos(k x_c) in place of sin on axis `c` (c < 0: none)
Separable trig_part(const Point3& x, double k, int c)
{
    Separable s;
    for (int m = 0; m < 3; ++m) {
        const double sn = std::sin(k * x[m]);
        const double cs = std::cos(k * x[m]);
        if (m == c) {
            s.d[m] = {cs, -k * sn, -k * k * cs};
        } else {
            s.d[m] = {sn, k * cs, -k * k * sn};
        }
    }
    return s;
}

// Time factors of Psi = a(t) Q + b(t) S.
cplx coef_a(double t) { return 20.0 * std::exp(kI * t) * (1.0 + 3.0 * t * t); }
cplx coef_a_t(double t) { return 20.0 * std::exp(kI * t) * (kI * (1.0 + 3.0 * t * t) + 6.0 * t); }
cplx coef_b(double t) { return 5.0 * std::exp(kI * kPi * t); }
cplx coef_b_t(double t) { return 5.0 * kI * kPi * std::exp(kI * kPi * t); }

// A = sin(pi t) U + cos(pi t) W, U_i = trig(2pi, i), W_i = trig(pi, i).
double time_u(double t) { return std::sin(kPi * t); }
double time_w(double t) { return std::cos(kPi * t); }

} // namespace

double ExactSolution::div_a(const Point3& x, double t) const
{
    const Mat3 j = jacobian_a(x, t);
    return j[0][0] + j[1][1] + j[2][2];
}

Vec3 ExactSolution::curl_a(const Point3& x, double t) const
{
    const Mat3 j = jacobian_a(x, t);
    return {j[2][1] - j[1][2], j[0][2] - j[2][0], j[1][0] - j[0][1]};
}

cplx ExactSolution::schrodinger_source(const Point3& x, double t) const
{
    const cplx p = psi(x, t);
    const CVec3 g = grad_psi(x, t);
    const Vec3 av = a(x, t);
    const cplx a_dot_grad = av[0] * g[0] + av[1] * g[1] + av[2] * g[2];
    const double a2 = dot(av, av);
    return -kI * psi_t(x, t) +
           0.5 * (-laplacian_psi(x, t) + 2.0 * kI * a_dot_grad + kI * div_a(x, t) * p + a2 * p) + v0() * p;
}

Vec3 ExactSolution::maxwell_source(const Point3& x, double t) const
{
    const auto h = hessian_a(x, t);
    const cplx p = psi(x, t);
    const CVec3 g = grad_psi(x, t);
    const Vec3 av = a(x, t);
    const Vec3 att = a_tt(x, t);
    const double rho = std::norm(p);
    Vec3 out{};
    for (int j = 0; j < 3; ++j) {
        double grad_div = 0.0;
        for (int i = 0; i < 3; ++i) grad_div += h[i][j][i];
        const double lap = h[j][0][0] + h[j][1][1] + h[j][2][2];
        // curl curl A = grad div A - lap A
        const double curl_curl = grad_div - lap;
        const double current = -(std::conj(p) * g[j]).imag();
        out[j] = att[j] + curl_curl - gamma() * grad_div + current + rho * av[j];
    }
    return out;
}

cplx Example52Solution::psi(const Point3& x, double t) const
{
    return coef_a(t) * polynomial_part(x).value() + coef_b(t) * trig_part(x, 2.0 * kPi, -1).value();
}

CVec3 Example52Solution::grad_psi(const Point3& x, double t) const
{
    const Vec3 gq = polynomial_part(x).gradient();
    const Vec3 gs = trig_part(x, 2.0 * kPi, -1).gradient();
    const cplx a = coef_a(t);
    const cplx b = coef_b(t);
    return {a * gq[0] + b * gs[0], a * gq[1] + b * gs[1], a * gq[2] + b * gs[2]};
}

cplx Example52Solution::laplacian_psi(const Point3& x, double t) const
{
    return coef_a(t) * polynomial_part(x).laplacian() + coef_b(t) * trig_part(x, 2.0 * kPi, -1).laplacian();
}

cplx Example52Solution::psi_t(const Point3& x, double t) const
{
    return coef_a_t(t) * polynomial_part(x).value() + coef_b_t(t) * trig_part(x, 2.0 * kPi, -1).value();
}

Vec3 Example52Solution::a(const Point3& x, double t) const
{
    Vec3 out{};
    for (int i = 0; i < 3; ++i)
        out[i] = time_u(t) * trig_part(x, 2.0 * kPi, i).value() + time_w(t) * trig_part(x, kPi, i).value();
    return out;
}

Mat3 Example52Solution::jacobian_a(const Point3& x, double t) const
{
    Mat3 out{};
    for (int i = 0; i < 3; ++i) {
        const Vec3 gu = trig_part(x, 2.0 * kPi, i).gradient();
        const Vec3 gw = trig_part(x, kPi, i).gradient();
        for (int j = 0; j < 3; ++j) out[i][j] = time_u(t) * gu[j] + time_w(t) * gw[j];
    }
    return out;
}

std::array<Mat3, 3> Example52Solution::hessian_a(const Point3& x, double t) const
{
    std::array<Mat3, 3> out{};
    for (int i = 0; i < 3; ++i) {
        const Mat3 hu = trig_part(x, 2.0 * kPi, i).hessian();
        const Mat3 hw = trig_part(x, kPi, i).hessian();
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) out[i][j][l] = time_u(t) * hu[j][l] + time_w(t) * hw[j][l];
    }
    return out;
}

Vec3 Example52Solution::a_t(const Point3& x, double t) const
{
    Vec3 out{};
    for (int i = 0; i < 3; ++i)
        out[i] = kPi * std::cos(kPi * t) * trig_part(x, 2.0 * kPi, i).value() -
                 kPi * std::sin(kPi * t) * trig_part(x, kPi, i).value();
    return out;
}

Vec3 Example52Solution::a_tt(const Point3& x, double t) const { return -(kPi * kPi) * a(x, t); }

namespace {

// Fourth-order central differences.
template <class F>
auto fd_first(const F& f, double h)
{
    return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
}

template <class F>
auto fd_second(const F& f, double h)
{
    return (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h);
}

Point3 shifted(Point3 x, int axis, double d)
{
    x[axis] += d;
    return x;
}

} // namespace

SourceCheck check_sources(const ExactSolution& exact, int samples, double tolerance, double t_max,
                          std::uint64_t seed)
{
    constexpr double h = 1e-3;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> space(0.05, 0.95);
    std::uniform_real_distribution<double> time(0.05 * t_max, 0.95 * t_max);

    SourceCheck out;
    for (int s = 0; s < samples; ++s) {
        const Point3 x{space(rng), space(rng), space(rng)};
        const double t = time(rng);

        const cplx p = exact.psi(x, t);
        const Vec3 av = exact.a(x, t);
        const cplx p_t = fd_first([&](double d) { return exact.psi(x, t + d); }, h);
        CVec3 g{};
        cplx lap{};
        for (int m = 0; m < 3; ++m) {
            g[m] = fd_first([&](double d) { return exact.psi(shifted(x, m, d), t); }, h);
            lap += fd_second([&](double d) { return exact.psi(shifted(x, m, d), t); }, h);
        }
        auto div_at = [&](const Point3& y) {
            double dv = 0.0;
            for (int m = 0; m < 3; ++m) dv += fd_first([&](double d) { return exact.a(shifted(y, m, d), t)[m]; }, h);
            return dv;
        };
        const double div = div_at(x);

        const cplx a_dot_grad = av[0] * g[0] + av[1] * g[1] + av[2] * g[2];
        const cplx f_fd = -kI * p_t + 0.5 * (-lap + 2.0 * kI * a_dot_grad + kI * div * p + dot(av, av) * p) +
                          exact.v0() * p;
        const cplx f = exact.schrodinger_source(x, t);
        out.max_schrodinger_residual =
            std::max(out.max_schrodinger_residual, std::abs(f_fd - f) / std::max(std::abs(f), 1.0));

        const Vec3 g_exact = exact.maxwell_source(x, t);
        Vec3 g_fd{};
        for (int j = 0; j < 3; ++j) {
            const double a_tt = fd_second([&](double d) { return exact.a(x, t + d)[j]; }, h);
            const double grad_div = fd_first([&](double d) { return div_at(shifted(x, j, d)); }, h);
            double lap_a = 0.0;
            for (int m = 0; m < 3; ++m)
                lap_a += fd_second([&](double d) { return exact.a(shifted(x, m, d), t)[j]; }, h);
            const double current = -(std::conj(p) * g[j]).imag();
            g_fd[j] = a_tt + (grad_div - lap_a) - exact.gamma() * grad_div + current + std::norm(p) * av[j];
        }
        const double scale = std::max(norm(g_exact), 1.0);
        out.max_maxwell_residual = std::max(out.max_maxwell_residual, norm(g_fd - g_exact) / scale);
    }
    out.passed = out.max_schrodinger_residual <= tolerance && out.max_maxwell_residual <= tolerance;
    return out;
}

} // namespace msfem
