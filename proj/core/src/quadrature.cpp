#include "msfem/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace msfem {

void gauss_jacobi_unit(int n, int alpha, std::vector<double>& points, std::vector<double>& weights)
{
    // Golub-Welsch on the Jacobi recurrence for (1-x)^alpha on [-1,1].
    const double a = alpha;
    const double b = 0.0;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        jac(k, k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n) {
            const double m = k + 1.0;
            const double t = 2.0 * m + a + b;
            const double off =
                std::sqrt(4.0 * m * (m + a) * (m + b) * (m + a + b) / (t * t * (t + 1.0) * (t - 1.0)));
            jac(k, k + 1) = off;
            jac(k + 1, k) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
    // integral of (1-x)^alpha over [-1,1]
    const double mu0 = std::pow(2.0, a + 1.0) / (a + 1.0);
    points.resize(n);
    weights.resize(n);
    for (int k = 0; k < n; ++k) {
        const double x = eig.eigenvalues()(k);
        const double v0 = eig.eigenvectors()(0, k);
        points[k] = 0.5 * (x + 1.0);
        weights[k] = mu0 * v0 * v0 / std::pow(2.0, a + 1.0);
    }
}

namespace {

QuadratureRule build_conical_rule(int degree)
{
    QuadratureRule rule;
    rule.degree = degree;
    const int n = std::max(1, (degree + 2) / 2);
    std::vector<double> pa, wa, pb, wb, pc, wc;
    gauss_jacobi_unit(n, 0, pa, wa);
    gauss_jacobi_unit(n, 1, pb, wb);
    gauss_jacobi_unit(n, 2, pc, wc);
    // x = a (1-b)(1-c), y = b (1-c), z = c; Jacobian (1-b)(1-c)^2 is in the weights.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double c = pc[k];
                const double b = pb[j];
                const double a = pa[i];
                rule.points.push_back({a * (1.0 - b) * (1.0 - c), b * (1.0 - c), c});
                rule.weights.push_back(wa[i] * wb[j] * wc[k]);
            }
    return rule;
}

} // namespace

const QuadratureRule& quadrature_for(int degree)
{
    if (degree < 0 || degree > kMaxQuadratureDegree)
        throw std::invalid_argument("quadrature degree " + std::to_string(degree) +
                                    " unsupported (0.." + std::to_string(kMaxQuadratureDegree) + ")");
    static std::array<QuadratureRule, kMaxQuadratureDegree + 1> rules;
    static std::once_flag once;
    std::call_once(once, [] {
        for (int d = 0; d <= kMaxQuadratureDegree; ++d) rules[d] = build_conical_rule(d);
    });
    return rules[degree];
}

} // namespace msfem
