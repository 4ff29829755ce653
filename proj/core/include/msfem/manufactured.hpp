#pragma once

#include "msfem/geometry.hpp"

#include <array>
#include <cstdint>

namespace msfem {

/// Closed-form (Psi, A) with hand-coded derivatives. The sources f and g are
/// obtained by applying the strong operators
///   -i Psi_t + 1/2 (i grad + A)^2 Psi + V0 Psi = f,
///   A_tt + curl curl A - gamma grad div A + (i/2)(Psi* grad Psi - Psi grad Psi*) + |Psi|^2 A = g
/// to the stored derivatives.
class ExactSolution
{
public:
    ExactSolution(double gamma, double v0) : gamma_(gamma), v0_(v0) {}
    virtual ~ExactSolution() = default;

    virtual cplx psi(const Point3& x, double t) const = 0;
    virtual CVec3 grad_psi(const Point3& x, double t) const = 0;
    virtual cplx laplacian_psi(const Point3& x, double t) const = 0;
    virtual cplx psi_t(const Point3& x, double t) const = 0;

    virtual Vec3 a(const Point3& x, double t) const = 0;
    /// jacobian[i][j] = d A_i / d x_j
    virtual Mat3 jacobian_a(const Point3& x, double t) const = 0;
    /// hessian[i] = second derivatives of A_i
    virtual std::array<Mat3, 3> hessian_a(const Point3& x, double t) const = 0;
    virtual Vec3 a_t(const Point3& x, double t) const = 0;
    virtual Vec3 a_tt(const Point3& x, double t) const = 0;

    double gamma() const { return gamma_; }
    double v0() const { return v0_; }

    double div_a(const Point3& x, double t) const;
    Vec3 curl_a(const Point3& x, double t) const;

    cplx schrodinger_source(const Point3& x, double t) const;
    Vec3 maxwell_source(const Point3& x, double t) const;

private:
    double gamma_;
    double v0_;
};

/// Psi = 20 e^{it}(1+3t^2) exp((x1+x2+x3)/5) prod x_i(1-x_i) + 5 e^{i pi t} prod sin(2 pi x_i),
/// A   = sin(pi t) (cos(2pi x1) sin(2pi x2) sin(2pi x3), ...) + cos(pi t) (cos(pi x1) sin(pi x2) sin(pi x3), ...).
/// Defaults gamma = 1, V0 = 5, T = 4.
class Example52Solution final : public ExactSolution
{
public:
    explicit Example52Solution(double gamma = 1.0, double v0 = 5.0) : ExactSolution(gamma, v0) {}

    static constexpr double kFinalTime = 4.0;

    cplx psi(const Point3& x, double t) const override;
    CVec3 grad_psi(const Point3& x, double t) const override;
    cplx laplacian_psi(const Point3& x, double t) const override;
    cplx psi_t(const Point3& x, double t) const override;

    Vec3 a(const Point3& x, double t) const override;
    Mat3 jacobian_a(const Point3& x, double t) const override;
    std::array<Mat3, 3> hessian_a(const Point3& x, double t) const override;
    Vec3 a_t(const Point3& x, double t) const override;
    Vec3 a_tt(const Point3& x, double t) const override;
};

struct SourceCheck
{
    double max_schrodinger_residual = 0.0; ///< relative
    double max_maxwell_residual = 0.0;     ///< relative
    bool passed = false;
};

/// Compares the stored sources against the strong-form residual computed
/// from finite differences of Psi and A values alone, at `samples` random
/// (x, t) in (0,1)^3 x (0, t_max).
SourceCheck check_sources(const ExactSolution& exact, int samples, double tolerance, double t_max,
                          std::uint64_t seed = 20240531);

} // namespace msfem
