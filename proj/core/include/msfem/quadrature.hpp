#pragma once

#include "msfem/geometry.hpp"

#include <vector>

namespace msfem {

/// Quadrature on the reference tetrahedron; weights sum to 1/6.
struct QuadratureRule
{
    int degree = 0;
    std::vector<Point3> points;
    std::vector<double> weights;

    int size() const { return static_cast<int>(points.size()); }
};

inline constexpr int kMaxQuadratureDegree = 6;

/// Rule exact for all polynomials of total degree <= `degree`.
///
/// Collapsed-coordinate (Stroud conical product) rules built from
/// Gauss-Jacobi points, so every weight is positive. Degree 0 and 1 give the
/// one-point centroid rule. Throws std::invalid_argument outside [0, 6].
const QuadratureRule& quadrature_for(int degree);

/// Gauss-Jacobi rule on [0,1] for the weight (1-s)^alpha, n points.
void gauss_jacobi_unit(int n, int alpha, std::vector<double>& points, std::vector<double>& weights);

} // namespace msfem
