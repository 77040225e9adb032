#pragma once

#include <vector>

#include "dgns/core.hpp"

namespace dgns {

/// Quadrature rule on the reference triangle {(r,s): r,s >= 0, r+s <= 1}.
/// Weights sum to the reference measure 1/2. All tabulated rules are
/// symmetric with strictly positive weights; the classical negative-weight
/// rules (e.g. the degree-3 4-point rule) are never used.
struct TriangleRule {
    int degree = 0;  // exact for all polynomials of total degree <= degree
    std::vector<Vec2> points;
    std::vector<double> weights;
    int size() const { return static_cast<int>(points.size()); }
};

/// Minimal tabulated positive symmetric rule with exactness >= min_degree.
/// Degrees above 9 fall back to a symmetrized tensor rule on the collapsed
/// square (positive, exact, more points).
TriangleRule triangle_rule(int min_degree);

/// Minimum volume weight normalized so the weights sum to one.
double min_quadrature_weight(const TriangleRule& rule);

/// Gauss-Legendre rule on [0,1]; exact for degree <= 2n-1, weights sum to 1.
struct EdgeRule {
    std::vector<double> points;
    std::vector<double> weights;
    int size() const { return static_cast<int>(points.size()); }
};

EdgeRule gauss_legendre(int n);

}  // namespace dgns
