#pragma once

#include <vector>

namespace sldg::core {

/// Gauss-Legendre rule on the reference interval [-1,1].
/// Exact for polynomials of degree <= 2n-1.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

QuadRule gauss_legendre(int n);

} // namespace sldg::core
