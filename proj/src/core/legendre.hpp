#pragma once

namespace sldg::core {

/// P_m(x) on [-1,1], unnormalized (P_m(1) = 1).
double legendre(int m, double x);

/// d/dx P_m(x).
double legendre_deriv(int m, double x);

} // namespace sldg::core
