#include "core/legendre.hpp"

namespace sldg::core {

double legendre(int m, double x) {
    if (m == 0) return 1.0;
    if (m == 1) return x;
    double p0 = 1.0, p1 = x;
    for (int n = 2; n <= m; ++n) {
        double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double legendre_deriv(int m, double x) {
    if (m == 0) return 0.0;
    if (m == 1) return 1.0;
    // (1-x^2) P_m' = m (P_{m-1} - x P_m); endpoints via known closed form.
    if (x == 1.0 || x == -1.0) {
        double sign = (x > 0.0) ? 1.0 : ((m % 2 == 0) ? -1.0 : 1.0);
        return sign * 0.5 * m * (m + 1.0);
    }
    double pm = legendre(m, x), pm1 = legendre(m - 1, x);
    return m * (pm1 - x * pm) / (1.0 - x * x);
}

} // namespace sldg::core
