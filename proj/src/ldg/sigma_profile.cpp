#include "ldg/sigma_profile.hpp"

#include <cmath>

namespace sldg::ldg {

double SigmaProfile::sigma_sigmapp_cell_integral(const core::Grid1D& grid, const core::ModalBasis& basis,
                                                 int j) const {
    const double dx = grid.dx();
    const double xc = grid.cell_center(j);
    double s = 0.0;
    for (int q = 0; q < basis.quad.size(); ++q) {
        const double x = xc + 0.5 * dx * basis.quad.nodes[q];
        s += basis.quad.weights[q] * 0.5 * dx * sigma_sigmapp(x);
    }
    return s;
}

double SigmaProfile::consistency_residual(double x_lo, double x_hi, int n_samples) const {
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (n_samples - 1.0);
        worst = std::max(worst, std::abs(s2p(x) - 2.0 * sigma(x) * dsigma(x)));
    }
    return worst;
}

SigmaProfile SigmaProfile::constant(double c) {
    SigmaProfile s;
    s.sigma = [c](double) { return c; };
    s.dsigma = [](double) { return 0.0; };
    s.d2sigma = [](double) { return 0.0; };
    return s;
}

SigmaProfile SigmaProfile::linear(double a, double b) {
    SigmaProfile s;
    s.sigma = [a, b](double x) { return a * x + b; };
    s.dsigma = [a](double) { return a; };
    s.d2sigma = [](double) { return 0.0; };
    return s;
}

SigmaProfile SigmaProfile::quadratic(double a, double b, double c) {
    SigmaProfile s;
    s.sigma = [a, b, c](double x) { return (a * x + b) * x + c; };
    s.dsigma = [a, b](double x) { return 2.0 * a * x + b; };
    s.d2sigma = [a](double) { return 2.0 * a; };
    return s;
}

} // namespace sldg::ldg
