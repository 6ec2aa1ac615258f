#include "core/basis.hpp"

#include <stdexcept>

#include "core/legendre.hpp"

namespace sldg::core {

ModalBasis::ModalBasis(int k, int n_q) : degree(k), quad(gauss_legendre(n_q)) {
    if (k < 0) throw std::invalid_argument("ModalBasis: degree must be >= 0");
    const int nd = k + 1;
    phi.assign(nd, std::vector<double>(quad.size()));
    dphi.assign(nd, std::vector<double>(quad.size()));
    left_trace.resize(nd);
    right_trace.resize(nd);
    for (int m = 0; m < nd; ++m) {
        for (int q = 0; q < quad.size(); ++q) {
            phi[m][q] = legendre(m, quad.nodes[q]);
            dphi[m][q] = legendre_deriv(m, quad.nodes[q]);
        }
        left_trace[m] = (m % 2 == 0) ? 1.0 : -1.0;
        right_trace[m] = 1.0;
    }
}

std::vector<double> ModalBasis::mass_diag(double cell_measure) const {
    if (!(cell_measure > 0.0)) throw std::invalid_argument("mass_diag: cell_measure must be > 0");
    std::vector<double> d(dof());
    for (int m = 0; m < dof(); ++m) d[m] = cell_measure / (2.0 * m + 1.0);
    return d;
}

double ModalBasis::eval(const double* coeffs, double xi) const {
    double s = 0.0;
    for (int m = 0; m <= degree; ++m) s += coeffs[m] * legendre(m, xi);
    return s;
}

std::vector<double> ModalBasis2D::mass_diag(double area) const {
    if (!(area > 0.0)) throw std::invalid_argument("mass_diag: area must be > 0");
    std::vector<double> d(dof());
    for (int m = 0; m < dof(); ++m) {
        int a = mode_a(m), b = mode_b(m);
        d[m] = area / ((2.0 * a + 1.0) * (2.0 * b + 1.0));
    }
    return d;
}

double ModalBasis2D::eval(const double* coeffs, double xi, double eta) const {
    double s = 0.0;
    for (int m = 0; m < dof(); ++m)
        s += coeffs[m] * legendre(mode_a(m), xi) * legendre(mode_b(m), eta);
    return s;
}

} // namespace sldg::core
