#pragma once

#include <vector>

#include "core/quadrature.hpp"

namespace sldg::core {

/// Modal Legendre basis on the reference cell [-1,1], with a Gauss-Legendre
/// rule of n_q points. Mass matrices are diagonal.
struct ModalBasis {
    int degree = 0; // k
    QuadRule quad;  // n_q points on [-1,1]

    // Tables at quadrature nodes: phi[m][q] = P_m(xi_q), dphi[m][q] = P_m'(xi_q).
    std::vector<std::vector<double>> phi;
    std::vector<std::vector<double>> dphi;
    // Endpoint traces: P_m(-1) = (-1)^m, P_m(+1) = 1.
    std::vector<double> left_trace;
    std::vector<double> right_trace;

    ModalBasis() = default;
    ModalBasis(int k, int n_q);

    int dof() const { return degree + 1; }

    /// Diagonal of the local mass matrix for a 1D cell of the given measure:
    /// entry m is cell_measure / (2m+1).
    std::vector<double> mass_diag(double cell_measure) const;

    /// Evaluate the modal expansion (coeffs of length k+1) at reference point xi.
    double eval(const double* coeffs, double xi) const;
};

/// Tensor-product basis P_a(xi) P_b(eta), 0 <= a,b <= k. Mode id m = a + (k+1)*b.
struct ModalBasis2D {
    ModalBasis b1; // shared 1D factor (also supplies the face rule)

    ModalBasis2D() = default;
    ModalBasis2D(int k, int n_q) : b1(k, n_q) {}

    int degree() const { return b1.degree; }
    int dof() const { return b1.dof() * b1.dof(); }
    int mode_a(int m) const { return m % b1.dof(); }
    int mode_b(int m) const { return m / b1.dof(); }

    /// Diagonal mass entries: area / ((2a+1)(2b+1)).
    std::vector<double> mass_diag(double area) const;

    double eval(const double* coeffs, double xi, double eta) const;
};

} // namespace sldg::core
