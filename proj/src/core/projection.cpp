#include "core/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "core/legendre.hpp"

namespace sldg::core {

DGCoefficients project_initial(const std::function<double(double)>& u0, const Grid1D& grid,
                               const ModalBasis& basis) {
    DGCoefficients u(basis.dof(), grid.n_cells);
    const double dx = grid.dx();
    for (int j = 0; j < grid.n_cells; ++j) {
        const double xc = grid.cell_center(j);
        for (int q = 0; q < basis.quad.size(); ++q) {
            const double x = xc + 0.5 * dx * basis.quad.nodes[q];
            const double v = u0(x);
            if (!std::isfinite(v)) throw std::invalid_argument("project_initial: non-finite sample of u0");
            const double wv = basis.quad.weights[q] * v * 0.5 * dx;
            for (int m = 0; m < basis.dof(); ++m) u(m, j) += wv * basis.phi[m][q];
        }
        // Divide by the diagonal mass entries dx/(2m+1).
        for (int m = 0; m < basis.dof(); ++m) u(m, j) *= (2.0 * m + 1.0) / dx;
    }
    return u;
}

DGCoefficients project_initial_2d(const std::function<double(double, double)>& u0, const QuadMesh2D& mesh,
                                  const ModalBasis2D& basis) {
    DGCoefficients u(basis.dof(), mesh.n_cells());
    const double dx = mesh.dx(), dy = mesh.dy();
    const auto& q1 = basis.b1.quad;
    for (int cj = 0; cj < mesh.ny; ++cj) {
        for (int ci = 0; ci < mesh.nx; ++ci) {
            const int cell = mesh.cell_id(ci, cj);
            const double xc = mesh.cell_x(ci), yc = mesh.cell_y(cj);
            for (int qy = 0; qy < q1.size(); ++qy) {
                for (int qx = 0; qx < q1.size(); ++qx) {
                    const double x = xc + 0.5 * dx * q1.nodes[qx];
                    const double y = yc + 0.5 * dy * q1.nodes[qy];
                    const double v = u0(x, y);
                    if (!std::isfinite(v))
                        throw std::invalid_argument("project_initial_2d: non-finite sample of u0");
                    const double w = q1.weights[qx] * q1.weights[qy] * 0.25 * dx * dy * v;
                    for (int m = 0; m < basis.dof(); ++m) {
                        int a = basis.mode_a(m), b = basis.mode_b(m);
                        u(m, cell) += w * basis.b1.phi[a][qx] * basis.b1.phi[b][qy];
                    }
                }
            }
            for (int m = 0; m < basis.dof(); ++m) {
                int a = basis.mode_a(m), b = basis.mode_b(m);
                u(m, cell) *= (2.0 * a + 1.0) * (2.0 * b + 1.0) / (dx * dy);
            }
        }
    }
    return u;
}

double l2_inner(const DGCoefficients& u, const DGCoefficients& v, const Grid1D& grid, const ModalBasis& basis) {
    const double dx = grid.dx();
    double s = 0.0;
    for (int j = 0; j < grid.n_cells; ++j)
        for (int m = 0; m < basis.dof(); ++m) s += u(m, j) * v(m, j) * dx / (2.0 * m + 1.0);
    return s;
}

double l2_norm(const DGCoefficients& u, const Grid1D& grid, const ModalBasis& basis) {
    return std::sqrt(l2_inner(u, u, grid, basis));
}

double l2_inner_2d(const DGCoefficients& u, const DGCoefficients& v, const QuadMesh2D& mesh,
                   const ModalBasis2D& basis) {
    const double area = mesh.dx() * mesh.dy();
    double s = 0.0;
    for (int j = 0; j < mesh.n_cells(); ++j)
        for (int m = 0; m < basis.dof(); ++m) {
            int a = basis.mode_a(m), b = basis.mode_b(m);
            s += u(m, j) * v(m, j) * area / ((2.0 * a + 1.0) * (2.0 * b + 1.0));
        }
    return s;
}

double l2_norm_2d(const DGCoefficients& u, const QuadMesh2D& mesh, const ModalBasis2D& basis) {
    return std::sqrt(l2_inner_2d(u, u, mesh, basis));
}

double eval_field(const DGCoefficients& u, const Grid1D& grid, const ModalBasis& basis, double x) {
    int j = static_cast<int>((x - grid.x_min) / grid.dx());
    if (j < 0) j = 0;
    if (j >= grid.n_cells) j = grid.n_cells - 1;
    const double xi = 2.0 * (x - grid.cell_center(j)) / grid.dx();
    return basis.eval(u.col(j), xi);
}

double l2_error(const DGCoefficients& u, const Grid1D& grid, const ModalBasis& basis,
                const std::function<double(double)>& exact, int n_extra) {
    QuadRule rule = gauss_legendre(basis.quad.size() + n_extra);
    const double dx = grid.dx();
    double s = 0.0;
    for (int j = 0; j < grid.n_cells; ++j) {
        const double xc = grid.cell_center(j);
        for (int q = 0; q < rule.size(); ++q) {
            const double xi = rule.nodes[q];
            const double x = xc + 0.5 * dx * xi;
            const double d = basis.eval(u.col(j), xi) - exact(x);
            s += rule.weights[q] * d * d * 0.5 * dx;
        }
    }
    return std::sqrt(s);
}

} // namespace sldg::core
