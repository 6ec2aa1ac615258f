#pragma once

#include <stdexcept>

namespace sldg::core {

enum class Boundary { Periodic, Extrapolate };

/// Uniform 1D grid with cells I_j = [x_min + j*dx, x_min + (j+1)*dx], j = 0..n_cells-1.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_cells = 1;
    Boundary boundary = Boundary::Periodic;

    Grid1D() = default;
    Grid1D(double a, double b, int n, Boundary bc) : x_min(a), x_max(b), n_cells(n), boundary(bc) {
        if (n <= 0 || !(b > a)) throw std::invalid_argument("Grid1D: need x_max > x_min and n_cells > 0");
    }

    double dx() const { return (x_max - x_min) / n_cells; }
    double interface_x(int i) const { return x_min + i * dx(); }
    double cell_center(int j) const { return x_min + (j + 0.5) * dx(); }

    /// Wrap/clamp a cell index according to the boundary rule.
    int neighbor(int j) const {
        if (j >= 0 && j < n_cells) return j;
        if (boundary == Boundary::Periodic) return ((j % n_cells) + n_cells) % n_cells;
        return j < 0 ? 0 : n_cells - 1;
    }
};

/// Structured axis-aligned quadrilateral mesh. Cell (i,j) has id i + nx*j.
struct QuadMesh2D {
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    int nx = 1, ny = 1;
    Boundary boundary = Boundary::Periodic;

    QuadMesh2D() = default;
    QuadMesh2D(double x0, double x1, double y0, double y1, int nx_, int ny_, Boundary bc)
        : x_min(x0), x_max(x1), y_min(y0), y_max(y1), nx(nx_), ny(ny_), boundary(bc) {
        if (nx <= 0 || ny <= 0 || !(x1 > x0) || !(y1 > y0))
            throw std::invalid_argument("QuadMesh2D: invalid extents");
    }

    double dx() const { return (x_max - x_min) / nx; }
    double dy() const { return (y_max - y_min) / ny; }
    int n_cells() const { return nx * ny; }
    int cell_id(int i, int j) const { return i + nx * j; }
    double cell_x(int i) const { return x_min + (i + 0.5) * dx(); }
    double cell_y(int j) const { return y_min + (j + 0.5) * dy(); }
};

} // namespace sldg::core
