#include "core/traces.hpp"

#include <stdexcept>

namespace sldg::core {

namespace {
double edge_value(const DGCoefficients& u, const ModalBasis& basis, int cell, bool right_edge) {
    const double* c = u.col(cell);
    const auto& tr = right_edge ? basis.right_trace : basis.left_trace;
    double s = 0.0;
    for (int m = 0; m < basis.dof(); ++m) s += c[m] * tr[m];
    return s;
}
} // namespace

TracePair trace_pair(const DGCoefficients& u, const ModalBasis& basis, const Grid1D& grid, int interface) {
    const int n = grid.n_cells;
    if (interface < 0 || interface > n) throw std::out_of_range("trace_pair: interface id out of range");
    if (u.n_elems != n || u.dof != basis.dof()) throw std::invalid_argument("trace_pair: shape mismatch");

    int left = interface - 1;
    int right = interface;
    if (grid.boundary == Boundary::Periodic) {
        left = grid.neighbor(left);
        right = grid.neighbor(right % n);
        return {edge_value(u, basis, left, true), edge_value(u, basis, right, false)};
    }
    // Extrapolate: duplicate the interior trace at the two domain ends.
    if (interface == 0) {
        double v = edge_value(u, basis, 0, false);
        return {v, v};
    }
    if (interface == n) {
        double v = edge_value(u, basis, n - 1, true);
        return {v, v};
    }
    return {edge_value(u, basis, left, true), edge_value(u, basis, right, false)};
}

double jump_identity_check(double am, double ap, double bm, double bp) {
    double jab = ap * bp - am * bm;
    double avg_a = 0.5 * (ap + am), avg_b = 0.5 * (bp + bm);
    double ja = ap - am, jb = bp - bm;
    return jab - (avg_a * jb + ja * avg_b);
}

} // namespace sldg::core
