#pragma once

#include "core/basis.hpp"
#include "core/coeffs.hpp"
#include "core/grid.hpp"

namespace sldg::core {

/// Traces at a 1D interface: u_minus from the left cell, u_plus from the right.
struct TracePair {
    double minus;
    double plus;
};

/// Traces at interface i (coordinate x_min + i*dx), i = 0..n_cells.
/// Periodic wraps; Extrapolate duplicates the interior trace so boundary
/// jumps vanish.
TracePair trace_pair(const DGCoefficients& u, const ModalBasis& basis, const Grid1D& grid, int interface);

inline double jump(const TracePair& t) { return t.plus - t.minus; }
inline double avg(const TracePair& t) { return 0.5 * (t.plus + t.minus); }

/// Residual of [[ab]] - (<a>[[b]] + [[a]]<b>); identically zero.
double jump_identity_check(double a_minus, double a_plus, double b_minus, double b_plus);

} // namespace sldg::core
