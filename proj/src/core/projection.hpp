#pragma once

#include <functional>

#include "core/basis.hpp"
#include "core/coeffs.hpp"
#include "core/grid.hpp"

namespace sldg::core {

/// Orthogonal L2 projection of u0 onto the broken polynomial space.
/// Rejects non-finite samples of u0.
DGCoefficients project_initial(const std::function<double(double)>& u0, const Grid1D& grid,
                               const ModalBasis& basis);

DGCoefficients project_initial_2d(const std::function<double(double, double)>& u0, const QuadMesh2D& mesh,
                                  const ModalBasis2D& basis);

/// sqrt(sum_j u_j^T M^j u_j); mass matrices are diagonal.
double l2_norm(const DGCoefficients& u, const Grid1D& grid, const ModalBasis& basis);
double l2_norm_2d(const DGCoefficients& u, const QuadMesh2D& mesh, const ModalBasis2D& basis);

/// sum_j u_j^T M^j v_j.
double l2_inner(const DGCoefficients& u, const DGCoefficients& v, const Grid1D& grid, const ModalBasis& basis);
double l2_inner_2d(const DGCoefficients& u, const DGCoefficients& v, const QuadMesh2D& mesh,
                   const ModalBasis2D& basis);

/// Pointwise evaluation of the DG field.
double eval_field(const DGCoefficients& u, const Grid1D& grid, const ModalBasis& basis, double x);

/// Spatial L2 distance to a reference callable, by per-cell quadrature with an
/// elevated rule (n_extra additional points).
double l2_error(const DGCoefficients& u, const Grid1D& grid, const ModalBasis& basis,
                const std::function<double(double)>& exact, int n_extra = 3);

} // namespace sldg::core
