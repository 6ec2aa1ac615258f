#pragma once

#include <memory>
#include <vector>

#include "core/basis.hpp"
#include "core/coeffs.hpp"
#include "core/grid.hpp"
#include "ldg/flux_params.hpp"
#include "ldg/flux_triple.hpp"
#include "ldg/system.hpp"

namespace sldg::ldg {

enum class FluxFamily { Mean, Pathwise };

struct NonlinearFaceFlux {
    double F_gq; // flux for the correction term g'(u) q
    double F_g;  // flux for g(u) in the auxiliary equation
};

/// Mean-square-stable family: F_gq = sn*([[g]]/[[u]] <q> + eta_q sgn(sn)[[u]]),
/// F_g = sn*(<g> + eta_u sgn(sn)[[q]]). The ratio degenerates to g'(<u>) when
/// |[[u]]| is below a relative threshold.
NonlinearFaceFlux flux_mean(double um, double up, double qm, double qp, double sn, const FluxTriple& t,
                            double eta_q, double eta_u);

/// Pathwise-stable family: F_g = sn*[[G]]/[[u]] (-> g(<u>) at tiny jumps),
/// F_gq = sn*([[g]]/[[u]] <q> + eta_q sgn(sn) [[u]] |[[q]]|).
NonlinearFaceFlux flux_pathwise(double um, double up, double qm, double qp, double sn,
                                const FluxTriple& t, double eta_q);

/// Minimal penalty for pathwise stability: g2_max/12 over the state interval.
double pathwise_penalty_bound(const FluxTriple& t, double state_lo, double state_hi);

/// 1D nonlinear multi-mode LDG operator.
class NonlinearLDG1D {
public:
    NonlinearLDG1D(const core::Grid1D& grid, int degree, NoiseModel model, FluxFamily family,
                   int n_quad = -1);

    const core::Grid1D& grid() const { return grid_; }
    const core::ModalBasis& basis() const { return basis_; }
    const NoiseModel& model() const { return model_; }
    int n_modes() const { return model_.n_modes(); }

    void aux(int mode, const core::DGCoefficients& u, core::DGCoefficients& q) const;
    void drift(const core::DGCoefficients& u, core::DGCoefficients& out) const;
    void diffusion(int mode, const core::DGCoefficients& u, core::DGCoefficients& out) const;

    /// b_K(u, q_l, v) for one element (test traces from inside the element).
    double b_form(int mode, const core::DGCoefficients& u, const core::DGCoefficients& q,
                  const core::DGCoefficients& v, int j) const;

    /// Interface energy production Phi_e summed over modes at interface i,
    /// given u and per-mode auxiliaries.
    double interface_energy(const core::DGCoefficients& u,
                            const std::vector<core::DGCoefficients>& q_modes, int interface) const;

    double cell_q_norm2(const core::DGCoefficients& q, int j) const;

private:
    core::Grid1D grid_;
    core::ModalBasis basis_;
    NoiseModel model_;
    FluxFamily family_;
    std::vector<std::vector<double>> sig_q_;  // [mode][cell*nq+q]
    std::vector<std::vector<double>> sig_if_; // [mode][interface]
};

/// Structured 2D quadrilateral-mesh version. Face quadrature uses Gauss
/// points interior to the faces, so cell vertices are never sampled.
class NonlinearLDG2D {
public:
    NonlinearLDG2D(const core::QuadMesh2D& mesh, int degree, NoiseModel model, FluxFamily family,
                   int n_quad = -1);

    const core::QuadMesh2D& mesh() const { return mesh_; }
    const core::ModalBasis2D& basis() const { return basis_; }
    int n_modes() const { return model_.n_modes(); }

    void aux(int mode, const core::DGCoefficients& u, core::DGCoefficients& q) const;
    void drift(const core::DGCoefficients& u, core::DGCoefficients& out) const;
    void diffusion(int mode, const core::DGCoefficients& u, core::DGCoefficients& out) const;

    double b_form(int mode, const core::DGCoefficients& u, const core::DGCoefficients& q,
                  const core::DGCoefficients& v, int cell) const;
    double cell_q_norm2(const core::DGCoefficients& q, int cell) const;

    /// Sum over interior faces and modes of the energy production Phi_e.
    double total_interface_energy(const core::DGCoefficients& u,
                                  const std::vector<core::DGCoefficients>& q_modes) const;

    /// Sum over cells and modes of int_K u q_l dx (stochastic-orthogonality).
    double total_uq_inner(const core::DGCoefficients& u,
                          const std::vector<core::DGCoefficients>& q_modes) const;

private:
    struct Face; // interior + boundary faces with quadrature data
    void face_traces(const core::DGCoefficients& field, const Face& f, std::vector<double>& minus,
                     std::vector<double>& plus) const;

    core::QuadMesh2D mesh_;
    core::ModalBasis2D basis_;
    NoiseModel model_;
    FluxFamily family_;
    std::vector<Face> faces_;
    std::vector<std::vector<double>> sigvol_; // [mode][(cell*nq2+q)*2+comp]
    std::vector<std::vector<double>> sign_;   // [mode][face*nq+q]: sigma.n at face points
    // Edge basis tables [m][q]: value of mode m along each edge at face points.
    std::vector<std::vector<double>> edgeL_, edgeR_, edgeB_, edgeT_;
};

SemiDiscreteSystem assemble_nonlinear(const core::Grid1D& grid, int degree, const NoiseModel& model,
                                      FluxFamily family, int n_quad = -1);
SemiDiscreteSystem assemble_nonlinear_2d(const core::QuadMesh2D& mesh, int degree, const NoiseModel& model,
                                         FluxFamily family, int n_quad = -1);

std::shared_ptr<const NonlinearLDG1D> make_nonlinear_operator(const core::Grid1D& grid, int degree,
                                                              const NoiseModel& model, FluxFamily family,
                                                              int n_quad = -1);
std::shared_ptr<const NonlinearLDG2D> make_nonlinear_operator_2d(const core::QuadMesh2D& mesh, int degree,
                                                                 const NoiseModel& model, FluxFamily family,
                                                                 int n_quad = -1);

} // namespace sldg::ldg
