#pragma once

#include <memory>
#include <vector>

#include "core/basis.hpp"
#include "core/coeffs.hpp"
#include "core/grid.hpp"
#include "core/traces.hpp"
#include "ldg/flux_params.hpp"
#include "ldg/sigma_profile.hpp"
#include "ldg/system.hpp"

namespace sldg::ldg {

/// Which first-order rewriting of the linear equation is discretized:
/// Continuity uses q = d/dx(sigma u) and a downwind selector in F_u,
/// Transport uses q = sigma du/dx and an upwind selector with the
/// opposite-signed penalty.
enum class LinearForm { Continuity, Transport };

/// The scalar flux F_u for the primary equation (speed = (sigma^2)').
double flux_Fu(double u_minus, double u_plus, double s2p_at_interface, const FluxParams& p,
               LinearForm form = LinearForm::Continuity);

struct AltPair {
    double Fu; // \tilde F_u
    double Fq; // \tilde F_q
};

/// The coupled alternating pair with jump penalties.
AltPair flux_pair_alt(double u_minus, double u_plus, double q_minus, double q_plus,
                      double sigma_at_interface, const FluxParams& p);

struct EnergyFluxTerms {
    double Phi;
    double Psi;
    double Lambda;
    double Theta;
};

/// 1D LDG discretization of the linear continuity/transport equation.
/// Exposes the assembled drift/diffusion/auxiliary maps plus the per-cell
/// bilinear forms and interface energy quantities used by the property suite.
class LinearLDG {
public:
    LinearLDG(const core::Grid1D& grid, int degree, SigmaProfile sigma, FluxParams params,
              LinearForm form, int n_quad = -1);

    const core::Grid1D& grid() const { return grid_; }
    const core::ModalBasis& basis() const { return basis_; }
    const FluxParams& params() const { return params_; }
    LinearForm form() const { return form_; }
    const SigmaProfile& sigma() const { return sigma_; }

    void aux(const core::DGCoefficients& u, core::DGCoefficients& q) const;
    void drift(const core::DGCoefficients& u, core::DGCoefficients& out) const;
    void diffusion(const core::DGCoefficients& u, core::DGCoefficients& out) const;

    /// Bilinear forms of the weak formulation, tested against the field v on
    /// cell j (the face traces of the test function are taken from inside I_j).
    double a_form(const core::DGCoefficients& u, const core::DGCoefficients& v, int j) const;
    double b_form(const core::DGCoefficients& u, const core::DGCoefficients& q,
                  const core::DGCoefficients& v, int j) const;
    double c_form(const core::DGCoefficients& u, const core::DGCoefficients& v, int j) const;
    double d_form(const core::DGCoefficients& u, const core::DGCoefficients& q,
                  const core::DGCoefficients& v, int j) const;

    /// Interface quantities Phi, Psi, Lambda, Theta at interface i.
    EnergyFluxTerms energy_flux_terms(const core::DGCoefficients& u, const core::DGCoefficients& q,
                                      int interface) const;

    /// ||q||^2 over cell j (diagonal mass).
    double cell_q_norm2(const core::DGCoefficients& q, int j) const;

private:
    struct IfaceState {
        core::TracePair u;
        core::TracePair q;
        double Fu = 0.0, Ftu = 0.0, Ftq = 0.0;
    };
    void interface_states(const core::DGCoefficients& u, const core::DGCoefficients* q,
                          std::vector<IfaceState>& out) const;

    core::Grid1D grid_;
    core::ModalBasis basis_;
    SigmaProfile sigma_;
    FluxParams params_;
    LinearForm form_;

    // Tables at volume quadrature points, [cell * nq + q].
    std::vector<double> sig_q_, dsig_q_, sspp_q_, s2p_q_, s2pp_q_;
    // Interface point values, [n_cells + 1].
    std::vector<double> sig_if_, s2p_if_;
};

SemiDiscreteSystem assemble_continuity(const core::Grid1D& grid, int degree, const SigmaProfile& sigma,
                                       const FluxParams& params, int n_quad = -1);
SemiDiscreteSystem assemble_transport(const core::Grid1D& grid, int degree, const SigmaProfile& sigma,
                                      const FluxParams& params, int n_quad = -1);

/// Shared handle used when callers need both the system and the operator
/// internals (property tests, diagnostics).
std::shared_ptr<const LinearLDG> make_linear_operator(const core::Grid1D& grid, int degree,
                                                      const SigmaProfile& sigma, const FluxParams& params,
                                                      LinearForm form, int n_quad = -1);
SemiDiscreteSystem to_system(std::shared_ptr<const LinearLDG> op);

} // namespace sldg::ldg
