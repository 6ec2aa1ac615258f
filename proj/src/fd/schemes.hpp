#pragma once

#include <vector>

#include "core/grid.hpp"
#include "ldg/flux_params.hpp"
#include "ldg/flux_triple.hpp"
#include "ldg/sigma_profile.hpp"

namespace sldg::fd {

/// Piecewise-constant state of a difference scheme.
struct FDState {
    std::vector<double> u;
    std::vector<double> q; // companion when not eliminated

    bool all_finite() const;
};

/// Drift/diffusion rates of a scheme at a given state:
///   du = drift*dt + sum_l diffusion[l]*dW^l.
struct FDRates {
    std::vector<double> drift;
    std::vector<std::vector<double>> diffusion;
};

/// The realized increment for a step (dt, dW).
std::vector<double> fd_increment(const FDRates& r, double dt, const std::vector<double>& dW);

/// Most general k=0 reduction of the LDG continuity scheme; eta_u > 0 makes
/// the auxiliary variable implicit (solved directly).
FDRates step_general_continuity(const std::vector<double>& u, const core::Grid1D& grid,
                                const ldg::SigmaProfile& sigma, const ldg::FluxParams& p);

/// Central-flux scheme with q eliminated analytically.
FDRates step_conservative(const std::vector<double>& u, const core::Grid1D& grid,
                          const ldg::SigmaProfile& sigma);

enum class TransportVariant { ConservativeTheta, Dissipative };

/// Transport-form schemes; theta in {0,1} reduces q to one-sided differences.
FDRates step_transport(const std::vector<double>& u, const core::Grid1D& grid,
                       const ldg::SigmaProfile& sigma, const ldg::FluxParams& p, TransportVariant variant);

/// The reference dissipative scheme (harmonic interface averaging,
/// cell-averaged sigma_j); requires sigma > 0.
FDRates step_fjordholm(const std::vector<double>& u, const core::Grid1D& grid,
                       const ldg::SigmaProfile& sigma);

enum class FDNonlinearVariant { Mean, Pathwise };

/// Multi-mode nonlinear schemes with sigma_l == 1.
FDRates step_nonlinear(const std::vector<double>& u, const core::Grid1D& grid,
                       const std::vector<ldg::FluxTriple>& fluxes, const std::vector<double>& eta_q,
                       const std::vector<double>& eta_u, FDNonlinearVariant variant);

} // namespace sldg::fd
