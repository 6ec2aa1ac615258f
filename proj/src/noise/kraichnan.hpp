#pragma once

#include <cstdint>
#include <vector>

namespace sldg::noise {

/// Divergence-free Fourier velocity modes on the torus [0,2pi]^2 with
/// Kraichnan-type amplitude scaling a ~ |k|^{-(1+xi/2)}; each wave vector
/// contributes a cosine and a sine mode so that sum_l |sigma_l(x)|^2 = V0^2
/// everywhere.
struct KraichnanField {
    struct Mode {
        double kx, ky;
        double amp;
        bool cosine;
    };

    int k_star = 1;
    double xi = 1.0;
    double V0 = 1.0;
    double D = 0.0;
    std::vector<Mode> modes;

    int n_modes() const { return static_cast<int>(modes.size()); }

    void eval(int l, double x, double y, double& sx, double& sy) const;

    /// sum_l |sigma_l(x)|^2; equals V0^2 identically.
    double sum_sq(double x, double y) const;

    /// Flux of mode l through the boundary of an axis-aligned rectangle,
    /// by composite Gauss quadrature; zero for divergence-free fields.
    double boundary_flux(int l, double x0, double x1, double y0, double y1, int n_panels = 4,
                         int n_gauss = 10) const;
};

/// k* = round(1/(3h)) with minimum 1 (unit-scaled torus convention);
/// amplitudes a_l = sqrt(D) |k_l|^{-(1+xi/2)} with
/// D = V0^2 / sum_{k in K} |k|^{-(2+xi)} over K = {k != 0 : 1 <= |k| <= k*}.
KraichnanField build_kraichnan(double xi, double V0, double h);

/// Structure-function table S(r) = mean over points and directions of
/// sum_l |sigma_l(x+delta)-sigma_l(x)|^2, with a log-log slope fit.
struct StructureTable {
    std::vector<double> separations;
    std::vector<double> values;
    double slope = 0.0;
};

StructureTable structure_function(const KraichnanField& field, const std::vector<double>& separations,
                                  int n_points = 64, int n_dirs = 16, uint64_t seed = 1234);

} // namespace sldg::noise
