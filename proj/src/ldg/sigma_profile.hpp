#pragma once

#include <functional>

#include "core/basis.hpp"
#include "core/grid.hpp"

namespace sldg::ldg {

/// Noise amplitude sigma with its derivatives. (sigma^2)' and (sigma^2)''
/// default to the chain-rule combinations but may be overridden with
/// independently supplied callables.
struct SigmaProfile {
    std::function<double(double)> sigma;
    std::function<double(double)> dsigma;
    std::function<double(double)> d2sigma;
    std::function<double(double)> s2p_override;
    std::function<double(double)> s2pp_override;

    double s2p(double x) const {
        return s2p_override ? s2p_override(x) : 2.0 * sigma(x) * dsigma(x);
    }
    double s2pp(double x) const {
        if (s2pp_override) return s2pp_override(x);
        const double d = dsigma(x);
        return 2.0 * (d * d + sigma(x) * d2sigma(x));
    }
    double sigma_sigmapp(double x) const { return sigma(x) * d2sigma(x); }

    /// Integral of sigma*sigma'' over cell j by the basis quadrature rule.
    double sigma_sigmapp_cell_integral(const core::Grid1D& grid, const core::ModalBasis& basis, int j) const;

    /// max over sample points of |(sigma^2)' - 2 sigma sigma'|.
    double consistency_residual(double x_lo, double x_hi, int n_samples = 101) const;

    static SigmaProfile constant(double c);
    static SigmaProfile linear(double a, double b);            // a*x + b
    static SigmaProfile quadratic(double a, double b, double c); // a*x^2 + b*x + c
};

} // namespace sldg::ldg
