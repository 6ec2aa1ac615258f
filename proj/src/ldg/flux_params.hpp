#pragma once

#include <stdexcept>

namespace sldg::ldg {

/// Tunable numerical-flux parameters: gamma interpolates between central and
/// one-sided selectors, gamma_tilde / eta_u / eta_q are jump penalties, theta
/// sets the alternating pair (theta = 1/2 is central).
struct FluxParams {
    double gamma = 0.0;
    double gamma_tilde = 0.0;
    double theta = 0.5;
    double eta_u = 0.0;
    double eta_q = 0.0;

    void validate() const {
        if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("FluxParams: gamma not in [0,1]");
        if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("FluxParams: theta not in [0,1]");
        if (gamma_tilde < 0.0 || eta_u < 0.0 || eta_q < 0.0)
            throw std::invalid_argument("FluxParams: penalties must be >= 0");
    }
};

inline double sgn0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

} // namespace sldg::ldg
