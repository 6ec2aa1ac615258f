#pragma once

#include <functional>

#include "core/coeffs.hpp"

namespace sldg::ldg {

/// Assembled matrix SDE  du = F(u) dt + sum_l G_l(u) dW^l,  with the
/// auxiliary map q_l = Q_l(u). Evaluation is pure; systems are immutable and
/// safe to share across threads.
struct SemiDiscreteSystem {
    int dof = 0;
    int n_elems = 0;
    int n_modes = 1;
    std::function<void(const core::DGCoefficients&, core::DGCoefficients&)> drift;
    std::function<void(int, const core::DGCoefficients&, core::DGCoefficients&)> diffusion;
    std::function<void(int, const core::DGCoefficients&, core::DGCoefficients&)> aux;

    core::DGCoefficients drift_of(const core::DGCoefficients& u) const {
        core::DGCoefficients out(dof, n_elems);
        drift(u, out);
        return out;
    }
    core::DGCoefficients diffusion_of(int mode, const core::DGCoefficients& u) const {
        core::DGCoefficients out(dof, n_elems);
        diffusion(mode, u, out);
        return out;
    }
    core::DGCoefficients aux_of(int mode, const core::DGCoefficients& u) const {
        core::DGCoefficients out(dof, n_elems);
        aux(mode, u, out);
        return out;
    }
};

} // namespace sldg::ldg
