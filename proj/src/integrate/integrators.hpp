#pragma once

#include <vector>

#include "core/coeffs.hpp"
#include "ldg/system.hpp"
#include "noise/wiener.hpp"

namespace sldg::ti {

/// Step-size selection: either a fixed dt, the rule dt = c*h^2, or the CFL
/// bound min(kc*h/((2k+1)*lambda), kd*h^2/((2k+1)^2*a)). The parabolic 2D
/// variant divides the diffusive bound by an extra factor 2.
struct StepController {
    double dt_fixed = -1.0;
    double c_h2 = -1.0;
    double kappa_c = 0.1;
    double kappa_d = 0.1;
    double lambda_max = 0.0;
    double a_max = 0.0;
    bool use_cfl = false;
    bool parabolic_2d = false;
};

double select_dt(const StepController& ctl, double h, int k);

/// One Euler-Maruyama step; returns false on a non-finite result (blow-up).
bool euler_maruyama(const ldg::SemiDiscreteSystem& sys, core::DGCoefficients& u, double dt,
                    const std::vector<double>& dW);

/// Derivative-free strong-order-3/2 step, scalar noise. dZ is the correlated
/// increment; applied entrywise to the coefficient matrix.
bool srk32_scalar(const ldg::SemiDiscreteSystem& sys, core::DGCoefficients& u, double dt, double dW,
                  double dZ);

/// Multi-noise form; the caller supplies all required iterated integrals
/// (pairs always, triples when more than one mode is active).
bool srk32_multi(const ldg::SemiDiscreteSystem& sys, core::DGCoefficients& u, double dt,
                 const noise::IteratedIntegrals& iints);

/// Dense drift/diffusion matrices of a linear single-mode system, obtained by
/// applying the maps to unit coefficient matrices.
struct DenseLinearSystem {
    int n = 0;
    std::vector<double> A; // drift matrix, row-major
    std::vector<double> C; // diffusion matrix
};

DenseLinearSystem materialize(const ldg::SemiDiscreteSystem& sys);

/// Stochastic theta-method on the materialized linear system:
/// (Id - theta*dt*A) u' = (Id + (1-theta)*dt*A) u + dW*C*u.
bool theta_step(const DenseLinearSystem& sys, std::vector<double>& u, double dt, double dW,
                double theta_t);

} // namespace sldg::ti
