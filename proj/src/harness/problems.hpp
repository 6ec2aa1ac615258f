#pragma once

#include <functional>
#include <memory>
#include <string>

#include "core/basis.hpp"
#include "core/coeffs.hpp"
#include "core/grid.hpp"
#include "harness/config.hpp"
#include "ldg/system.hpp"

namespace sldg::harness {

/// A fully assembled experiment: mesh/basis, semi-discrete system, projected
/// initial data, and the closed-form solution when one exists.
struct ProblemSetup {
    bool is_2d = false;

    core::Grid1D grid;
    std::shared_ptr<core::ModalBasis> basis;

    core::QuadMesh2D mesh;
    std::shared_ptr<core::ModalBasis2D> basis2;

    ldg::SemiDiscreteSystem system;
    core::DGCoefficients u0;

    /// exact(x, t, W_t); empty when no closed form is known.
    std::function<double(double, double, double)> exact;

    double h = 0.0;        // mesh size used for dt rules
    double u0_l2 = 0.0;    // ||u_h(0)||_2
    double energy_rate = 0.0; // sup_x ((sigma')^2 - (sigma^2)''/4), linear problems

    double l2_norm_of(const core::DGCoefficients& u) const;
    double l2_error_at(const core::DGCoefficients& u, double t, double W) const;
};

ProblemSetup build_problem(const ExperimentConfig& cfg);

/// Closed-form solutions used by `exact` (exposed for tests):
/// translating sine u = sin(2 pi (x - sb*W)); dilation u = ubar(x e^{-sb W}) e^{-sb W}.
double exact_translating_sine(double x, double sigma_bar, double W);
double exact_dilation(double x, double sigma_bar, double W);

} // namespace sldg::harness
