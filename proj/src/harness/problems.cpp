#include "harness/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "core/projection.hpp"
#include "fd/schemes.hpp"
#include "ldg/linear.hpp"
#include "ldg/nonlinear.hpp"
#include "noise/kraichnan.hpp"

namespace sldg::harness {

namespace {
constexpr double kTwoPi = 6.283185307179586476925;

double bump(double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }

ldg::FluxParams params_from(const ExperimentConfig& cfg) {
    ldg::FluxParams p;
    p.gamma = cfg.gamma;
    p.gamma_tilde = cfg.gamma_tilde;
    p.theta = cfg.theta;
    p.eta_u = cfg.eta_u;
    p.eta_q = cfg.eta_q;
    return p;
}

/// Wraps the k=0 finite-difference scheme as a SemiDiscreteSystem.
ldg::SemiDiscreteSystem fd_system(const core::Grid1D& grid, const ldg::SigmaProfile& sigma,
                                  const ldg::FluxParams& p) {
    ldg::SemiDiscreteSystem sys;
    sys.dof = 1;
    sys.n_elems = grid.n_cells;
    sys.n_modes = 1;
    auto rates = [grid, sigma, p](const core::DGCoefficients& u) {
        std::vector<double> v(u.data.begin(), u.data.end());
        return fd::step_general_continuity(v, grid, sigma, p);
    };
    sys.drift = [rates](const core::DGCoefficients& u, core::DGCoefficients& out) {
        auto r = rates(u);
        for (int j = 0; j < out.n_elems; ++j) out(0, j) = r.drift[j];
    };
    sys.diffusion = [rates](int, const core::DGCoefficients& u, core::DGCoefficients& out) {
        auto r = rates(u);
        for (int j = 0; j < out.n_elems; ++j) out(0, j) = r.diffusion[0][j];
    };
    sys.aux = [rates](int, const core::DGCoefficients& u, core::DGCoefficients& out) {
        auto r = rates(u);
        for (int j = 0; j < out.n_elems; ++j) out(0, j) = -r.diffusion[0][j];
    };
    return sys;
}
} // namespace

double exact_translating_sine(double x, double sigma_bar, double W) {
    return std::sin(kTwoPi * (x - sigma_bar * W));
}

double exact_dilation(double x, double sigma_bar, double W) {
    const double s = std::exp(-sigma_bar * W);
    const double y = x * s;
    return std::abs(y) < 1.0 ? std::sin(kTwoPi * y) * bump(y) * s : 0.0;
}

double ProblemSetup::l2_norm_of(const core::DGCoefficients& u) const {
    return is_2d ? core::l2_norm_2d(u, mesh, *basis2) : core::l2_norm(u, grid, *basis);
}

double ProblemSetup::l2_error_at(const core::DGCoefficients& u, double t, double W) const {
    if (!exact) throw std::logic_error("problem has no closed-form solution");
    auto ref = [&](double x) { return exact(x, t, W); };
    return core::l2_error(u, grid, *basis, ref);
}

ProblemSetup build_problem(const ExperimentConfig& cfg) {
    ProblemSetup ps;
    const ldg::FluxParams p = params_from(cfg);

    int n_cells = cfg.n_cells;
    std::vector<double> dom = cfg.domain;

    if (cfg.problem == "translating_sine" || cfg.problem == "dilation") {
        const bool sine = cfg.problem == "translating_sine";
        if (dom.empty()) dom = sine ? std::vector<double>{0.0, 1.0} : std::vector<double>{-4.0, 4.0};
        if (cfg.level >= 0) {
            const double h = std::pow(2.0, -(3.0 + cfg.level));
            n_cells = static_cast<int>(std::lround((dom[1] - dom[0]) / h));
        }
        const auto bc = sine ? core::Boundary::Periodic : core::Boundary::Extrapolate;
        ps.grid = core::Grid1D(dom[0], dom[1], n_cells, bc);
        ps.h = ps.grid.dx();

        ldg::SigmaProfile sigma = sine ? ldg::SigmaProfile::constant(cfg.sigma_bar)
                                       : ldg::SigmaProfile::linear(cfg.sigma_bar, 0.0);
        const auto form =
            cfg.form == "transport" ? ldg::LinearForm::Transport : ldg::LinearForm::Continuity;
        if (cfg.module == "fd") {
            if (cfg.form == "transport")
                throw std::invalid_argument("fd module: transport form not wired into the harness");
            ps.system = fd_system(ps.grid, sigma, p);
            ps.basis = std::make_shared<core::ModalBasis>(0, 2);
        } else {
            ps.system = (form == ldg::LinearForm::Transport)
                            ? ldg::assemble_transport(ps.grid, cfg.degree, sigma, p)
                            : ldg::assemble_continuity(ps.grid, cfg.degree, sigma, p);
            ps.basis = std::make_shared<core::ModalBasis>(cfg.degree, cfg.degree + 2);
        }
        auto u0fun = sine ? std::function<double(double)>([](double x) { return std::sin(kTwoPi * x); })
                          : std::function<double(double)>(
                                [](double x) { return std::sin(kTwoPi * x) * bump(x); });
        ps.u0 = core::project_initial(u0fun, ps.grid, *ps.basis);
        const double sb = cfg.sigma_bar;
        ps.exact = sine ? std::function<double(double, double, double)>(
                              [sb](double x, double, double W) { return exact_translating_sine(x, sb, W); })
                        : std::function<double(double, double, double)>(
                              [sb](double x, double, double W) { return exact_dilation(x, sb, W); });
        // sup((sigma')^2 - (sigma^2)''/4): 0 for constant sigma, sb^2/2 for sigma = sb*x.
        ps.energy_rate = sine ? 0.0 : 0.5 * sb * sb;
    } else if (cfg.problem == "burgers" || cfg.problem == "sin_flux") {
        const bool burgers = cfg.problem == "burgers";
        if (dom.empty()) dom = burgers ? std::vector<double>{-1.0, 2.0} : std::vector<double>{-2.0, 3.0};
        if (cfg.level >= 0) {
            const double h = std::pow(2.0, -(3.0 + cfg.level));
            n_cells = static_cast<int>(std::lround((dom[1] - dom[0]) / h));
        }
        ps.grid = core::Grid1D(dom[0], dom[1], n_cells, core::Boundary::Extrapolate);
        ps.h = ps.grid.dx();
        ldg::NoiseModel model;
        ldg::NoiseMode mode;
        mode.sigma = ldg::SigmaField::constant1d(1.0);
        mode.flux = burgers ? ldg::FluxTriple::burgers() : ldg::FluxTriple::sin_flux();
        mode.eta_q = cfg.eta_q;
        mode.eta_u = cfg.eta_u;
        model.modes.push_back(mode);
        const auto family =
            cfg.flux_family == "pathwise" ? ldg::FluxFamily::Pathwise : ldg::FluxFamily::Mean;
        ps.system = ldg::assemble_nonlinear(ps.grid, cfg.degree, model, family);
        ps.basis = std::make_shared<core::ModalBasis>(cfg.degree, 2 * cfg.degree + 2);
        auto u0fun = burgers
                         ? std::function<double(double)>(
                               [](double x) { return (x >= 0.25 && x <= 0.75) ? 1.0 : 0.0; })
                         : std::function<double(double)>([](double x) {
                               return (x >= -1.0 && x <= 2.0) ? -std::sin(3.14159265358979323846 * x)
                                                              : 0.0;
                           });
        ps.u0 = core::project_initial(u0fun, ps.grid, *ps.basis);
    } else if (cfg.problem == "buckley_leverett_2d") {
        if (dom.empty()) dom = {-1.5, 1.5, -1.5, 1.5};
        ps.is_2d = true;
        ps.mesh = core::QuadMesh2D(dom[0], dom[1], dom[2], dom[3], cfg.nx, cfg.ny,
                                   core::Boundary::Extrapolate);
        ps.h = std::min(ps.mesh.dx(), ps.mesh.dy());
        ldg::NoiseModel model;
        model.divergence_free = true;
        ldg::NoiseMode m1, m2;
        m1.sigma = ldg::SigmaField::constant2d(1.0, 0.0);
        m1.flux = ldg::FluxTriple::buckley_leverett_1();
        m1.eta_q = cfg.eta_q;
        m2.sigma = ldg::SigmaField::constant2d(0.0, 1.0);
        m2.flux = ldg::FluxTriple::buckley_leverett_2();
        m2.eta_q = cfg.eta_q;
        model.modes.push_back(m1);
        model.modes.push_back(m2);
        const auto family =
            cfg.flux_family == "pathwise" ? ldg::FluxFamily::Pathwise : ldg::FluxFamily::Mean;
        ps.system = ldg::assemble_nonlinear_2d(ps.mesh, cfg.degree, model, family);
        ps.basis2 = std::make_shared<core::ModalBasis2D>(cfg.degree, 2 * cfg.degree + 2);
        ps.u0 = core::project_initial_2d(
            [](double x, double y) { return (x * x + y * y <= 0.2) ? 1.0 : 0.0; }, ps.mesh, *ps.basis2);
    } else if (cfg.problem == "kraichnan") {
        ps.is_2d = true;
        ps.mesh = core::QuadMesh2D(0.0, kTwoPi, 0.0, kTwoPi, cfg.nx, cfg.ny, core::Boundary::Periodic);
        // Unit-scaled torus convention for the cutoff rule.
        ps.h = 1.0 / cfg.nx;
        const noise::KraichnanField field = noise::build_kraichnan(cfg.xi, cfg.V0, ps.h);
        ldg::NoiseModel model;
        model.divergence_free = true;
        for (int l = 0; l < field.n_modes(); ++l) {
            ldg::NoiseMode m;
            m.sigma = ldg::SigmaField::callable2d(
                [field, l](double x, double y, double& sx, double& sy) { field.eval(l, x, y, sx, sy); });
            m.flux = ldg::FluxTriple::linear();
            m.eta_q = cfg.eta_q;
            model.modes.push_back(m);
        }
        const auto family =
            cfg.flux_family == "pathwise" ? ldg::FluxFamily::Pathwise : ldg::FluxFamily::Mean;
        ps.system = ldg::assemble_nonlinear_2d(ps.mesh, cfg.degree, model, family);
        ps.basis2 = std::make_shared<core::ModalBasis2D>(cfg.degree, 2 * cfg.degree + 2);
        ps.u0 = core::project_initial_2d(
            [](double x, double y) { return std::sin(x) * std::sin(y); }, ps.mesh, *ps.basis2);
    } else {
        throw std::invalid_argument("unknown problem '" + cfg.problem + "'");
    }

    ps.u0_l2 = ps.l2_norm_of(ps.u0);
    return ps;
}

} // namespace sldg::harness
