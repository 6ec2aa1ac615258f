#include "fd/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "core/basis.hpp"

namespace sldg::fd {

namespace {

struct Ctx {
    const core::Grid1D& grid;
    int N;
    double dx;
    bool periodic;

    explicit Ctx(const core::Grid1D& g)
        : grid(g), N(g.n_cells), dx(g.dx()), periodic(g.boundary == core::Boundary::Periodic) {}

    int cell(int j) const {
        if (periodic) return ((j % N) + N) % N;
        return j < 0 ? 0 : (j >= N ? N - 1 : j);
    }
    double at(const std::vector<double>& v, int j) const { return v[cell(j)]; }
    // Interface i sits at x_min + i*dx ("j-1/2" for cell j is interface j).
    double iface_x(int i) const {
        if (periodic) {
            int k = ((i % N) + N) % N;
            return grid.interface_x(k);
        }
        int k = i < 0 ? 0 : (i > N ? N : i);
        return grid.interface_x(k);
    }
};

// Dense linear solve (Gaussian elimination, partial pivoting).
std::vector<double> dense_solve(std::vector<double> A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
        if (std::abs(A[piv * n + col]) < 1e-300) throw std::runtime_error("dense_solve: singular matrix");
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(A[col * n + c], A[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = A[r * n + col] / A[col * n + col];
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A[r * n + c] * x[c];
        x[r] = s / A[r * n + r];
    }
    return x;
}

double ratio(const ldg::FluxTriple& t, double ua, double ub) {
    const double eps = 1e-10 * (1.0 + std::abs(ua) + std::abs(ub));
    if (std::abs(ub - ua) < eps) return t.gprime(0.5 * (ua + ub));
    return (t.g(ub) - t.g(ua)) / (ub - ua);
}

double ratio_G(const ldg::FluxTriple& t, double ua, double ub) {
    const double eps = 1e-10 * (1.0 + std::abs(ua) + std::abs(ub));
    if (std::abs(ub - ua) < eps) return t.g(0.5 * (ua + ub));
    return (t.Gint(ub) - t.Gint(ua)) / (ub - ua);
}

void check_finite(const std::vector<double>& u) {
    for (double v : u)
        if (!std::isfinite(v)) throw std::invalid_argument("fd scheme: non-finite state");
}

} // namespace

bool FDState::all_finite() const {
    for (double v : u)
        if (!std::isfinite(v)) return false;
    for (double v : q)
        if (!std::isfinite(v)) return false;
    return true;
}

std::vector<double> fd_increment(const FDRates& r, double dt, const std::vector<double>& dW) {
    std::vector<double> du(r.drift.size());
    for (size_t j = 0; j < du.size(); ++j) {
        double v = r.drift[j] * dt;
        for (size_t l = 0; l < r.diffusion.size(); ++l) v += r.diffusion[l][j] * dW[l];
        du[j] = v;
    }
    return du;
}

FDRates step_general_continuity(const std::vector<double>& u, const core::Grid1D& grid,
                                const ldg::SigmaProfile& sigma, const ldg::FluxParams& p) {
    check_finite(u);
    p.validate();
    Ctx c(grid);
    const int N = c.N;
    const double dx = c.dx;

    auto sif = [&](int i) { return sigma.sigma(c.iface_x(i)); };
    auto s2pif = [&](int i) { return sigma.s2p(c.iface_x(i)); };

    // q_j = (1-theta) D+(sigma_{j-1/2} u_j) + theta D-(sigma_{j+1/2} u_j)
    //       + eta_u [ D+(|sigma_{j-1/2}| q_j) - D-(|sigma_{j+1/2}| q_j) ].
    std::vector<double> qbase(N);
    for (int j = 0; j < N; ++j) {
        const double dplus = (sif(j + 1) * c.at(u, j + 1) - sif(j) * u[j]) / dx;
        const double dminus = (sif(j + 1) * u[j] - sif(j) * c.at(u, j - 1)) / dx;
        qbase[j] = (1.0 - p.theta) * dplus + p.theta * dminus;
    }
    std::vector<double> q;
    if (p.eta_u == 0.0) {
        q = qbase;
    } else {
        // (I - eta_u K) q = qbase with
        // (Kq)_j = (|s_{j+1/2}|(q_{j+1}-q_j) - |s_{j-1/2}|(q_j-q_{j-1}))/dx.
        std::vector<double> A(static_cast<size_t>(N) * N, 0.0);
        for (int j = 0; j < N; ++j) {
            const double ap = std::abs(sif(j + 1)) / dx;
            const double am = std::abs(sif(j)) / dx;
            A[j * N + j] += 1.0 + p.eta_u * (ap + am);
            A[j * N + c.cell(j + 1)] -= p.eta_u * ap;
            A[j * N + c.cell(j - 1)] -= p.eta_u * am;
        }
        q = dense_solve(std::move(A), qbase);
    }

    FDRates r;
    r.drift.assign(N, 0.0);
    r.diffusion.assign(1, std::vector<double>(N));
    core::ModalBasis quad_basis(0, 3); // quadrature for the sigma*sigma'' cell integral
    for (int j = 0; j < N; ++j) {
        double drift = -0.5 / dx * u[j] * sigma.sigma_sigmapp_cell_integral(grid, quad_basis, j);
        drift += -0.5 * q[j] * (sif(j + 1) - sif(j)) / dx;

        const double up1 = c.at(u, j + 1), um1 = c.at(u, j - 1);
        auto pos = [](double x) { return x > 0.0 ? x : 0.0; };
        auto neg = [](double x) { return x < 0.0 ? x : 0.0; };
        drift += 0.25 * p.gamma *
                 ((pos(s2pif(j + 1)) * up1 - pos(s2pif(j)) * u[j]) / dx +
                  (neg(s2pif(j + 1)) * u[j] - neg(s2pif(j)) * um1) / dx);
        drift += 0.125 * (1.0 - p.gamma) *
                 ((s2pif(j + 1) * up1 - s2pif(j) * u[j]) / dx +
                  (s2pif(j + 1) * u[j] - s2pif(j) * um1) / dx);
        drift += 0.25 * p.gamma_tilde *
                 ((std::abs(s2pif(j + 1)) * up1 - std::abs(s2pif(j)) * u[j]) / dx -
                  (std::abs(s2pif(j + 1)) * u[j] - std::abs(s2pif(j)) * um1) / dx);
        drift += 0.5 * (p.theta * (sif(j + 1) * c.at(q, j + 1) - sif(j) * q[j]) / dx +
                        (1.0 - p.theta) * (sif(j + 1) * q[j] - sif(j) * c.at(q, j - 1)) / dx);
        drift += 0.5 * p.eta_q *
                 ((std::abs(sif(j + 1)) * up1 - std::abs(sif(j)) * u[j]) / dx -
                  (std::abs(sif(j + 1)) * u[j] - std::abs(sif(j)) * um1) / dx);
        r.drift[j] = drift;
        r.diffusion[0][j] = -q[j];
    }
    return r;
}

FDRates step_conservative(const std::vector<double>& u, const core::Grid1D& grid,
                          const ldg::SigmaProfile& sigma) {
    check_finite(u);
    Ctx c(grid);
    const int N = c.N;
    const double dx = c.dx;
    auto sif = [&](int i) { return sigma.sigma(c.iface_x(i)); };
    auto s2pif = [&](int i) { return sigma.s2p(c.iface_x(i)); };

    // q_j = (D+(s_{j-1/2} u_j) + D-(s_{j+1/2} u_j))/2, formed for all ghost
    // offsets needed by the outer differences.
    auto qvals = [&](int j) {
        const double dplus = (sif(j + 1) * c.at(u, j + 1) - sif(j) * c.at(u, j)) / dx;
        const double dminus = (sif(j + 1) * c.at(u, j) - sif(j) * c.at(u, j - 1)) / dx;
        return 0.5 * (dplus + dminus);
    };

    FDRates r;
    r.drift.assign(N, 0.0);
    r.diffusion.assign(1, std::vector<double>(N));
    core::ModalBasis quad_basis(0, 3);
    for (int j = 0; j < N; ++j) {
        double drift = -0.5 / dx * u[j] * sigma.sigma_sigmapp_cell_integral(grid, quad_basis, j);
        drift += 0.125 * ((s2pif(j + 1) * c.at(u, j + 1) - s2pif(j) * u[j]) / dx +
                          (s2pif(j + 1) * u[j] - s2pif(j) * c.at(u, j - 1)) / dx);
        drift += 0.25 * (sif(j + 1) * (qvals(j + 1) - qvals(j)) / dx +
                         sif(j) * (qvals(j) - qvals(j - 1)) / dx);
        r.drift[j] = drift;
        r.diffusion[0][j] = -qvals(j);
    }
    return r;
}

FDRates step_transport(const std::vector<double>& u, const core::Grid1D& grid,
                       const ldg::SigmaProfile& sigma, const ldg::FluxParams& p,
                       TransportVariant variant) {
    check_finite(u);
    p.validate();
    Ctx c(grid);
    const int N = c.N;
    const double dx = c.dx;
    auto sif = [&](int i) { return sigma.sigma(c.iface_x(i)); };
    auto s2pif = [&](int i) { return sigma.s2p(c.iface_x(i)); };

    FDRates r;
    r.drift.assign(N, 0.0);
    r.diffusion.assign(1, std::vector<double>(N));

    if (variant == TransportVariant::ConservativeTheta) {
        auto qvals = [&](int j) {
            return -c.at(u, j) * (sif(j + 1) - sif(j)) / dx +
                   (1.0 - p.theta) * (sif(j + 1) * c.at(u, j + 1) - sif(j) * c.at(u, j)) / dx +
                   p.theta * (sif(j + 1) * c.at(u, j) - sif(j) * c.at(u, j - 1)) / dx;
        };
        for (int j = 0; j < N; ++j) {
            double drift = -0.125 * (s2pif(j + 1) * (c.at(u, j + 1) - u[j]) / dx +
                                     s2pif(j) * (u[j] - c.at(u, j - 1)) / dx);
            drift += 0.5 * (p.theta * (sif(j + 1) * qvals(j + 1) - sif(j) * qvals(j)) / dx +
                            (1.0 - p.theta) * (sif(j + 1) * qvals(j) - sif(j) * qvals(j - 1)) / dx);
            r.drift[j] = drift;
            r.diffusion[0][j] = -qvals(j);
        }
        return r;
    }

    // Dissipative variant: gamma = 1, theta = 1, q_j = sigma_{j-1/2} D- u_j.
    auto qvals = [&](int j) { return sif(j) * (c.at(u, j) - c.at(u, j - 1)) / dx; };
    auto pos = [](double x) { return x > 0.0 ? x : 0.0; };
    auto neg = [](double x) { return x < 0.0 ? x : 0.0; };
    for (int j = 0; j < N; ++j) {
        double drift = -0.25 * (neg(s2pif(j + 1)) * (c.at(u, j + 1) - u[j]) / dx +
                                pos(s2pif(j)) * (u[j] - c.at(u, j - 1)) / dx);
        drift += 0.25 * p.gamma_tilde *
                 ((std::abs(s2pif(j + 1)) * c.at(u, j + 1) - std::abs(s2pif(j)) * u[j]) / dx -
                  (std::abs(s2pif(j + 1)) * u[j] - std::abs(s2pif(j)) * c.at(u, j - 1)) / dx);
        drift += 0.5 * (qvals(j + 1) - qvals(j)) / dx;
        drift += 0.5 * p.eta_q *
                 ((std::abs(sif(j + 1)) * c.at(u, j + 1) - std::abs(sif(j)) * u[j]) / dx -
                  (std::abs(sif(j + 1)) * u[j] - std::abs(sif(j)) * c.at(u, j - 1)) / dx);
        r.drift[j] = drift;
        r.diffusion[0][j] = -qvals(j);
    }
    return r;
}

FDRates step_fjordholm(const std::vector<double>& u, const core::Grid1D& grid,
                       const ldg::SigmaProfile& sigma) {
    check_finite(u);
    Ctx c(grid);
    const int N = c.N;
    const double dx = c.dx;

    // Cell averages of sigma by quadrature.
    core::ModalBasis quad_basis(0, 4);
    std::vector<double> sbar(N);
    for (int j = 0; j < N; ++j) {
        double s = 0.0;
        for (int q = 0; q < quad_basis.quad.size(); ++q)
            s += quad_basis.quad.weights[q] * 0.5 *
                 sigma.sigma(grid.cell_center(j) + 0.5 * dx * quad_basis.quad.nodes[q]);
        sbar[j] = s;
        if (!(s > 0.0)) throw std::invalid_argument("step_fjordholm: sigma must be positive");
    }
    auto sb = [&](int j) { return sbar[c.cell(j)]; };

    FDRates r;
    r.drift.assign(N, 0.0);
    r.diffusion.assign(1, std::vector<double>(N));
    for (int j = 0; j < N; ++j) {
        auto flux = [&](int i) { // (sigma_{i-1}+sigma_i)/2 * D- u_i
            return 0.5 * (sb(i - 1) + sb(i)) * (c.at(u, i) - c.at(u, i - 1)) / dx;
        };
        r.drift[j] = 0.5 * sb(j) * (flux(j + 1) - flux(j)) / dx;
        const double H = 1.0 / (1.0 / (sb(j - 1) + sb(j)) + 1.0 / (sb(j) + sb(j + 1)));
        r.diffusion[0][j] =
            -0.5 * std::sqrt(sb(j) * H) * ((c.at(u, j + 1) - u[j]) / dx + (u[j] - c.at(u, j - 1)) / dx);
    }
    return r;
}

FDRates step_nonlinear(const std::vector<double>& u, const core::Grid1D& grid,
                       const std::vector<ldg::FluxTriple>& fluxes, const std::vector<double>& eta_q,
                       const std::vector<double>& eta_u, FDNonlinearVariant variant) {
    check_finite(u);
    Ctx c(grid);
    const int N = c.N;
    const double dx = c.dx;
    const int L = static_cast<int>(fluxes.size());
    if (static_cast<int>(eta_q.size()) != L || static_cast<int>(eta_u.size()) != L)
        throw std::invalid_argument("step_nonlinear: penalty arrays must match mode count");

    FDRates r;
    r.drift.assign(N, 0.0);
    r.diffusion.assign(L, std::vector<double>(N));

    for (int l = 0; l < L; ++l) {
        const ldg::FluxTriple& t = fluxes[l];
        // Interface ratio R_{j+1/2} = [[g]]/[[u]] (index i = j+1 maps to j+1/2).
        auto R = [&](int j) { return ratio(t, c.at(u, j), c.at(u, j + 1)); };

        std::vector<double> q(N);
        if (variant == FDNonlinearVariant::Pathwise) {
            auto RG = [&](int j) { return ratio_G(t, c.at(u, j), c.at(u, j + 1)); };
            for (int j = 0; j < N; ++j) q[j] = (RG(j) - RG(j - 1)) / dx;
        } else {
            std::vector<double> qbase(N);
            for (int j = 0; j < N; ++j)
                qbase[j] = (t.g(c.at(u, j + 1)) - t.g(c.at(u, j - 1))) / (2.0 * dx);
            if (eta_u[l] == 0.0) {
                q = qbase;
            } else {
                std::vector<double> A(static_cast<size_t>(N) * N, 0.0);
                const double w = eta_u[l] / dx; // eta_u * dx * (1/dx^2)
                for (int j = 0; j < N; ++j) {
                    A[j * N + j] += 1.0 + 2.0 * w;
                    A[j * N + c.cell(j + 1)] -= w;
                    A[j * N + c.cell(j - 1)] -= w;
                }
                q = dense_solve(std::move(A), qbase);
            }
        }

        auto qa = [&](int j) { return q[c.cell(j)]; };
        for (int j = 0; j < N; ++j) {
            double drift = 0.25 * ((R(j) * qa(j + 1) - R(j - 1) * qa(j)) / dx +
                                   (R(j) * qa(j) - R(j - 1) * qa(j - 1)) / dx);
            if (variant == FDNonlinearVariant::Pathwise) {
                auto pen = [&](int i) { // |D+ q_i| D+ u_i at interface i+1/2
                    return std::abs((qa(i + 1) - qa(i)) / dx) * (c.at(u, i + 1) - c.at(u, i)) / dx;
                };
                drift += 0.5 * eta_q[l] * dx * dx * (pen(j) - pen(j - 1)) / dx;
            } else {
                drift += 0.5 * eta_q[l] * dx *
                         (c.at(u, j + 1) - 2.0 * u[j] + c.at(u, j - 1)) / (dx * dx);
            }
            r.drift[j] += drift;
            r.diffusion[l][j] = -q[j];
        }
    }
    return r;
}

} // namespace sldg::fd
