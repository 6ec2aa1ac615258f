#include "integrate/integrators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sldg::ti {

double select_dt(const StepController& ctl, double h, int k) {
    if (ctl.dt_fixed > 0.0) return ctl.dt_fixed;
    if (ctl.c_h2 > 0.0) return ctl.c_h2 * h * h;
    if (!ctl.use_cfl) throw std::invalid_argument("select_dt: no rule configured");
    if (!(h > 0.0) || k < 0) throw std::invalid_argument("select_dt: bad h or k");
    if (ctl.lambda_max == 0.0 && ctl.a_max == 0.0)
        throw std::invalid_argument("select_dt: lambda_max and a_max both zero");
    const double inf = std::numeric_limits<double>::infinity();
    const double p = 2.0 * k + 1.0;
    const double conv = ctl.lambda_max > 0.0 ? ctl.kappa_c * h / (p * ctl.lambda_max) : inf;
    double diff = inf;
    if (ctl.a_max > 0.0) {
        diff = ctl.kappa_d * h * h / (p * p * ctl.a_max);
        if (ctl.parabolic_2d) diff *= 0.5;
    }
    return std::min(conv, diff);
}

namespace {
using M = core::DGCoefficients;

M lincomb(const M& a, double ca, const M& b, double cb) {
    M out = a;
    out.scale(ca);
    out.axpy(cb, b);
    return out;
}
} // namespace

bool euler_maruyama(const ldg::SemiDiscreteSystem& sys, M& u, double dt,
                    const std::vector<double>& dW) {
    if (!(dt > 0.0)) throw std::invalid_argument("euler_maruyama: dt must be > 0");
    if (static_cast<int>(dW.size()) != sys.n_modes)
        throw std::invalid_argument("euler_maruyama: wrong number of increments");
    M work(sys.dof, sys.n_elems);
    sys.drift(u, work);
    M next = u;
    next.axpy(dt, work);
    for (int l = 0; l < sys.n_modes; ++l) {
        sys.diffusion(l, u, work);
        next.axpy(dW[l], work);
    }
    if (!next.all_finite()) return false;
    u = std::move(next);
    return true;
}

bool srk32_scalar(const ldg::SemiDiscreteSystem& sys, M& u, double dt, double dW, double dZ) {
    if (!(dt > 0.0)) throw std::invalid_argument("srk32_scalar: dt must be > 0");
    if (sys.n_modes != 1) throw std::invalid_argument("srk32_scalar: single noise mode required");
    const double sq = std::sqrt(dt);

    M b_u(sys.dof, sys.n_elems), s_u(sys.dof, sys.n_elems);
    sys.drift(u, b_u);
    sys.diffusion(0, u, s_u);

    M base = u;
    base.axpy(dt, b_u);
    M up = base, um = base;
    up.axpy(sq, s_u);
    um.axpy(-sq, s_u);
    if (!up.all_finite() || !um.all_finite()) return false;

    M b_up(sys.dof, sys.n_elems), b_um(sys.dof, sys.n_elems);
    M s_up(sys.dof, sys.n_elems), s_um(sys.dof, sys.n_elems);
    sys.drift(up, b_up);
    sys.drift(um, b_um);
    sys.diffusion(0, up, s_up);
    sys.diffusion(0, um, s_um);

    M phip = up, phim = up;
    phip.axpy(sq, s_up);
    phim.axpy(-sq, s_up);
    M s_phip(sys.dof, sys.n_elems), s_phim(sys.dof, sys.n_elems);
    sys.diffusion(0, phip, s_phip);
    sys.diffusion(0, phim, s_phim);

    M next = u;
    next.axpy(dt, b_u);
    next.axpy(dW, s_u);
    next.axpy(dZ / (2.0 * sq), lincomb(b_up, 1.0, b_um, -1.0));
    {
        M t = b_up;
        t.axpy(-2.0, b_u);
        t.axpy(1.0, b_um);
        next.axpy(0.25 * dt, t);
    }
    next.axpy((dW * dW - dt) / (4.0 * sq), lincomb(s_up, 1.0, s_um, -1.0));
    {
        M t = s_up;
        t.axpy(-2.0, s_u);
        t.axpy(1.0, s_um);
        next.axpy((dW * dt - dZ) / (2.0 * dt), t);
    }
    {
        M t = s_phip;
        t.axpy(-1.0, s_phim);
        t.axpy(-1.0, s_up);
        t.axpy(1.0, s_um);
        next.axpy((dW * dW / 3.0 - dt) * dW / (4.0 * dt), t);
    }
    if (!next.all_finite()) return false;
    u = std::move(next);
    return true;
}

bool srk32_multi(const ldg::SemiDiscreteSystem& sys, M& u, double dt,
                 const noise::IteratedIntegrals& ii) {
    if (!(dt > 0.0)) throw std::invalid_argument("srk32_multi: dt must be > 0");
    const int L = sys.n_modes;
    if (ii.L != L) throw std::invalid_argument("srk32_multi: integrals have wrong mode count");
    if (L > 1 && !ii.has_triples)
        throw std::invalid_argument("srk32_multi: triple integrals required for multiple modes");
    const double sq = std::sqrt(dt);

    // Sigma_0 := drift; sig0[l] = Sigma_l(u).
    M b_u(sys.dof, sys.n_elems);
    sys.drift(u, b_u);
    std::vector<M> sig0(L, M(sys.dof, sys.n_elems));
    for (int l = 0; l < L; ++l) sys.diffusion(l, u, sig0[l]);

    M base = u;
    base.axpy(dt / L, b_u);
    std::vector<M> up(L), um(L);
    for (int l = 0; l < L; ++l) {
        up[l] = base;
        up[l].axpy(sq, sig0[l]);
        um[l] = base;
        um[l].axpy(-sq, sig0[l]);
        if (!up[l].all_finite() || !um[l].all_finite()) return false;
    }

    // Sigma_{l2}(u_{l1}^{+/-}) for l2 in L u {0}.
    std::vector<M> b_up(L, M(sys.dof, sys.n_elems)), b_um(L, M(sys.dof, sys.n_elems));
    std::vector<std::vector<M>> s_up(L), s_um(L);
    for (int l1 = 0; l1 < L; ++l1) {
        sys.drift(up[l1], b_up[l1]);
        sys.drift(um[l1], b_um[l1]);
        s_up[l1].assign(L, M(sys.dof, sys.n_elems));
        s_um[l1].assign(L, M(sys.dof, sys.n_elems));
        for (int l2 = 0; l2 < L; ++l2) {
            sys.diffusion(l2, up[l1], s_up[l1][l2]);
            sys.diffusion(l2, um[l1], s_um[l1][l2]);
        }
    }

    M next = u;
    next.axpy(dt, b_u);
    for (int l = 0; l < L; ++l) next.axpy(ii.dW[l], sig0[l]);

    // (1/(2 sqrt(dt))) sum_{l2 in L u {0}} sum_{l1} (S_{l2}(u_{l1}+) - S_{l2}(u_{l1}-)) I_(l1,l2)
    for (int l1 = 0; l1 < L; ++l1) {
        {
            M t = b_up[l1];
            t.axpy(-1.0, b_um[l1]);
            next.axpy(ii.I_l0[l1] / (2.0 * sq), t); // l2 = 0: I_(l1,0) = dZ_{l1}
        }
        for (int l2 = 0; l2 < L; ++l2) {
            M t = s_up[l1][l2];
            t.axpy(-1.0, s_um[l1][l2]);
            next.axpy(ii.pair(l1, l2) / (2.0 * sq), t);
        }
    }

    // (1/(2 dt)) sum_{l2 in L u {0}} sum_{l1} (S_{l2}(u_{l1}+) - 2 S_{l2}(u) + S_{l2}(u_{l1}-)) I_(0,l2)
    for (int l1 = 0; l1 < L; ++l1) {
        {
            M t = b_up[l1];
            t.axpy(-2.0, b_u);
            t.axpy(1.0, b_um[l1]);
            next.axpy(ii.I_00 / (2.0 * dt), t);
        }
        for (int l2 = 0; l2 < L; ++l2) {
            M t = s_up[l1][l2];
            t.axpy(-2.0, sig0[l2]);
            t.axpy(1.0, s_um[l1][l2]);
            next.axpy(ii.I_0l[l2] / (2.0 * dt), t);
        }
    }

    // Triple-integral correction.
    M phi_p(sys.dof, sys.n_elems), phi_m(sys.dof, sys.n_elems);
    M s_pp(sys.dof, sys.n_elems), s_pm(sys.dof, sys.n_elems);
    for (int l1 = 0; l1 < L; ++l1) {
        for (int l2 = 0; l2 < L; ++l2) {
            phi_p = up[l1];
            phi_p.axpy(sq, s_up[l1][l2]);
            phi_m = up[l1];
            phi_m.axpy(-sq, s_up[l1][l2]);
            for (int l3 = 0; l3 < L; ++l3) {
                const double w = (L == 1 && !ii.has_triples)
                                     ? 0.5 * (ii.dW[l1] * ii.dW[l1] / 3.0 - dt) * ii.dW[l1]
                                     : ii.triple(l1, l2, l3);
                if (w == 0.0) continue;
                sys.diffusion(l3, phi_p, s_pp);
                sys.diffusion(l3, phi_m, s_pm);
                M t = s_pp;
                t.axpy(-1.0, s_pm);
                t.axpy(-1.0, s_up[l1][l3]);
                t.axpy(1.0, s_um[l1][l3]);
                next.axpy(w / (2.0 * dt), t);
            }
        }
    }
    if (!next.all_finite()) return false;
    u = std::move(next);
    return true;
}

DenseLinearSystem materialize(const ldg::SemiDiscreteSystem& sys) {
    if (sys.n_modes != 1) throw std::invalid_argument("materialize: single-mode systems only");
    DenseLinearSystem d;
    d.n = sys.dof * sys.n_elems;
    d.A.assign(static_cast<size_t>(d.n) * d.n, 0.0);
    d.C.assign(static_cast<size_t>(d.n) * d.n, 0.0);
    M e(sys.dof, sys.n_elems), col(sys.dof, sys.n_elems);
    for (int j = 0; j < d.n; ++j) {
        e.set_zero();
        e.data[j] = 1.0;
        sys.drift(e, col);
        for (int i = 0; i < d.n; ++i) d.A[static_cast<size_t>(i) * d.n + j] = col.data[i];
        sys.diffusion(0, e, col);
        for (int i = 0; i < d.n; ++i) d.C[static_cast<size_t>(i) * d.n + j] = col.data[i];
    }
    return d;
}

bool theta_step(const DenseLinearSystem& sys, std::vector<double>& u, double dt, double dW,
                double theta_t) {
    const int n = sys.n;
    if (theta_t < 0.0 || theta_t > 1.0) throw std::invalid_argument("theta_step: theta_t not in [0,1]");
    // rhs = (Id + (1-theta) dt A) u + dW C u.
    std::vector<double> rhs(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = u[i];
        for (int j = 0; j < n; ++j)
            s += ((1.0 - theta_t) * dt * sys.A[static_cast<size_t>(i) * n + j] +
                  dW * sys.C[static_cast<size_t>(i) * n + j]) *
                 u[j];
        rhs[i] = s;
    }
    if (theta_t == 0.0) {
        u = std::move(rhs);
        for (double v : u)
            if (!std::isfinite(v)) return false;
        return true;
    }
    // Solve (Id - theta dt A) x = rhs by Gaussian elimination.
    std::vector<double> Mstar(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            Mstar[static_cast<size_t>(i) * n + j] =
                (i == j ? 1.0 : 0.0) - theta_t * dt * sys.A[static_cast<size_t>(i) * n + j];
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(Mstar[static_cast<size_t>(r) * n + col]) >
                std::abs(Mstar[static_cast<size_t>(piv) * n + col]))
                piv = r;
        if (std::abs(Mstar[static_cast<size_t>(piv) * n + col]) < 1e-300)
            throw std::runtime_error("theta_step: singular system matrix");
        if (piv != col) {
            for (int c2 = 0; c2 < n; ++c2)
                std::swap(Mstar[static_cast<size_t>(col) * n + c2], Mstar[static_cast<size_t>(piv) * n + c2]);
            std::swap(rhs[col], rhs[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = Mstar[static_cast<size_t>(r) * n + col] / Mstar[static_cast<size_t>(col) * n + col];
            if (f == 0.0) continue;
            for (int c2 = col; c2 < n; ++c2)
                Mstar[static_cast<size_t>(r) * n + c2] -= f * Mstar[static_cast<size_t>(col) * n + c2];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int c2 = r + 1; c2 < n; ++c2) s -= Mstar[static_cast<size_t>(r) * n + c2] * u[c2];
        u[r] = s / Mstar[static_cast<size_t>(r) * n + r];
    }
    for (double v : u)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace sldg::ti
