#include "ldg/nonlinear.hpp"

#include <cmath>
#include <stdexcept>

#include "core/traces.hpp"

namespace sldg::ldg {

namespace {
double jump_eps(double um, double up) { return 1e-10 * (1.0 + std::abs(um) + std::abs(up)); }

double ratio_g(const FluxTriple& t, double um, double up) {
    if (std::abs(up - um) < jump_eps(um, up)) return t.gprime(0.5 * (um + up));
    return (t.g(up) - t.g(um)) / (up - um);
}

double ratio_G(const FluxTriple& t, double um, double up) {
    if (std::abs(up - um) < jump_eps(um, up)) return t.g(0.5 * (um + up));
    return (t.Gint(up) - t.Gint(um)) / (up - um);
}
} // namespace

NonlinearFaceFlux flux_mean(double um, double up, double qm, double qp, double sn, const FluxTriple& t,
                            double eta_q, double eta_u) {
    NonlinearFaceFlux f;
    const double s = sgn0(sn);
    f.F_gq = sn * (ratio_g(t, um, up) * 0.5 * (qm + qp) + eta_q * s * (up - um));
    f.F_g = sn * (0.5 * (t.g(um) + t.g(up)) + eta_u * s * (qp - qm));
    return f;
}

NonlinearFaceFlux flux_pathwise(double um, double up, double qm, double qp, double sn,
                                const FluxTriple& t, double eta_q) {
    NonlinearFaceFlux f;
    const double s = sgn0(sn);
    f.F_gq = sn * (ratio_g(t, um, up) * 0.5 * (qm + qp) + eta_q * s * (up - um) * std::abs(qp - qm));
    f.F_g = sn * ratio_G(t, um, up);
    return f;
}

double pathwise_penalty_bound(const FluxTriple& t, double state_lo, double state_hi) {
    if (t.has_g2_max()) return t.g2_max / 12.0;
    if (t.g2) {
        const int n = 4096;
        double worst = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double u = state_lo + (state_hi - state_lo) * i / n;
            worst = std::max(worst, std::abs(t.g2(u)));
        }
        return worst / 12.0;
    }
    throw std::invalid_argument("pathwise_penalty_bound: no g'' bound available");
}

// ---------------------------------------------------------------------------
// 1D
// ---------------------------------------------------------------------------

NonlinearLDG1D::NonlinearLDG1D(const core::Grid1D& grid, int degree, NoiseModel model, FluxFamily family,
                               int n_quad)
    : grid_(grid),
      basis_(degree, n_quad > 0 ? n_quad : 2 * degree + 2),
      model_(std::move(model)),
      family_(family) {
    if (model_.n_modes() == 0) throw std::invalid_argument("NonlinearLDG1D: empty noise model");
    for (const auto& m : model_.modes) {
        if (m.sigma.dim != 1) throw std::invalid_argument("NonlinearLDG1D: sigma field must be 1D");
        if (family_ == FluxFamily::Mean && m.eta_u != 0.0)
            throw std::invalid_argument("NonlinearLDG1D: local elimination requires eta_u = 0");
    }
    const int N = grid_.n_cells;
    const int nq = basis_.quad.size();
    const double dx = grid_.dx();
    sig_q_.assign(model_.n_modes(), std::vector<double>(static_cast<size_t>(N) * nq));
    sig_if_.assign(model_.n_modes(), std::vector<double>(N + 1));
    for (int l = 0; l < model_.n_modes(); ++l) {
        for (int j = 0; j < N; ++j) {
            const double xc = grid_.cell_center(j);
            for (int q = 0; q < nq; ++q)
                sig_q_[l][static_cast<size_t>(j) * nq + q] =
                    model_.modes[l].sigma.f1(xc + 0.5 * dx * basis_.quad.nodes[q]);
        }
        for (int i = 0; i <= N; ++i) sig_if_[l][i] = model_.modes[l].sigma.f1(grid_.interface_x(i));
    }
}

void NonlinearLDG1D::aux(int mode, const core::DGCoefficients& u, core::DGCoefficients& q) const {
    const int N = grid_.n_cells;
    const int nd = basis_.dof();
    const int nq = basis_.quad.size();
    const double dx = grid_.dx();
    if (q.dof != nd || q.n_elems != N) q = core::DGCoefficients(nd, N);
    const NoiseMode& nm = model_.modes[mode];

    std::vector<double> Fg(N + 1);
    for (int i = 0; i <= N; ++i) {
        const core::TracePair ut = core::trace_pair(u, basis_, grid_, i);
        const double sn = sig_if_[mode][i];
        if (family_ == FluxFamily::Pathwise)
            Fg[i] = flux_pathwise(ut.minus, ut.plus, 0.0, 0.0, sn, nm.flux, nm.eta_q).F_g;
        else
            Fg[i] = flux_mean(ut.minus, ut.plus, 0.0, 0.0, sn, nm.flux, nm.eta_q, 0.0).F_g;
    }

    std::vector<double> gq(nq);
    for (int j = 0; j < N; ++j) {
        const double* c = u.col(j);
        for (int p = 0; p < nq; ++p) {
            double s = 0.0;
            for (int m = 0; m < nd; ++m) s += c[m] * basis_.phi[m][p];
            gq[p] = nm.flux.g(s);
        }
        for (int m = 0; m < nd; ++m) {
            double vol = 0.0;
            for (int p = 0; p < nq; ++p)
                vol += basis_.quad.weights[p] * sig_q_[mode][static_cast<size_t>(j) * nq + p] * gq[p] *
                       basis_.dphi[m][p];
            const double rhs =
                -vol + Fg[j + 1] * basis_.right_trace[m] - Fg[j] * basis_.left_trace[m];
            q(m, j) = rhs * (2.0 * m + 1.0) / dx;
        }
    }
}

void NonlinearLDG1D::drift(const core::DGCoefficients& u, core::DGCoefficients& out) const {
    const int N = grid_.n_cells;
    const int nd = basis_.dof();
    const int nq = basis_.quad.size();
    const double dx = grid_.dx();
    if (out.dof != nd || out.n_elems != N) out = core::DGCoefficients(nd, N);
    out.set_zero();

    core::DGCoefficients q;
    std::vector<double> Fgq(N + 1), uvals(nq), qvals(nq);
    for (int l = 0; l < model_.n_modes(); ++l) {
        const NoiseMode& nm = model_.modes[l];
        aux(l, u, q);
        for (int i = 0; i <= N; ++i) {
            const core::TracePair ut = core::trace_pair(u, basis_, grid_, i);
            const core::TracePair qt = core::trace_pair(q, basis_, grid_, i);
            const double sn = sig_if_[l][i];
            if (family_ == FluxFamily::Pathwise)
                Fgq[i] = flux_pathwise(ut.minus, ut.plus, qt.minus, qt.plus, sn, nm.flux, nm.eta_q).F_gq;
            else
                Fgq[i] =
                    flux_mean(ut.minus, ut.plus, qt.minus, qt.plus, sn, nm.flux, nm.eta_q, nm.eta_u).F_gq;
        }
        for (int j = 0; j < N; ++j) {
            const double* cu = u.col(j);
            const double* cq = q.col(j);
            for (int p = 0; p < nq; ++p) {
                double su = 0.0, sq = 0.0;
                for (int m = 0; m < nd; ++m) {
                    su += cu[m] * basis_.phi[m][p];
                    sq += cq[m] * basis_.phi[m][p];
                }
                uvals[p] = su;
                qvals[p] = sq;
            }
            for (int m = 0; m < nd; ++m) {
                double vol = 0.0;
                for (int p = 0; p < nq; ++p)
                    vol += basis_.quad.weights[p] * sig_q_[l][static_cast<size_t>(j) * nq + p] *
                           nm.flux.gprime(uvals[p]) * qvals[p] * basis_.dphi[m][p];
                const double val = -0.5 * vol + 0.5 * (Fgq[j + 1] * basis_.right_trace[m] -
                                                       Fgq[j] * basis_.left_trace[m]);
                out(m, j) += val * (2.0 * m + 1.0) / dx;
            }
        }
    }
}

void NonlinearLDG1D::diffusion(int mode, const core::DGCoefficients& u, core::DGCoefficients& out) const {
    aux(mode, u, out);
    out.scale(-1.0);
}

double NonlinearLDG1D::b_form(int mode, const core::DGCoefficients& u, const core::DGCoefficients& q,
                              const core::DGCoefficients& v, int j) const {
    const int nd = basis_.dof();
    const int nq = basis_.quad.size();
    const NoiseMode& nm = model_.modes[mode];
    double vol = 0.0;
    for (int p = 0; p < nq; ++p) {
        double uv = 0.0, qv = 0.0, dvv = 0.0;
        for (int m = 0; m < nd; ++m) {
            uv += u(m, j) * basis_.phi[m][p];
            qv += q(m, j) * basis_.phi[m][p];
            dvv += v(m, j) * basis_.dphi[m][p];
        }
        vol += basis_.quad.weights[p] * sig_q_[mode][static_cast<size_t>(j) * nq + p] *
               nm.flux.gprime(uv) * qv * dvv;
    }
    double fgq_r, fgq_l;
    {
        const core::TracePair ut_r = core::trace_pair(u, basis_, grid_, j + 1);
        const core::TracePair qt_r = core::trace_pair(q, basis_, grid_, j + 1);
        const core::TracePair ut_l = core::trace_pair(u, basis_, grid_, j);
        const core::TracePair qt_l = core::trace_pair(q, basis_, grid_, j);
        if (family_ == FluxFamily::Pathwise) {
            fgq_r = flux_pathwise(ut_r.minus, ut_r.plus, qt_r.minus, qt_r.plus, sig_if_[mode][j + 1],
                                  nm.flux, nm.eta_q)
                        .F_gq;
            fgq_l = flux_pathwise(ut_l.minus, ut_l.plus, qt_l.minus, qt_l.plus, sig_if_[mode][j], nm.flux,
                                  nm.eta_q)
                        .F_gq;
        } else {
            fgq_r = flux_mean(ut_r.minus, ut_r.plus, qt_r.minus, qt_r.plus, sig_if_[mode][j + 1], nm.flux,
                              nm.eta_q, nm.eta_u)
                        .F_gq;
            fgq_l = flux_mean(ut_l.minus, ut_l.plus, qt_l.minus, qt_l.plus, sig_if_[mode][j], nm.flux,
                              nm.eta_q, nm.eta_u)
                        .F_gq;
        }
    }
    double v_right = 0.0, v_left = 0.0;
    for (int m = 0; m < nd; ++m) {
        v_right += v(m, j) * basis_.right_trace[m];
        v_left += v(m, j) * basis_.left_trace[m];
    }
    return -0.5 * vol + 0.5 * (fgq_r * v_right - fgq_l * v_left);
}

double NonlinearLDG1D::interface_energy(const core::DGCoefficients& u,
                                        const std::vector<core::DGCoefficients>& q_modes,
                                        int interface) const {
    double total = 0.0;
    const core::TracePair ut = core::trace_pair(u, basis_, grid_, interface);
    for (int l = 0; l < model_.n_modes(); ++l) {
        const NoiseMode& nm = model_.modes[l];
        const core::TracePair qt = core::trace_pair(q_modes[l], basis_, grid_, interface);
        const double sn = sig_if_[l][interface];
        NonlinearFaceFlux f;
        if (family_ == FluxFamily::Pathwise)
            f = flux_pathwise(ut.minus, ut.plus, qt.minus, qt.plus, sn, nm.flux, nm.eta_q);
        else
            f = flux_mean(ut.minus, ut.plus, qt.minus, qt.plus, sn, nm.flux, nm.eta_q, nm.eta_u);
        total += sn * (nm.flux.g(ut.plus) * qt.plus - nm.flux.g(ut.minus) * qt.minus) -
                 (ut.plus - ut.minus) * f.F_gq - (qt.plus - qt.minus) * f.F_g;
    }
    return total;
}

double NonlinearLDG1D::cell_q_norm2(const core::DGCoefficients& q, int j) const {
    double s = 0.0;
    const double dx = grid_.dx();
    for (int m = 0; m < basis_.dof(); ++m) s += q(m, j) * q(m, j) * dx / (2.0 * m + 1.0);
    return s;
}

// ---------------------------------------------------------------------------
// 2D
// ---------------------------------------------------------------------------

struct NonlinearLDG2D::Face {
    int cm = -1;       // cell on the -n side
    int cp = -1;       // cell on the +n side
    int dir = 0;       // 0: normal +e1, 1: normal +e2
    std::vector<double> px, py;
};

NonlinearLDG2D::NonlinearLDG2D(const core::QuadMesh2D& mesh, int degree, NoiseModel model,
                               FluxFamily family, int n_quad)
    : mesh_(mesh),
      basis_(degree, n_quad > 0 ? n_quad : 2 * degree + 2),
      model_(std::move(model)),
      family_(family) {
    if (model_.n_modes() == 0) throw std::invalid_argument("NonlinearLDG2D: empty noise model");
    if (!model_.divergence_free)
        throw std::invalid_argument("NonlinearLDG2D: 2D requires divergence-free sigma");
    for (const auto& m : model_.modes) {
        if (m.sigma.dim != 2) throw std::invalid_argument("NonlinearLDG2D: sigma field must be 2D");
        if (family_ == FluxFamily::Mean && m.eta_u != 0.0)
            throw std::invalid_argument("NonlinearLDG2D: local elimination requires eta_u = 0");
    }

    const int nq = basis_.b1.quad.size();
    const int nd = basis_.dof();
    const double dx = mesh_.dx(), dy = mesh_.dy();
    const auto& q1 = basis_.b1.quad;

    // Edge basis tables at the 1D face quadrature points.
    edgeL_.assign(nd, std::vector<double>(nq));
    edgeR_.assign(nd, std::vector<double>(nq));
    edgeB_.assign(nd, std::vector<double>(nq));
    edgeT_.assign(nd, std::vector<double>(nq));
    for (int m = 0; m < nd; ++m) {
        const int a = basis_.mode_a(m), b = basis_.mode_b(m);
        for (int q = 0; q < nq; ++q) {
            edgeR_[m][q] = basis_.b1.right_trace[a] * basis_.b1.phi[b][q];
            edgeL_[m][q] = basis_.b1.left_trace[a] * basis_.b1.phi[b][q];
            edgeT_[m][q] = basis_.b1.phi[a][q] * basis_.b1.right_trace[b];
            edgeB_[m][q] = basis_.b1.phi[a][q] * basis_.b1.left_trace[b];
        }
    }

    // Face list.
    const bool periodic = mesh_.boundary == core::Boundary::Periodic;
    auto add_xface = [&](int i, int j) {
        Face f;
        f.dir = 0;
        const double x = mesh_.x_min + i * dx;
        f.px.assign(nq, x);
        f.py.resize(nq);
        for (int q = 0; q < nq; ++q) f.py[q] = mesh_.cell_y(j) + 0.5 * dy * q1.nodes[q];
        if (periodic) {
            f.cm = mesh_.cell_id((i - 1 + mesh_.nx) % mesh_.nx, j);
            f.cp = mesh_.cell_id(i % mesh_.nx, j);
        } else {
            f.cm = (i > 0) ? mesh_.cell_id(i - 1, j) : -1;
            f.cp = (i < mesh_.nx) ? mesh_.cell_id(i, j) : -1;
        }
        faces_.push_back(std::move(f));
    };
    auto add_yface = [&](int i, int j) {
        Face f;
        f.dir = 1;
        const double y = mesh_.y_min + j * dy;
        f.py.assign(nq, y);
        f.px.resize(nq);
        for (int q = 0; q < nq; ++q) f.px[q] = mesh_.cell_x(i) + 0.5 * dx * q1.nodes[q];
        if (periodic) {
            f.cm = mesh_.cell_id(i, (j - 1 + mesh_.ny) % mesh_.ny);
            f.cp = mesh_.cell_id(i, j % mesh_.ny);
        } else {
            f.cm = (j > 0) ? mesh_.cell_id(i, j - 1) : -1;
            f.cp = (j < mesh_.ny) ? mesh_.cell_id(i, j) : -1;
        }
        faces_.push_back(std::move(f));
    };
    for (int j = 0; j < mesh_.ny; ++j)
        for (int i = 0; i < (periodic ? mesh_.nx : mesh_.nx + 1); ++i) add_xface(i, j);
    for (int j = 0; j < (periodic ? mesh_.ny : mesh_.ny + 1); ++j)
        for (int i = 0; i < mesh_.nx; ++i) add_yface(i, j);

    // Sigma tables at volume and face quadrature points.
    const int nq2 = nq * nq;
    sigvol_.assign(model_.n_modes(),
                   std::vector<double>(static_cast<size_t>(mesh_.n_cells()) * nq2 * 2));
    sign_.assign(model_.n_modes(), std::vector<double>(faces_.size() * nq));
    for (int l = 0; l < model_.n_modes(); ++l) {
        const auto& f2 = model_.modes[l].sigma.f2;
        for (int cj = 0; cj < mesh_.ny; ++cj)
            for (int ci = 0; ci < mesh_.nx; ++ci) {
                const int cell = mesh_.cell_id(ci, cj);
                for (int qy = 0; qy < nq; ++qy)
                    for (int qx = 0; qx < nq; ++qx) {
                        const double x = mesh_.cell_x(ci) + 0.5 * dx * q1.nodes[qx];
                        const double y = mesh_.cell_y(cj) + 0.5 * dy * q1.nodes[qy];
                        double sx, sy;
                        f2(x, y, sx, sy);
                        const size_t id = (static_cast<size_t>(cell) * nq2 + qy * nq + qx) * 2;
                        sigvol_[l][id] = sx;
                        sigvol_[l][id + 1] = sy;
                    }
            }
        for (size_t fi = 0; fi < faces_.size(); ++fi)
            for (int q = 0; q < nq; ++q) {
                double sx, sy;
                f2(faces_[fi].px[q], faces_[fi].py[q], sx, sy);
                sign_[l][fi * nq + q] = (faces_[fi].dir == 0) ? sx : sy;
            }
    }
}

void NonlinearLDG2D::face_traces(const core::DGCoefficients& field, const Face& f,
                                 std::vector<double>& minus, std::vector<double>& plus) const {
    const int nq = basis_.b1.quad.size();
    const int nd = basis_.dof();
    minus.assign(nq, 0.0);
    plus.assign(nq, 0.0);
    const auto& eM = (f.dir == 0) ? edgeR_ : edgeT_;
    const auto& eP = (f.dir == 0) ? edgeL_ : edgeB_;
    if (f.cm >= 0) {
        const double* c = field.col(f.cm);
        for (int m = 0; m < nd; ++m)
            for (int q = 0; q < nq; ++q) minus[q] += c[m] * eM[m][q];
    }
    if (f.cp >= 0) {
        const double* c = field.col(f.cp);
        for (int m = 0; m < nd; ++m)
            for (int q = 0; q < nq; ++q) plus[q] += c[m] * eP[m][q];
    }
    if (f.cm < 0) minus = plus;
    if (f.cp < 0) plus = minus;
}

void NonlinearLDG2D::aux(int mode, const core::DGCoefficients& u, core::DGCoefficients& q) const {
    const int nd = basis_.dof();
    const int nq = basis_.b1.quad.size();
    const int nq2 = nq * nq;
    const double dx = mesh_.dx(), dy = mesh_.dy();
    const auto& q1 = basis_.b1.quad;
    const NoiseMode& nm = model_.modes[mode];
    if (q.dof != nd || q.n_elems != mesh_.n_cells()) q = core::DGCoefficients(nd, mesh_.n_cells());
    q.set_zero();

    // Volume term: -int (grad phi_m . sigma) g(u).
    std::vector<double> uval(nq2);
    for (int cell = 0; cell < mesh_.n_cells(); ++cell) {
        const double* c = u.col(cell);
        for (int qy = 0; qy < nq; ++qy)
            for (int qx = 0; qx < nq; ++qx) {
                double s = 0.0;
                for (int m = 0; m < nd; ++m)
                    s += c[m] * basis_.b1.phi[basis_.mode_a(m)][qx] * basis_.b1.phi[basis_.mode_b(m)][qy];
                uval[qy * nq + qx] = s;
            }
        for (int m = 0; m < nd; ++m) {
            const int a = basis_.mode_a(m), b = basis_.mode_b(m);
            double vol = 0.0;
            for (int qy = 0; qy < nq; ++qy)
                for (int qx = 0; qx < nq; ++qx) {
                    const size_t id = (static_cast<size_t>(cell) * nq2 + qy * nq + qx) * 2;
                    const double w = q1.weights[qx] * q1.weights[qy];
                    const double gw = nm.flux.g(uval[qy * nq + qx]);
                    // grad phi . sigma, with the reference-to-physical scaling
                    // folded into the area weight dx*dy/4.
                    vol += w * gw *
                           (sigvol_[mode][id] * basis_.b1.dphi[a][qx] * basis_.b1.phi[b][qy] * 0.5 * dy +
                            sigvol_[mode][id + 1] * basis_.b1.phi[a][qx] * basis_.b1.dphi[b][qy] * 0.5 * dx);
                }
            q(m, cell) -= vol;
        }
    }

    // Face terms.
    std::vector<double> um, up;
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        const Face& f = faces_[fi];
        face_traces(u, f, um, up);
        const double half_len = 0.5 * ((f.dir == 0) ? dy : dx);
        const auto& eM = (f.dir == 0) ? edgeR_ : edgeT_;
        const auto& eP = (f.dir == 0) ? edgeL_ : edgeB_;
        for (int qq = 0; qq < nq; ++qq) {
            const double sn = sign_[mode][fi * nq + qq];
            double Fg;
            if (family_ == FluxFamily::Pathwise)
                Fg = flux_pathwise(um[qq], up[qq], 0.0, 0.0, sn, nm.flux, nm.eta_q).F_g;
            else
                Fg = flux_mean(um[qq], up[qq], 0.0, 0.0, sn, nm.flux, nm.eta_q, 0.0).F_g;
            const double w = q1.weights[qq] * half_len * Fg;
            if (f.cm >= 0)
                for (int m = 0; m < nd; ++m) q(m, f.cm) += w * eM[m][qq];
            if (f.cp >= 0)
                for (int m = 0; m < nd; ++m) q(m, f.cp) -= w * eP[m][qq];
        }
    }

    // Apply the inverse (diagonal) mass matrix.
    const double area = dx * dy;
    for (int cell = 0; cell < mesh_.n_cells(); ++cell)
        for (int m = 0; m < nd; ++m) {
            const int a = basis_.mode_a(m), b = basis_.mode_b(m);
            q(m, cell) *= (2.0 * a + 1.0) * (2.0 * b + 1.0) / area;
        }
}

void NonlinearLDG2D::drift(const core::DGCoefficients& u, core::DGCoefficients& out) const {
    const int nd = basis_.dof();
    const int nq = basis_.b1.quad.size();
    const int nq2 = nq * nq;
    const double dx = mesh_.dx(), dy = mesh_.dy();
    const auto& q1 = basis_.b1.quad;
    if (out.dof != nd || out.n_elems != mesh_.n_cells()) out = core::DGCoefficients(nd, mesh_.n_cells());
    out.set_zero();

    core::DGCoefficients q;
    core::DGCoefficients accum(nd, mesh_.n_cells());
    std::vector<double> uval(nq2), qval(nq2), um, up, qm, qp;
    for (int l = 0; l < model_.n_modes(); ++l) {
        const NoiseMode& nm = model_.modes[l];
        aux(l, u, q);
        accum.set_zero();
        for (int cell = 0; cell < mesh_.n_cells(); ++cell) {
            const double* cu = u.col(cell);
            const double* cq = q.col(cell);
            for (int qy = 0; qy < nq; ++qy)
                for (int qx = 0; qx < nq; ++qx) {
                    double su = 0.0, sq = 0.0;
                    for (int m = 0; m < nd; ++m) {
                        const double ph =
                            basis_.b1.phi[basis_.mode_a(m)][qx] * basis_.b1.phi[basis_.mode_b(m)][qy];
                        su += cu[m] * ph;
                        sq += cq[m] * ph;
                    }
                    uval[qy * nq + qx] = su;
                    qval[qy * nq + qx] = sq;
                }
            for (int m = 0; m < nd; ++m) {
                const int a = basis_.mode_a(m), b = basis_.mode_b(m);
                double vol = 0.0;
                for (int qy = 0; qy < nq; ++qy)
                    for (int qx = 0; qx < nq; ++qx) {
                        const size_t id = (static_cast<size_t>(cell) * nq2 + qy * nq + qx) * 2;
                        const double w = q1.weights[qx] * q1.weights[qy];
                        vol += w * nm.flux.gprime(uval[qy * nq + qx]) * qval[qy * nq + qx] *
                               (sigvol_[l][id] * basis_.b1.dphi[a][qx] * basis_.b1.phi[b][qy] * 0.5 * dy +
                                sigvol_[l][id + 1] * basis_.b1.phi[a][qx] * basis_.b1.dphi[b][qy] * 0.5 *
                                    dx);
                    }
                accum(m, cell) -= 0.5 * vol;
            }
        }
        for (size_t fi = 0; fi < faces_.size(); ++fi) {
            const Face& f = faces_[fi];
            face_traces(u, f, um, up);
            face_traces(q, f, qm, qp);
            const double half_len = 0.5 * ((f.dir == 0) ? dy : dx);
            const auto& eM = (f.dir == 0) ? edgeR_ : edgeT_;
            const auto& eP = (f.dir == 0) ? edgeL_ : edgeB_;
            for (int qq = 0; qq < nq; ++qq) {
                const double sn = sign_[l][fi * nq + qq];
                double Fgq;
                if (family_ == FluxFamily::Pathwise)
                    Fgq = flux_pathwise(um[qq], up[qq], qm[qq], qp[qq], sn, nm.flux, nm.eta_q).F_gq;
                else
                    Fgq = flux_mean(um[qq], up[qq], qm[qq], qp[qq], sn, nm.flux, nm.eta_q, nm.eta_u).F_gq;
                const double w = 0.5 * q1.weights[qq] * half_len * Fgq;
                if (f.cm >= 0)
                    for (int m = 0; m < nd; ++m) accum(m, f.cm) += w * eM[m][qq];
                if (f.cp >= 0)
                    for (int m = 0; m < nd; ++m) accum(m, f.cp) -= w * eP[m][qq];
            }
        }
        const double area = dx * dy;
        for (int cell = 0; cell < mesh_.n_cells(); ++cell)
            for (int m = 0; m < nd; ++m) {
                const int a = basis_.mode_a(m), b = basis_.mode_b(m);
                out(m, cell) += accum(m, cell) * (2.0 * a + 1.0) * (2.0 * b + 1.0) / area;
            }
    }
}

void NonlinearLDG2D::diffusion(int mode, const core::DGCoefficients& u, core::DGCoefficients& out) const {
    aux(mode, u, out);
    out.scale(-1.0);
}

double NonlinearLDG2D::b_form(int mode, const core::DGCoefficients& u, const core::DGCoefficients& q,
                              const core::DGCoefficients& v, int cell) const {
    const int nd = basis_.dof();
    const int nq = basis_.b1.quad.size();
    const int nq2 = nq * nq;
    const double dx = mesh_.dx(), dy = mesh_.dy();
    const auto& q1 = basis_.b1.quad;
    const NoiseMode& nm = model_.modes[mode];

    double vol = 0.0;
    for (int qy = 0; qy < nq; ++qy)
        for (int qx = 0; qx < nq; ++qx) {
            double su = 0.0, sq = 0.0, dvx = 0.0, dvy = 0.0;
            for (int m = 0; m < nd; ++m) {
                const int a = basis_.mode_a(m), b = basis_.mode_b(m);
                const double ph = basis_.b1.phi[a][qx] * basis_.b1.phi[b][qy];
                su += u(m, cell) * ph;
                sq += q(m, cell) * ph;
                dvx += v(m, cell) * basis_.b1.dphi[a][qx] * basis_.b1.phi[b][qy];
                dvy += v(m, cell) * basis_.b1.phi[a][qx] * basis_.b1.dphi[b][qy];
            }
            const size_t id = (static_cast<size_t>(cell) * nq2 + qy * nq + qx) * 2;
            const double w = q1.weights[qx] * q1.weights[qy];
            vol += w * nm.flux.gprime(su) * sq *
                   (sigvol_[mode][id] * dvx * 0.5 * dy + sigvol_[mode][id + 1] * dvy * 0.5 * dx);
        }

    double face_sum = 0.0;
    std::vector<double> um, up, qm, qp, vm, vp;
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        const Face& f = faces_[fi];
        if (f.cm != cell && f.cp != cell) continue;
        face_traces(u, f, um, up);
        face_traces(q, f, qm, qp);
        face_traces(v, f, vm, vp);
        const double half_len = 0.5 * ((f.dir == 0) ? dy : dx);
        for (int qq = 0; qq < nq; ++qq) {
            const double sn = sign_[mode][fi * nq + qq];
            double Fgq;
            if (family_ == FluxFamily::Pathwise)
                Fgq = flux_pathwise(um[qq], up[qq], qm[qq], qp[qq], sn, nm.flux, nm.eta_q).F_gq;
            else
                Fgq = flux_mean(um[qq], up[qq], qm[qq], qp[qq], sn, nm.flux, nm.eta_q, nm.eta_u).F_gq;
            // Outward orientation: +F for the -n cell, -F for the +n cell.
            if (f.cm == cell) face_sum += q1.weights[qq] * half_len * Fgq * vm[qq];
            if (f.cp == cell) face_sum -= q1.weights[qq] * half_len * Fgq * vp[qq];
        }
    }
    return -0.5 * vol + 0.5 * face_sum;
}

double NonlinearLDG2D::cell_q_norm2(const core::DGCoefficients& q, int cell) const {
    const double area = mesh_.dx() * mesh_.dy();
    double s = 0.0;
    for (int m = 0; m < basis_.dof(); ++m) {
        const int a = basis_.mode_a(m), b = basis_.mode_b(m);
        s += q(m, cell) * q(m, cell) * area / ((2.0 * a + 1.0) * (2.0 * b + 1.0));
    }
    return s;
}

double NonlinearLDG2D::total_interface_energy(const core::DGCoefficients& u,
                                              const std::vector<core::DGCoefficients>& q_modes) const {
    const int nq = basis_.b1.quad.size();
    const auto& q1 = basis_.b1.quad;
    const double dx = mesh_.dx(), dy = mesh_.dy();
    double total = 0.0;
    std::vector<double> um, up, qm, qp;
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        const Face& f = faces_[fi];
        face_traces(u, f, um, up);
        const double half_len = 0.5 * ((f.dir == 0) ? dy : dx);
        for (int l = 0; l < model_.n_modes(); ++l) {
            const NoiseMode& nm = model_.modes[l];
            face_traces(q_modes[l], f, qm, qp);
            for (int qq = 0; qq < nq; ++qq) {
                const double sn = sign_[l][fi * nq + qq];
                NonlinearFaceFlux fl;
                if (family_ == FluxFamily::Pathwise)
                    fl = flux_pathwise(um[qq], up[qq], qm[qq], qp[qq], sn, nm.flux, nm.eta_q);
                else
                    fl = flux_mean(um[qq], up[qq], qm[qq], qp[qq], sn, nm.flux, nm.eta_q, nm.eta_u);
                total += q1.weights[qq] * half_len *
                         (sn * (nm.flux.g(up[qq]) * qp[qq] - nm.flux.g(um[qq]) * qm[qq]) -
                          (up[qq] - um[qq]) * fl.F_gq - (qp[qq] - qm[qq]) * fl.F_g);
            }
        }
    }
    return total;
}

double NonlinearLDG2D::total_uq_inner(const core::DGCoefficients& u,
                                      const std::vector<core::DGCoefficients>& q_modes) const {
    const double area = mesh_.dx() * mesh_.dy();
    double total = 0.0;
    for (int l = 0; l < model_.n_modes(); ++l)
        for (int cell = 0; cell < mesh_.n_cells(); ++cell)
            for (int m = 0; m < basis_.dof(); ++m) {
                const int a = basis_.mode_a(m), b = basis_.mode_b(m);
                total += u(m, cell) * q_modes[l](m, cell) * area / ((2.0 * a + 1.0) * (2.0 * b + 1.0));
            }
    return total;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const NonlinearLDG1D> make_nonlinear_operator(const core::Grid1D& grid, int degree,
                                                              const NoiseModel& model, FluxFamily family,
                                                              int n_quad) {
    return std::make_shared<const NonlinearLDG1D>(grid, degree, model, family, n_quad);
}

std::shared_ptr<const NonlinearLDG2D> make_nonlinear_operator_2d(const core::QuadMesh2D& mesh, int degree,
                                                                 const NoiseModel& model, FluxFamily family,
                                                                 int n_quad) {
    return std::make_shared<const NonlinearLDG2D>(mesh, degree, model, family, n_quad);
}

SemiDiscreteSystem assemble_nonlinear(const core::Grid1D& grid, int degree, const NoiseModel& model,
                                      FluxFamily family, int n_quad) {
    auto op = make_nonlinear_operator(grid, degree, model, family, n_quad);
    SemiDiscreteSystem sys;
    sys.dof = op->basis().dof();
    sys.n_elems = grid.n_cells;
    sys.n_modes = op->n_modes();
    sys.drift = [op](const core::DGCoefficients& u, core::DGCoefficients& out) { op->drift(u, out); };
    sys.diffusion = [op](int l, const core::DGCoefficients& u, core::DGCoefficients& out) {
        op->diffusion(l, u, out);
    };
    sys.aux = [op](int l, const core::DGCoefficients& u, core::DGCoefficients& out) { op->aux(l, u, out); };
    return sys;
}

SemiDiscreteSystem assemble_nonlinear_2d(const core::QuadMesh2D& mesh, int degree, const NoiseModel& model,
                                         FluxFamily family, int n_quad) {
    auto op = make_nonlinear_operator_2d(mesh, degree, model, family, n_quad);
    SemiDiscreteSystem sys;
    sys.dof = op->basis().dof();
    sys.n_elems = mesh.n_cells();
    sys.n_modes = op->n_modes();
    sys.drift = [op](const core::DGCoefficients& u, core::DGCoefficients& out) { op->drift(u, out); };
    sys.diffusion = [op](int l, const core::DGCoefficients& u, core::DGCoefficients& out) {
        op->diffusion(l, u, out);
    };
    sys.aux = [op](int l, const core::DGCoefficients& u, core::DGCoefficients& out) { op->aux(l, u, out); };
    return sys;
}

} // namespace sldg::ldg
