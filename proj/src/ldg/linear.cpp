#include "ldg/linear.hpp"

#include <stdexcept>

namespace sldg::ldg {

double flux_Fu(double um, double up, double s2p, const FluxParams& p, LinearForm form) {
    const double central = 0.5 * (um + up);
    double sided;
    if (form == LinearForm::Continuity) {
        sided = (s2p >= 0.0) ? up : um; // downwind
    } else {
        sided = (s2p >= 0.0) ? um : up; // upwind
    }
    const double pen = p.gamma_tilde * sgn0(s2p) * (up - um);
    return p.gamma * sided + (1.0 - p.gamma) * central + (form == LinearForm::Continuity ? pen : -pen);
}

AltPair flux_pair_alt(double um, double up, double qm, double qp, double sig, const FluxParams& p) {
    const double s = sgn0(sig);
    AltPair r;
    r.Fu = p.theta * um + (1.0 - p.theta) * up + p.eta_u * s * (qp - qm);
    r.Fq = (1.0 - p.theta) * qm + p.theta * qp + p.eta_q * s * (up - um);
    return r;
}

LinearLDG::LinearLDG(const core::Grid1D& grid, int degree, SigmaProfile sigma, FluxParams params,
                     LinearForm form, int n_quad)
    : grid_(grid),
      basis_(degree, n_quad > 0 ? n_quad : degree + 2),
      sigma_(std::move(sigma)),
      params_(params),
      form_(form) {
    params_.validate();
    const int N = grid_.n_cells;
    const int nq = basis_.quad.size();
    const double dx = grid_.dx();
    sig_q_.resize(static_cast<size_t>(N) * nq);
    dsig_q_.resize(sig_q_.size());
    sspp_q_.resize(sig_q_.size());
    s2p_q_.resize(sig_q_.size());
    s2pp_q_.resize(sig_q_.size());
    for (int j = 0; j < N; ++j) {
        const double xc = grid_.cell_center(j);
        for (int q = 0; q < nq; ++q) {
            const double x = xc + 0.5 * dx * basis_.quad.nodes[q];
            const size_t id = static_cast<size_t>(j) * nq + q;
            sig_q_[id] = sigma_.sigma(x);
            dsig_q_[id] = sigma_.dsigma(x);
            sspp_q_[id] = sigma_.sigma_sigmapp(x);
            s2p_q_[id] = sigma_.s2p(x);
            s2pp_q_[id] = sigma_.s2pp(x);
        }
    }
    sig_if_.resize(N + 1);
    s2p_if_.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
        const double x = grid_.interface_x(i);
        sig_if_[i] = sigma_.sigma(x);
        s2p_if_[i] = sigma_.s2p(x);
    }
}

void LinearLDG::interface_states(const core::DGCoefficients& u, const core::DGCoefficients* q,
                                 std::vector<IfaceState>& out) const {
    const int N = grid_.n_cells;
    out.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
        IfaceState& s = out[i];
        s.u = core::trace_pair(u, basis_, grid_, i);
        s.Fu = flux_Fu(s.u.minus, s.u.plus, s2p_if_[i], params_, form_);
        if (q) {
            s.q = core::trace_pair(*q, basis_, grid_, i);
            AltPair pr = flux_pair_alt(s.u.minus, s.u.plus, s.q.minus, s.q.plus, sig_if_[i], params_);
            s.Ftu = pr.Fu;
            s.Ftq = pr.Fq;
        } else {
            // q-independent part only (eta_u = 0 enforced for elimination).
            s.Ftu = params_.theta * s.u.minus + (1.0 - params_.theta) * s.u.plus;
        }
    }
}

void LinearLDG::aux(const core::DGCoefficients& u, core::DGCoefficients& q) const {
    if (params_.eta_u != 0.0)
        throw std::invalid_argument("LinearLDG: local elimination of q requires eta_u = 0");
    const int N = grid_.n_cells;
    const int nd = basis_.dof();
    const int nq = basis_.quad.size();
    const double dx = grid_.dx();
    if (q.dof != nd || q.n_elems != N) q = core::DGCoefficients(nd, N);

    std::vector<IfaceState> iface;
    interface_states(u, nullptr, iface);

    std::vector<double> uq(nq);
    for (int j = 0; j < N; ++j) {
        const double* c = u.col(j);
        for (int p = 0; p < nq; ++p) {
            double s = 0.0;
            for (int m = 0; m < nd; ++m) s += c[m] * basis_.phi[m][p];
            uq[p] = s;
        }
        const double fr = sig_if_[j + 1] * iface[j + 1].Ftu;
        const double fl = sig_if_[j] * iface[j].Ftu;
        for (int m = 0; m < nd; ++m) {
            double vol = 0.0;
            if (form_ == LinearForm::Continuity) {
                for (int p = 0; p < nq; ++p) {
                    const size_t id = static_cast<size_t>(j) * nq + p;
                    vol += basis_.quad.weights[p] * sig_q_[id] * uq[p] * basis_.dphi[m][p];
                }
            } else {
                for (int p = 0; p < nq; ++p) {
                    const size_t id = static_cast<size_t>(j) * nq + p;
                    vol += basis_.quad.weights[p] *
                           (0.5 * dx * dsig_q_[id] * uq[p] * basis_.phi[m][p] +
                            sig_q_[id] * uq[p] * basis_.dphi[m][p]);
                }
            }
            const double rhs = -vol + fr * basis_.right_trace[m] - fl * basis_.left_trace[m];
            q(m, j) = rhs * (2.0 * m + 1.0) / dx;
        }
    }
}

void LinearLDG::drift(const core::DGCoefficients& u, core::DGCoefficients& out) const {
    const int N = grid_.n_cells;
    const int nd = basis_.dof();
    const int nq = basis_.quad.size();
    const double dx = grid_.dx();
    if (out.dof != nd || out.n_elems != N) out = core::DGCoefficients(nd, N);

    core::DGCoefficients q;
    aux(u, q);
    std::vector<IfaceState> iface;
    interface_states(u, &q, iface);

    std::vector<double> uq(nq), qq(nq);
    for (int j = 0; j < N; ++j) {
        const double* cu = u.col(j);
        const double* cq = q.col(j);
        for (int p = 0; p < nq; ++p) {
            double su = 0.0, sq = 0.0;
            for (int m = 0; m < nd; ++m) {
                su += cu[m] * basis_.phi[m][p];
                sq += cq[m] * basis_.phi[m][p];
            }
            uq[p] = su;
            qq[p] = sq;
        }
        for (int m = 0; m < nd; ++m) {
            double val = 0.0;
            if (form_ == LinearForm::Continuity) {
                double avol = 0.0, bvol = 0.0;
                for (int p = 0; p < nq; ++p) {
                    const size_t id = static_cast<size_t>(j) * nq + p;
                    const double w = basis_.quad.weights[p];
                    avol += w * (0.5 * dx * sspp_q_[id] * uq[p] * basis_.phi[m][p] +
                                 0.5 * s2p_q_[id] * uq[p] * basis_.dphi[m][p]);
                    bvol += w * (0.5 * dx * dsig_q_[id] * qq[p] * basis_.phi[m][p] +
                                 sig_q_[id] * qq[p] * basis_.dphi[m][p]);
                }
                val = -0.5 * avol - 0.5 * bvol;
                val += 0.25 * (s2p_if_[j + 1] * iface[j + 1].Fu * basis_.right_trace[m] -
                               s2p_if_[j] * iface[j].Fu * basis_.left_trace[m]);
                val += 0.5 * (sig_if_[j + 1] * iface[j + 1].Ftq * basis_.right_trace[m] -
                              sig_if_[j] * iface[j].Ftq * basis_.left_trace[m]);
            } else {
                double cvol = 0.0, dvol = 0.0;
                for (int p = 0; p < nq; ++p) {
                    const size_t id = static_cast<size_t>(j) * nq + p;
                    const double w = basis_.quad.weights[p];
                    cvol += w * (0.5 * dx * s2pp_q_[id] * uq[p] * basis_.phi[m][p] +
                                 s2p_q_[id] * uq[p] * basis_.dphi[m][p]);
                    dvol += w * sig_q_[id] * qq[p] * basis_.dphi[m][p];
                }
                val = 0.25 * cvol - 0.5 * dvol;
                val -= 0.25 * (s2p_if_[j + 1] * iface[j + 1].Fu * basis_.right_trace[m] -
                               s2p_if_[j] * iface[j].Fu * basis_.left_trace[m]);
                val += 0.5 * (sig_if_[j + 1] * iface[j + 1].Ftq * basis_.right_trace[m] -
                              sig_if_[j] * iface[j].Ftq * basis_.left_trace[m]);
            }
            out(m, j) = val * (2.0 * m + 1.0) / dx;
        }
    }
}

void LinearLDG::diffusion(const core::DGCoefficients& u, core::DGCoefficients& out) const {
    aux(u, out);
    out.scale(-1.0);
}

double LinearLDG::a_form(const core::DGCoefficients& u, const core::DGCoefficients& v, int j) const {
    const int nd = basis_.dof();
    const int nq = basis_.quad.size();
    const double dx = grid_.dx();
    std::vector<IfaceState> iface;
    interface_states(u, nullptr, iface);
    // recompute Fu only; Ftu unused here
    double vol = 0.0;
    for (int p = 0; p < nq; ++p) {
        double uv = 0.0, vv = 0.0, dvv = 0.0;
        for (int m = 0; m < nd; ++m) {
            uv += u(m, j) * basis_.phi[m][p];
            vv += v(m, j) * basis_.phi[m][p];
            dvv += v(m, j) * basis_.dphi[m][p];
        }
        const size_t id = static_cast<size_t>(j) * nq + p;
        vol += basis_.quad.weights[p] *
               (0.5 * dx * sspp_q_[id] * uv * vv + 0.5 * s2p_q_[id] * uv * dvv);
    }
    double v_right = 0.0, v_left = 0.0;
    for (int m = 0; m < nd; ++m) {
        v_right += v(m, j) * basis_.right_trace[m];
        v_left += v(m, j) * basis_.left_trace[m];
    }
    return -0.5 * vol + 0.25 * (s2p_if_[j + 1] * iface[j + 1].Fu * v_right -
                                s2p_if_[j] * iface[j].Fu * v_left);
}

double LinearLDG::b_form(const core::DGCoefficients& u, const core::DGCoefficients& q,
                         const core::DGCoefficients& v, int j) const {
    const int nd = basis_.dof();
    const int nq = basis_.quad.size();
    const double dx = grid_.dx();
    std::vector<IfaceState> iface;
    interface_states(u, &q, iface);
    double vol = 0.0;
    for (int p = 0; p < nq; ++p) {
        double qv = 0.0, vv = 0.0, dvv = 0.0;
        for (int m = 0; m < nd; ++m) {
            qv += q(m, j) * basis_.phi[m][p];
            vv += v(m, j) * basis_.phi[m][p];
            dvv += v(m, j) * basis_.dphi[m][p];
        }
        const size_t id = static_cast<size_t>(j) * nq + p;
        vol += basis_.quad.weights[p] * (0.5 * dx * dsig_q_[id] * qv * vv + sig_q_[id] * qv * dvv);
    }
    double v_right = 0.0, v_left = 0.0;
    for (int m = 0; m < nd; ++m) {
        v_right += v(m, j) * basis_.right_trace[m];
        v_left += v(m, j) * basis_.left_trace[m];
    }
    return -0.5 * vol + 0.5 * (sig_if_[j + 1] * iface[j + 1].Ftq * v_right -
                               sig_if_[j] * iface[j].Ftq * v_left);
}

double LinearLDG::c_form(const core::DGCoefficients& u, const core::DGCoefficients& v, int j) const {
    const int nd = basis_.dof();
    const int nq = basis_.quad.size();
    const double dx = grid_.dx();
    std::vector<IfaceState> iface;
    interface_states(u, nullptr, iface);
    double vol = 0.0;
    for (int p = 0; p < nq; ++p) {
        double uv = 0.0, vv = 0.0, dvv = 0.0;
        for (int m = 0; m < nd; ++m) {
            uv += u(m, j) * basis_.phi[m][p];
            vv += v(m, j) * basis_.phi[m][p];
            dvv += v(m, j) * basis_.dphi[m][p];
        }
        const size_t id = static_cast<size_t>(j) * nq + p;
        vol += basis_.quad.weights[p] *
               (0.5 * dx * s2pp_q_[id] * uv * vv + s2p_q_[id] * uv * dvv);
    }
    double v_right = 0.0, v_left = 0.0;
    for (int m = 0; m < nd; ++m) {
        v_right += v(m, j) * basis_.right_trace[m];
        v_left += v(m, j) * basis_.left_trace[m];
    }
    return 0.25 * vol - 0.25 * (s2p_if_[j + 1] * iface[j + 1].Fu * v_right -
                                s2p_if_[j] * iface[j].Fu * v_left);
}

double LinearLDG::d_form(const core::DGCoefficients& u, const core::DGCoefficients& q,
                         const core::DGCoefficients& v, int j) const {
    const int nd = basis_.dof();
    const int nq = basis_.quad.size();
    std::vector<IfaceState> iface;
    interface_states(u, &q, iface);
    double vol = 0.0;
    for (int p = 0; p < nq; ++p) {
        double qv = 0.0, dvv = 0.0;
        for (int m = 0; m < nd; ++m) {
            qv += q(m, j) * basis_.phi[m][p];
            dvv += v(m, j) * basis_.dphi[m][p];
        }
        const size_t id = static_cast<size_t>(j) * nq + p;
        vol += basis_.quad.weights[p] * sig_q_[id] * qv * dvv;
    }
    double v_right = 0.0, v_left = 0.0;
    for (int m = 0; m < nd; ++m) {
        v_right += v(m, j) * basis_.right_trace[m];
        v_left += v(m, j) * basis_.left_trace[m];
    }
    return -0.5 * vol + 0.5 * (sig_if_[j + 1] * iface[j + 1].Ftq * v_right -
                               sig_if_[j] * iface[j].Ftq * v_left);
}

EnergyFluxTerms LinearLDG::energy_flux_terms(const core::DGCoefficients& u, const core::DGCoefficients& q,
                                             int interface) const {
    const core::TracePair ut = core::trace_pair(u, basis_, grid_, interface);
    const core::TracePair qt = core::trace_pair(q, basis_, grid_, interface);
    const double sig = sig_if_[interface];
    const double s2p = s2p_if_[interface];
    const double Fu = flux_Fu(ut.minus, ut.plus, s2p, params_, form_);
    const AltPair pr = flux_pair_alt(ut.minus, ut.plus, qt.minus, qt.plus, sig, params_);

    EnergyFluxTerms t;
    t.Phi = 0.125 * s2p * (2.0 * Fu - ut.minus) * ut.minus;
    t.Psi = 0.125 * s2p * ((ut.plus * ut.plus - ut.minus * ut.minus) - 2.0 * Fu * (ut.plus - ut.minus));
    t.Lambda = sig * (ut.minus * pr.Fq + pr.Fu * qt.minus - ut.minus * qt.minus);
    t.Theta = sig * ((ut.plus * qt.plus - ut.minus * qt.minus) - pr.Fu * (qt.plus - qt.minus) -
                     (ut.plus - ut.minus) * pr.Fq);
    return t;
}

double LinearLDG::cell_q_norm2(const core::DGCoefficients& q, int j) const {
    double s = 0.0;
    const double dx = grid_.dx();
    for (int m = 0; m < basis_.dof(); ++m) s += q(m, j) * q(m, j) * dx / (2.0 * m + 1.0);
    return s;
}

std::shared_ptr<const LinearLDG> make_linear_operator(const core::Grid1D& grid, int degree,
                                                      const SigmaProfile& sigma, const FluxParams& params,
                                                      LinearForm form, int n_quad) {
    return std::make_shared<const LinearLDG>(grid, degree, sigma, params, form, n_quad);
}

SemiDiscreteSystem to_system(std::shared_ptr<const LinearLDG> op) {
    SemiDiscreteSystem sys;
    sys.dof = op->basis().dof();
    sys.n_elems = op->grid().n_cells;
    sys.n_modes = 1;
    sys.drift = [op](const core::DGCoefficients& u, core::DGCoefficients& out) { op->drift(u, out); };
    sys.diffusion = [op](int, const core::DGCoefficients& u, core::DGCoefficients& out) {
        op->diffusion(u, out);
    };
    sys.aux = [op](int, const core::DGCoefficients& u, core::DGCoefficients& out) { op->aux(u, out); };
    return sys;
}

SemiDiscreteSystem assemble_continuity(const core::Grid1D& grid, int degree, const SigmaProfile& sigma,
                                       const FluxParams& params, int n_quad) {
    return to_system(make_linear_operator(grid, degree, sigma, params, LinearForm::Continuity, n_quad));
}

SemiDiscreteSystem assemble_transport(const core::Grid1D& grid, int degree, const SigmaProfile& sigma,
                                      const FluxParams& params, int n_quad) {
    return to_system(make_linear_operator(grid, degree, sigma, params, LinearForm::Transport, n_quad));
}

} // namespace sldg::ldg
