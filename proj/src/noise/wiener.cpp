#include "noise/wiener.hpp"

#include <cmath>
#include <stdexcept>

namespace sldg::noise {

namespace {
constexpr uint64_t kTagPath = 0x5061746855aaULL;
constexpr uint64_t kTagBridge = 0x4272696467ULL;
constexpr uint64_t kTagIter = 0x497465ab72ULL;
constexpr double kPi = 3.14159265358979323846;

uint64_t stream_id(uint64_t tag, uint64_t a, uint64_t b) {
    return hash_combine(tag, hash_combine(a, b));
}
} // namespace

WienerRealization sample_path(int modes, const std::vector<double>& tgrid, uint64_t seed) {
    if (modes < 1) throw std::invalid_argument("sample_path: need at least one mode");
    if (tgrid.size() < 2) throw std::invalid_argument("sample_path: time grid too short");
    for (size_t i = 0; i + 1 < tgrid.size(); ++i)
        if (!(tgrid[i + 1] > tgrid[i])) throw std::invalid_argument("sample_path: grid not increasing");

    WienerRealization w;
    w.times = tgrid;
    w.n_modes = modes;
    w.seed = seed;
    const int steps = static_cast<int>(tgrid.size()) - 1;
    w.dW.assign(steps, std::vector<double>(modes));
    w.dZ.assign(steps, std::vector<double>(modes));
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    for (int n = 0; n < steps; ++n) {
        const double dt = w.dt(n);
        const double sq = std::sqrt(dt);
        for (int l = 0; l < modes; ++l) {
            CounterRng rng(seed, stream_id(kTagPath, n, l));
            const double eta = rng.normal();
            const double xi = rng.normal();
            w.dW[n][l] = eta * sq;
            w.dZ[n][l] = 0.5 * (eta + xi * inv_sqrt3) * dt * sq;
        }
    }
    return w;
}

namespace {
WienerRealization refine_impl(const WienerRealization& path, int factor,
                              const std::function<double()>& bridge_normal) {
    if (factor < 2) throw std::invalid_argument("refine_bridge: factor must be >= 2");
    WienerRealization out;
    out.n_modes = path.n_modes;
    out.seed = path.seed;
    const int steps = path.n_steps();
    out.times.reserve(static_cast<size_t>(steps) * factor + 1);
    out.dW.assign(static_cast<size_t>(steps) * factor, std::vector<double>(path.n_modes));
    out.dZ.assign(static_cast<size_t>(steps) * factor, std::vector<double>(path.n_modes));
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    for (int n = 0; n < steps; ++n) {
        const double t0 = path.times[n];
        const double dt = path.dt(n);
        const double sub = dt / factor;
        for (int s = 0; s < factor; ++s) out.times.push_back(t0 + s * sub);
        for (int l = 0; l < path.n_modes; ++l) {
            // Sequential conditional sampling: given the remaining increment R
            // over remaining time tau, a substep of length d is
            // N(R*d/tau, d*(tau-d)/tau). The final substep closes the sum, so
            // coarse increments are preserved bit-for-bit.
            double remaining = path.dW[n][l];
            double tau = dt;
            for (int s = 0; s < factor - 1; ++s) {
                const double mean = remaining * sub / tau;
                const double var = sub * (tau - sub) / tau;
                const double d = mean + std::sqrt(var) * bridge_normal();
                out.dW[n * factor + s][l] = d;
                remaining -= d;
                tau -= sub;
            }
            out.dW[n * factor + factor - 1][l] = remaining;
            for (int s = 0; s < factor; ++s) {
                const double dw = out.dW[n * factor + s][l];
                const double eta = dw / std::sqrt(sub);
                const double xi = bridge_normal();
                out.dZ[n * factor + s][l] = 0.5 * (eta + xi * inv_sqrt3) * sub * std::sqrt(sub);
            }
        }
    }
    out.times.push_back(path.times.back());
    return out;
}
} // namespace

WienerRealization refine_bridge(const WienerRealization& path, int factor) {
    CounterRng rng(path.seed, stream_id(kTagBridge, static_cast<uint64_t>(factor), path.n_steps()));
    return refine_impl(path, factor, [&rng]() { return rng.normal(); });
}

WienerRealization refine_bridge_with(const WienerRealization& path, int factor,
                                     const std::function<double()>& bridge_normal) {
    return refine_impl(path, factor, bridge_normal);
}

WienerRealization aggregate_path(const WienerRealization& path, int factor) {
    if (factor < 1) throw std::invalid_argument("aggregate_path: factor must be >= 1");
    if (path.n_steps() % factor != 0)
        throw std::invalid_argument("aggregate_path: step count not divisible by factor");
    WienerRealization out;
    out.n_modes = path.n_modes;
    out.seed = path.seed;
    const int steps = path.n_steps() / factor;
    out.times.resize(steps + 1);
    out.dW.assign(steps, std::vector<double>(path.n_modes, 0.0));
    out.dZ.assign(steps, std::vector<double>(path.n_modes, 0.0));
    for (int n = 0; n < steps; ++n) {
        out.times[n] = path.times[n * factor];
        for (int l = 0; l < path.n_modes; ++l) {
            double w = 0.0, z = 0.0;
            for (int s = 0; s < factor; ++s) {
                const int i = n * factor + s;
                z += path.dZ[i][l] + w * path.dt(i);
                w += path.dW[i][l];
            }
            out.dW[n][l] = w;
            out.dZ[n][l] = z;
        }
    }
    out.times[steps] = path.times.back();
    return out;
}

int default_truncation(double dt) {
    const int p = static_cast<int>(std::ceil(1.0 / std::sqrt(dt)));
    return p < 10 ? 10 : p;
}

IteratedIntegrals iterated_integrals(const std::vector<double>& dW, double dt, int p, CounterRng& rng,
                                     const std::vector<double>* dZ, bool with_triples) {
    if (p < 1) throw std::invalid_argument("iterated_integrals: p must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("iterated_integrals: dt must be > 0");
    const int L = static_cast<int>(dW.size());
    IteratedIntegrals out;
    out.L = L;
    out.dt = dt;
    out.dW = dW;
    out.I_00 = 0.5 * dt * dt;
    out.I_l0.resize(L);
    out.I_0l.resize(L);
    out.I2.assign(static_cast<size_t>(L) * L, 0.0);

    // Bridge Fourier coefficients: a_{lr} = -(sqrt(dt/2)/(pi r)) zeta_{lr},
    // b_{lr} = (sqrt(dt/2)/(pi r)) eta_{lr}; a_{l0} carries the tail.
    std::vector<std::vector<double>> zeta(L, std::vector<double>(p)), eta(L, std::vector<double>(p));
    std::vector<double> a0(L);
    double rho = 1.0 / 12.0;
    for (int r = 1; r <= p; ++r) rho -= 1.0 / (2.0 * kPi * kPi * r * r);
    if (rho < 0.0) rho = 0.0;
    const double c = std::sqrt(0.5 * dt) / kPi;
    for (int l = 0; l < L; ++l) {
        double s = 0.0;
        for (int r = 0; r < p; ++r) {
            zeta[l][r] = rng.normal();
            eta[l][r] = rng.normal();
            s += zeta[l][r] / (r + 1.0);
        }
        if (dZ) {
            // Invert I_(l,0) = dt*(dW + a0)/2 so the supplied dZ is honored.
            a0[l] = 2.0 * (*dZ)[l] / dt - dW[l];
        } else {
            a0[l] = 2.0 * c * s + 2.0 * std::sqrt(dt * rho) * rng.normal();
        }
        out.I_l0[l] = 0.5 * dt * (dW[l] + a0[l]);
        out.I_0l[l] = dW[l] * dt - out.I_l0[l];
    }

    for (int l1 = 0; l1 < L; ++l1) {
        for (int l2 = 0; l2 < L; ++l2) {
            if (l1 == l2) {
                out.I2[l1 * L + l2] = 0.5 * (dW[l1] * dW[l1] - dt);
            } else {
                double area = 0.0;
                for (int r = 0; r < p; ++r)
                    area += (zeta[l2][r] * eta[l1][r] - zeta[l1][r] * eta[l2][r]) / (r + 1.0);
                out.I2[l1 * L + l2] = 0.5 * dW[l1] * dW[l2] +
                                      0.5 * (a0[l1] * dW[l2] - a0[l2] * dW[l1]) +
                                      dt / (2.0 * kPi) * area;
            }
        }
    }

    if (with_triples) {
        out.has_triples = true;
        out.I3.assign(static_cast<size_t>(L) * L * L, 0.0);
        // Smooth truncated-bridge path on a uniform grid; nested
        // Riemann-Stieltjes sums give Stratonovich integrals, converted to
        // Ito afterwards.
        const int ng = std::max(128, 16 * p);
        std::vector<std::vector<double>> W(L, std::vector<double>(ng + 1));
        std::vector<std::vector<double>> dWg(L, std::vector<double>(ng)); // path increment per subinterval
        for (int l = 0; l < L; ++l) {
            double a0t = 0.0; // truncated series value at s=0 must vanish
            for (int r = 0; r < p; ++r) a0t += c / (r + 1.0) * zeta[l][r];
            for (int i = 0; i <= ng; ++i) {
                const double s = dt * i / ng;
                double v = s / dt * dW[l] + a0t;
                for (int r = 0; r < p; ++r) {
                    const double w = 2.0 * kPi * (r + 1.0) * s / dt;
                    v += -c / (r + 1.0) * zeta[l][r] * std::cos(w) + c / (r + 1.0) * eta[l][r] * std::sin(w);
                }
                W[l][i] = v;
            }
            for (int i = 0; i < ng; ++i) dWg[l][i] = W[l][i + 1] - W[l][i];
        }
        // F2[l1][l2][i] = int_0^{s_i} W_{l1} dW_{l2} (midpoint rule on the smooth path).
        std::vector<std::vector<std::vector<double>>> F2(
            L, std::vector<std::vector<double>>(L, std::vector<double>(ng + 1, 0.0)));
        for (int l1 = 0; l1 < L; ++l1)
            for (int l2 = 0; l2 < L; ++l2)
                for (int i = 0; i < ng; ++i)
                    F2[l1][l2][i + 1] =
                        F2[l1][l2][i] + 0.5 * (W[l1][i] + W[l1][i + 1]) * dWg[l2][i];
        for (int l1 = 0; l1 < L; ++l1)
            for (int l2 = 0; l2 < L; ++l2)
                for (int l3 = 0; l3 < L; ++l3) {
                    if (l1 == l2 && l2 == l3) {
                        out.I3[(l1 * L + l2) * L + l3] =
                            0.5 * (dW[l1] * dW[l1] / 3.0 - dt) * dW[l1];
                        continue;
                    }
                    double J = 0.0;
                    for (int i = 0; i < ng; ++i)
                        J += 0.5 * (F2[l1][l2][i] + F2[l1][l2][i + 1]) * dWg[l3][i];
                    double I = J;
                    if (l1 == l2) I -= 0.5 * out.I_0l[l3];
                    if (l2 == l3) I -= 0.5 * out.I_l0[l1];
                    out.I3[(l1 * L + l2) * L + l3] = I;
                }
    }
    return out;
}

} // namespace sldg::noise
