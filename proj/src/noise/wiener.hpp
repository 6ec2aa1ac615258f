#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "noise/rng.hpp"

namespace sldg::noise {

/// Brownian increments of L independent modes on a time grid, together with
/// the correlated increments dZ used by the strong-order-3/2 integrator:
///   dW = eta*sqrt(dt),  dZ = 0.5*(eta + xi/sqrt(3))*dt^{3/2},
/// with eta, xi independent standard normals.
struct WienerRealization {
    std::vector<double> times;           // t_0 .. t_N
    int n_modes = 0;
    std::vector<std::vector<double>> dW; // [step][mode]
    std::vector<std::vector<double>> dZ; // [step][mode]
    uint64_t seed = 0;

    int n_steps() const { return static_cast<int>(dW.size()); }
    double dt(int n) const { return times[n + 1] - times[n]; }

    /// W^l(t_n), cumulative sum of increments.
    double W_at(int n, int l) const {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += dW[i][l];
        return s;
    }
};

/// Sample a realization on a strictly increasing time grid. Reproducible
/// given (seed, grid); modes and steps draw from disjoint counter streams.
WienerRealization sample_path(int modes, const std::vector<double>& tgrid, uint64_t seed);

/// Refine every step into `factor` substeps by Brownian bridge. Coarse
/// increments are preserved exactly: the last substep closes the sum.
WienerRealization refine_bridge(const WienerRealization& path, int factor);

/// Test hook: same construction with the bridge normals supplied externally.
WienerRealization refine_bridge_with(const WienerRealization& path, int factor,
                                     const std::function<double()>& bridge_normal);

/// Coarsen a path by summing groups of `factor` steps. Both dW and dZ are
/// aggregated exactly:
///   dZ_coarse = sum_i [ dZ_i + (W_{t_i} - W_{t_0}) * dt_i ].
/// Used to couple resolutions with common random numbers.
WienerRealization aggregate_path(const WienerRealization& path, int factor);

/// Multiple Ito integrals for one step. Diagonal double integrals use the
/// exact identity; off-diagonal ones a truncated Fourier (Levy-area)
/// expansion with p terms; I_(0,l), I_(l,0) and triple integrals come from
/// the same expansion.
struct IteratedIntegrals {
    int L = 0;
    double dt = 0.0;
    std::vector<double> dW;   // [L]
    std::vector<double> I_l0; // I_(l,0); equals dZ_l when dZ was supplied
    std::vector<double> I_0l; // I_(0,l) = dW_l*dt - I_(l,0)
    double I_00 = 0.0;        // dt^2/2
    std::vector<double> I2;   // [L*L] row-major: I_(l1,l2)
    std::vector<double> I3;   // [L*L*L]: I_(l1,l2,l3); empty unless requested
    bool has_triples = false;

    double pair(int l1, int l2) const { return I2[l1 * L + l2]; }
    double triple(int l1, int l2, int l3) const { return I3[(l1 * L + l2) * L + l3]; }
};

/// Default truncation level: keeps the Levy-area truncation variance O(dt^2).
int default_truncation(double dt);

IteratedIntegrals iterated_integrals(const std::vector<double>& dW, double dt, int p, CounterRng& rng,
                                     const std::vector<double>* dZ = nullptr, bool with_triples = false);

} // namespace sldg::noise
