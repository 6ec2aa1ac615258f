#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sldg::ldg {

/// Stochastic flux g with its derivative and antiderivative G(u) = int_0^u g.
/// g2_max optionally bounds |g''| over the declared state interval (used by
/// the pathwise penalty rule); g2 is the optional second-derivative callable.
struct FluxTriple {
    std::function<double(double)> g;
    std::function<double(double)> gprime;
    std::function<double(double)> Gint;
    std::function<double(double)> g2;
    double g2_max = std::nan("");

    bool has_g2_max() const { return !std::isnan(g2_max); }

    static FluxTriple linear();  // g(u) = u
    static FluxTriple burgers(); // g(u) = u^2/2
    static FluxTriple square();  // g(u) = u^2
    static FluxTriple cubic();   // g(u) = u^3
    static FluxTriple sin_flux(); // g(u) = u sin(2 pi u) + u
    static FluxTriple buckley_leverett_1();
    static FluxTriple buckley_leverett_2();
};

inline FluxTriple FluxTriple::linear() {
    FluxTriple t;
    t.g = [](double u) { return u; };
    t.gprime = [](double) { return 1.0; };
    t.Gint = [](double u) { return 0.5 * u * u; };
    t.g2 = [](double) { return 0.0; };
    t.g2_max = 0.0;
    return t;
}

inline FluxTriple FluxTriple::burgers() {
    FluxTriple t;
    t.g = [](double u) { return 0.5 * u * u; };
    t.gprime = [](double u) { return u; };
    t.Gint = [](double u) { return u * u * u / 6.0; };
    t.g2 = [](double) { return 1.0; };
    t.g2_max = 1.0;
    return t;
}

inline FluxTriple FluxTriple::square() {
    FluxTriple t;
    t.g = [](double u) { return u * u; };
    t.gprime = [](double u) { return 2.0 * u; };
    t.Gint = [](double u) { return u * u * u / 3.0; };
    t.g2 = [](double) { return 2.0; };
    t.g2_max = 2.0;
    return t;
}

inline FluxTriple FluxTriple::cubic() {
    FluxTriple t;
    t.g = [](double u) { return u * u * u; };
    t.gprime = [](double u) { return 3.0 * u * u; };
    t.Gint = [](double u) { return 0.25 * u * u * u * u; };
    t.g2 = [](double u) { return 6.0 * u; };
    return t;
}

inline FluxTriple FluxTriple::sin_flux() {
    const double twopi = 6.283185307179586476925;
    FluxTriple t;
    t.g = [twopi](double u) { return u * std::sin(twopi * u) + u; };
    t.gprime = [twopi](double u) { return std::sin(twopi * u) + twopi * u * std::cos(twopi * u) + 1.0; };
    t.Gint = [twopi](double u) {
        return std::sin(twopi * u) / (twopi * twopi) + 0.5 * u * u - u * std::cos(twopi * u) / twopi;
    };
    t.g2 = [twopi](double u) {
        return 2.0 * twopi * std::cos(twopi * u) - twopi * twopi * u * std::sin(twopi * u);
    };
    t.g2_max = 35.0; // bound on [-1,1]
    return t;
}

inline FluxTriple FluxTriple::buckley_leverett_1() {
    FluxTriple t;
    auto den = [](double u) { return u * u + (1.0 - u) * (1.0 - u); };
    t.g = [den](double u) { return u * u / den(u); };
    t.gprime = [den](double u) { return 2.0 * u * (1.0 - u) / (den(u) * den(u)); };
    t.Gint = [](double u) { return 0.5 * u + 0.25 * std::log(2.0 * u * (u - 1.0) + 1.0); };
    t.g2_max = 0.5 * 12.0; // eta_{q,1} >= 1/2 on [0,1]
    return t;
}

inline FluxTriple FluxTriple::buckley_leverett_2() {
    FluxTriple t;
    auto den = [](double u) { return u * u + (1.0 - u) * (1.0 - u); };
    auto g1 = [den](double u) { return u * u / den(u); };
    auto g1p = [den](double u) { return 2.0 * u * (1.0 - u) / (den(u) * den(u)); };
    t.g = [g1](double u) { return g1(u) * (1.0 - 5.0 * (1.0 - u) * (1.0 - u)); };
    t.gprime = [g1, g1p](double u) {
        return g1p(u) * (1.0 - 5.0 * (1.0 - u) * (1.0 - u)) + 10.0 * g1(u) * (1.0 - u);
    };
    t.Gint = [](double u) {
        const double pi = 3.14159265358979323846;
        return -5.0 * pi / 16.0 + 1.75 * u + 1.25 * u * u - 5.0 / 6.0 * u * u * u +
               0.25 * std::log(2.0 * u * (u - 1.0) + 1.0) - 1.25 * std::atan(2.0 * u - 1.0);
    };
    t.g2_max = 33.0 / 2.0; // eta_{q,2} >= 33/24 on [0,1]
    return t;
}

/// One noise mode: vector-field descriptor plus flux triple and its penalties.
struct SigmaField {
    int dim = 1;
    std::function<double(double)> f1;                                      // 1D
    std::function<void(double, double, double&, double&)> f2;              // 2D

    static SigmaField constant1d(double c) {
        SigmaField s;
        s.dim = 1;
        s.f1 = [c](double) { return c; };
        return s;
    }
    static SigmaField callable1d(std::function<double(double)> f) {
        SigmaField s;
        s.dim = 1;
        s.f1 = std::move(f);
        return s;
    }
    static SigmaField constant2d(double cx, double cy) {
        SigmaField s;
        s.dim = 2;
        s.f2 = [cx, cy](double, double, double& sx, double& sy) {
            sx = cx;
            sy = cy;
        };
        return s;
    }
    static SigmaField callable2d(std::function<void(double, double, double&, double&)> f) {
        SigmaField s;
        s.dim = 2;
        s.f2 = std::move(f);
        return s;
    }
};

struct NoiseMode {
    SigmaField sigma;
    FluxTriple flux;
    double eta_q = 0.0;
    double eta_u = 0.0;
};

/// The set of modes {(sigma_l, g_l)} driving the equation.
struct NoiseModel {
    std::vector<NoiseMode> modes;
    bool divergence_free = false;

    int n_modes() const { return static_cast<int>(modes.size()); }
};

} // namespace sldg::ldg
