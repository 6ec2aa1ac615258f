#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "noise/kraichnan.hpp"
#include "noise/rng.hpp"
#include "noise/wiener.hpp"

using namespace sldg;

namespace {
std::vector<double> uniform_grid(double T, int n) {
    std::vector<double> t(n + 1);
    for (int i = 0; i <= n; ++i) t[i] = T * i / n;
    return t;
}

// One-sample Kolmogorov-Smirnov distance against a normal CDF.
double ks_normal(std::vector<double> samples, double mean, double sd) {
    std::sort(samples.begin(), samples.end());
    const int n = static_cast<int>(samples.size());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = (samples[i] - mean) / sd;
        const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
        d = std::max(d, std::abs(cdf - (i + 1.0) / n));
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
    }
    return d;
}
} // namespace

TEST_CASE("sample_path determinism and grid validation") {
    auto g = uniform_grid(1.0, 16);
    auto a = noise::sample_path(2, g, 42);
    auto b = noise::sample_path(2, g, 42);
    CHECK(a.dW == b.dW);
    CHECK(a.dZ == b.dZ);
    auto c = noise::sample_path(2, g, 43);
    CHECK(a.dW != c.dW);

    std::vector<double> bad = {0.0, 0.5, 0.5, 1.0};
    CHECK_THROWS_AS(noise::sample_path(1, bad, 1), std::invalid_argument);
}

TEST_CASE("increment moments match the law of large numbers") {
    const double dt = 0.3;
    auto g = uniform_grid(dt, 1);
    const int M = 100000;
    double mean = 0.0, var = 0.0, covwz = 0.0, varz = 0.0;
    for (int r = 0; r < M; ++r) {
        auto p = noise::sample_path(1, g, 1000 + r);
        const double w = p.dW[0][0], z = p.dZ[0][0];
        mean += w;
        var += w * w;
        covwz += w * z;
        varz += z * z;
    }
    mean /= M;
    var /= M;
    covwz /= M;
    varz /= M;
    const double se = std::sqrt(dt / M);
    CHECK(std::abs(mean) < 4.0 * se);
    CHECK(var == doctest::Approx(dt).epsilon(0.03));
    CHECK(covwz == doctest::Approx(0.5 * dt * dt).epsilon(0.05)); // Cov(dW,dZ) = dt^2/2
    CHECK(varz == doctest::Approx(dt * dt * dt / 3.0).epsilon(0.05));
}

TEST_CASE("bridge refinement preserves coarse increments exactly") {
    auto g = uniform_grid(1.0, 4);
    auto p = noise::sample_path(3, g, 7);
    for (int factor : {2, 3, 4, 8}) {
        auto f = noise::refine_bridge(p, factor);
        REQUIRE(f.n_steps() == 4 * factor);
        for (int n = 0; n < 4; ++n)
            for (int l = 0; l < 3; ++l) {
                double s = 0.0;
                for (int k = 0; k < factor; ++k) s += f.dW[n * factor + k][l];
                CHECK(std::abs(s - p.dW[n][l]) < 1e-15);
            }
    }
    CHECK_THROWS_AS(noise::refine_bridge(p, 1), std::invalid_argument);
}

TEST_CASE("suppressed bridge noise splits increments in half") {
    auto g = uniform_grid(1.0, 2);
    auto p = noise::sample_path(1, g, 11);
    auto f = noise::refine_bridge_with(p, 2, []() { return 0.0; });
    for (int n = 0; n < 2; ++n) {
        CHECK(f.dW[2 * n][0] == doctest::Approx(0.5 * p.dW[n][0]));
        CHECK(f.dW[2 * n + 1][0] == doctest::Approx(0.5 * p.dW[n][0]));
    }
}

TEST_CASE("double refinement equals refine-by-4 in law (KS at 1%)") {
    // Marginal of the first fine increment is N(0, 1/4) either way.
    auto g = uniform_grid(1.0, 1);
    const int M = 10000;
    std::vector<double> twice(M), once(M);
    for (int r = 0; r < M; ++r) {
        auto p = noise::sample_path(1, g, 50000 + r);
        twice[r] = noise::refine_bridge(noise::refine_bridge(p, 2), 2).dW[0][0];
        once[r] = noise::refine_bridge(p, 4).dW[0][0];
    }
    const double crit = 1.63 / std::sqrt(static_cast<double>(M)); // alpha = 0.01
    CHECK(ks_normal(twice, 0.0, 0.5) < crit);
    CHECK(ks_normal(once, 0.0, 0.5) < crit);
}

TEST_CASE("aggregate_path inverts refinement sums") {
    auto g = uniform_grid(0.7, 3);
    auto p = noise::sample_path(2, g, 19);
    auto f = noise::refine_bridge(p, 4);
    auto back = noise::aggregate_path(f, 4);
    for (int n = 0; n < 3; ++n)
        for (int l = 0; l < 2; ++l) CHECK(back.dW[n][l] == doctest::Approx(p.dW[n][l]).epsilon(1e-14));
}

TEST_CASE("diagonal iterated integral uses the exact identity") {
    noise::CounterRng rng(5, 5);
    std::vector<double> dW = {0.3};
    auto ii = noise::iterated_integrals(dW, 0.01, 10, rng);
    CHECK(ii.pair(0, 0) == doctest::Approx(0.04));
}

TEST_CASE("iterated integral symmetry and moments") {
    const double dt = 0.05;
    const int p = 12;
    const int M = 100000;
    double sum_sym = 0.0, worst_sym = 0.0, m2 = 0.0;
    for (int r = 0; r < M; ++r) {
        noise::CounterRng rng(900, r);
        const double w1 = rng.normal() * std::sqrt(dt), w2 = rng.normal() * std::sqrt(dt);
        std::vector<double> dW = {w1, w2};
        auto ii = noise::iterated_integrals(dW, dt, p, rng);
        worst_sym = std::max(worst_sym, std::abs(ii.pair(0, 1) + ii.pair(1, 0) - w1 * w2));
        sum_sym += ii.pair(0, 1) + ii.pair(1, 0);
        m2 += ii.pair(0, 1) * ii.pair(0, 1);
    }
    CHECK(worst_sym < 1e-13); // pathwise product identity, exact in the expansion
    CHECK(std::abs(sum_sym / M) < 4.0 * dt / std::sqrt(static_cast<double>(M)));
    m2 /= M;
    // E[I12^2] = dt^2/2 up to sampling + O(dt^2/p) truncation
    CHECK(m2 == doctest::Approx(0.5 * dt * dt).epsilon(0.05 + 1.0 / p));
}

TEST_CASE("I_(l,0) honors supplied dZ and couples with I_(0,l)") {
    noise::CounterRng rng(31, 1);
    const double dt = 0.02;
    std::vector<double> dW = {0.1, -0.2};
    std::vector<double> dZ = {0.003, -0.001};
    auto ii = noise::iterated_integrals(dW, dt, 10, rng, &dZ);
    CHECK(ii.I_l0[0] == doctest::Approx(0.003));
    CHECK(ii.I_l0[1] == doctest::Approx(-0.001));
    CHECK(ii.I_0l[0] == doctest::Approx(dW[0] * dt - 0.003));
    CHECK(ii.I_00 == doctest::Approx(0.5 * dt * dt));
    CHECK_THROWS_AS(noise::iterated_integrals(dW, dt, 0, rng), std::invalid_argument);
}

TEST_CASE("triple integrals: exact identity on the diagonal, sane moments off it") {
    const double dt = 0.04;
    noise::CounterRng rng(77, 2);
    std::vector<double> dW = {0.21, -0.13};
    auto ii = noise::iterated_integrals(dW, dt, 10, rng, nullptr, true);
    CHECK(ii.triple(0, 0, 0) == doctest::Approx(0.5 * (dW[0] * dW[0] / 3.0 - dt) * dW[0]));
    CHECK(ii.triple(1, 1, 1) == doctest::Approx(0.5 * (dW[1] * dW[1] / 3.0 - dt) * dW[1]));

    // E[I_(1,2,1)-type squares] = dt^3/6; loose Monte-Carlo check.
    const int M = 4000;
    double m2 = 0.0;
    for (int r = 0; r < M; ++r) {
        noise::CounterRng rr(301, r);
        std::vector<double> w = {rr.normal() * std::sqrt(dt), rr.normal() * std::sqrt(dt)};
        auto jj = noise::iterated_integrals(w, dt, 8, rr, nullptr, true);
        m2 += jj.triple(0, 1, 0) * jj.triple(0, 1, 0);
    }
    m2 /= M;
    CHECK(m2 == doctest::Approx(dt * dt * dt / 6.0).epsilon(0.35));
}

TEST_CASE("kraichnan active set and normalization") {
    // k* = 1: K = {(+-1,0),(0,+-1)}, sum |k|^-3 = 4, D = 1/4, L = 8
    auto f1 = noise::build_kraichnan(1.0, 1.0, 1.0 / 3.0);
    CHECK(f1.k_star == 1);
    CHECK(f1.n_modes() == 8);
    CHECK(f1.D == doctest::Approx(0.25));

    // k* = 3 (h = 2^-3 on the unit-scaled torus): |K| = 28, L = 56
    auto f3 = noise::build_kraichnan(1.0, 1.0, 1.0 / 8.0);
    CHECK(f3.k_star == 3);
    CHECK(f3.n_modes() == 56);

    int count = 0;
    for (int kx = -3; kx <= 3; ++kx)
        for (int ky = -3; ky <= 3; ++ky) {
            const int k2 = kx * kx + ky * ky;
            if (k2 >= 1 && k2 <= 9) ++count;
        }
    CHECK(count == 28);

    CHECK_THROWS_AS(noise::build_kraichnan(2.5, 1.0, 0.125), std::invalid_argument);
}

TEST_CASE("kraichnan sum of squares is V0^2 pointwise") {
    auto f = noise::build_kraichnan(1.3, 2.0, 1.0 / 12.0);
    noise::CounterRng rng(8, 8);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = 6.283185307179586 * rng.u01();
        const double y = 6.283185307179586 * rng.u01();
        worst = std::max(worst, std::abs(f.sum_sq(x, y) - 4.0));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("kraichnan modes are divergence-free (boundary-flux quadrature)") {
    auto f = noise::build_kraichnan(1.0, 1.0, 1.0 / 8.0);
    noise::CounterRng rng(9, 9);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double x0 = 6.28318 * rng.u01(), y0 = 6.28318 * rng.u01();
        const double w = 0.2 + rng.u01(), h = 0.2 + rng.u01();
        for (int l = 0; l < f.n_modes(); ++l)
            worst = std::max(worst, std::abs(f.boundary_flux(l, x0, x0 + w, y0, y0 + h)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("single-mode structure increment has the analytic closed form") {
    noise::KraichnanField f;
    f.k_star = 1;
    f.modes.push_back({1.0, 0.0, 0.7, true});
    f.modes.push_back({1.0, 0.0, 0.7, false});
    // paired cosine+sine modes: sum_l |sigma_l(x+d) - sigma_l(x)|^2 = 2 a^2 (1 - cos(k . d))
    const double d1 = 0.3;
    double tot = 0.0;
    for (int l = 0; l < 2; ++l) {
        double ax, ay, bx, by;
        f.eval(l, 0.4, 0.9, ax, ay);
        f.eval(l, 0.4 + d1, 0.9, bx, by);
        tot += (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
    }
    CHECK(tot == doctest::Approx(2.0 * 0.49 * (1.0 - std::cos(d1))).epsilon(1e-10));
}

TEST_CASE("structure-function slope tracks the roughness exponent") {
    for (double xi : {0.5, 1.0, 1.5}) {
        auto f = noise::build_kraichnan(xi, 1.0, 1.0 / 24.0); // k* = 8
        REQUIRE(f.k_star == 8);
        std::vector<double> seps;
        for (int i = 0; i < 12; ++i)
            seps.push_back(1.0 / 8.0 * std::pow(10.0, static_cast<double>(i) / 11.0));
        auto tab = noise::structure_function(f, seps, 48, 12, 99);
        CHECK(std::abs(tab.slope - xi) < 0.2);
    }
    auto f = noise::build_kraichnan(1.0, 1.0, 0.125);
    CHECK_THROWS_AS(noise::structure_function(f, {}), std::invalid_argument);
}

TEST_CASE("structure function vanishes as separation goes to zero") {
    auto f = noise::build_kraichnan(1.0, 1.0, 0.125);
    auto tab = noise::structure_function(f, {1e-5, 1e-4}, 16, 4, 5);
    CHECK(tab.values[0] < 1e-6);
    CHECK(tab.values[0] < tab.values[1]);
}
