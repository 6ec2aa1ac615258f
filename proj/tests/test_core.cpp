#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "core/basis.hpp"
#include "core/coeffs.hpp"
#include "core/grid.hpp"
#include "core/legendre.hpp"
#include "core/projection.hpp"
#include "core/quadrature.hpp"
#include "core/traces.hpp"
#include "noise/rng.hpp"

using namespace sldg;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1") {
    for (int n = 1; n <= 8; ++n) {
        core::QuadRule rule = core::gauss_legendre(n);
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double s = 0.0;
            for (int q = 0; q < rule.size(); ++q) s += rule.weights[q] * std::pow(rule.nodes[q], d);
            const double exact = (d % 2 == 1) ? 0.0 : 2.0 / (d + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("legendre endpoint values and orthogonality") {
    CHECK(core::legendre(3, 1.0) == doctest::Approx(1.0));
    CHECK(core::legendre(3, -1.0) == doctest::Approx(-1.0));
    CHECK(core::legendre(4, -1.0) == doctest::Approx(1.0));
    core::QuadRule rule = core::gauss_legendre(8);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) {
            double s = 0.0;
            for (int q = 0; q < rule.size(); ++q)
                s += rule.weights[q] * core::legendre(a, rule.nodes[q]) * core::legendre(b, rule.nodes[q]);
            const double exact = (a == b) ? 2.0 / (2.0 * a + 1.0) : 0.0;
            CHECK(std::abs(s - exact) < 1e-13);
        }
}

TEST_CASE("legendre derivative matches finite differences") {
    for (int m = 1; m <= 5; ++m)
        for (double x : {-0.73, -0.2, 0.11, 0.64}) {
            const double h = 1e-6;
            const double fd = (core::legendre(m, x + h) - core::legendre(m, x - h)) / (2.0 * h);
            CHECK(core::legendre_deriv(m, x) == doctest::Approx(fd).epsilon(1e-7));
        }
    CHECK(core::legendre_deriv(4, 1.0) == doctest::Approx(0.5 * 4 * 5));
    CHECK(core::legendre_deriv(3, -1.0) == doctest::Approx(0.5 * 3 * 4));
}

TEST_CASE("mass matrix entries") {
    core::ModalBasis b1(1, 3);
    auto d = b1.mass_diag(0.5);
    CHECK(d[0] == doctest::Approx(0.5));
    CHECK(d[1] == doctest::Approx(0.5 / 3.0));

    core::ModalBasis b0(0, 2);
    CHECK(b0.mass_diag(1.0)[0] == doctest::Approx(1.0));
}

TEST_CASE("2d mass diag matches brute-force quadrature") {
    core::ModalBasis2D b(1, 4);
    auto d = b.mass_diag(0.25 * 0.25);
    CHECK(d[0] == doctest::Approx(0.0625));
    CHECK(d[1] == doctest::Approx(0.0625 / 3.0));
    CHECK(d[2] == doctest::Approx(0.0625 / 3.0));
    CHECK(d[3] == doctest::Approx(0.0625 / 9.0));
    // brute force on the reference square scaled by the Jacobian
    core::QuadRule rule = core::gauss_legendre(4);
    for (int m = 0; m < b.dof(); ++m) {
        double s = 0.0;
        for (int qx = 0; qx < rule.size(); ++qx)
            for (int qy = 0; qy < rule.size(); ++qy) {
                const double phi = core::legendre(b.mode_a(m), rule.nodes[qx]) *
                                   core::legendre(b.mode_b(m), rule.nodes[qy]);
                s += rule.weights[qx] * rule.weights[qy] * phi * phi;
            }
        s *= 0.25 * 0.25 / 4.0;
        CHECK(d[m] == doctest::Approx(s).epsilon(1e-13));
    }
}

TEST_CASE("mass inverse times mass is identity") {
    core::ModalBasis b(3, 5);
    auto d = b.mass_diag(0.037);
    for (int m = 0; m < b.dof(); ++m) CHECK(d[m] * (1.0 / d[m]) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("projection reproduces constants and zero") {
    core::Grid1D grid(0.0, 1.0, 8, core::Boundary::Periodic);
    core::ModalBasis basis(2, 4);
    auto z = core::project_initial([](double) { return 0.0; }, grid, basis);
    for (double v : z.data) CHECK(v == 0.0);

    auto c = core::project_initial([](double) { return 4.2; }, grid, basis);
    for (int j = 0; j < 8; ++j) {
        CHECK(c(0, j) == doctest::Approx(4.2).epsilon(1e-14));
        CHECK(std::abs(c(1, j)) < 1e-14);
        CHECK(std::abs(c(2, j)) < 1e-14);
    }
}

TEST_CASE("projection of sin matches analytic cell averages") {
    const double twopi = 2.0 * 3.14159265358979323846;
    core::Grid1D grid(0.0, 1.0, 8, core::Boundary::Periodic);
    core::ModalBasis basis(2, 6);
    auto u = core::project_initial([&](double x) { return std::sin(twopi * x); }, grid, basis);
    for (int j = 0; j < 8; ++j) {
        const double a = grid.interface_x(j), b = grid.interface_x(j + 1);
        const double avg = (std::cos(twopi * a) - std::cos(twopi * b)) / (twopi * grid.dx());
        CHECK(u(0, j) == doctest::Approx(avg).epsilon(1e-12));
    }
}

TEST_CASE("projection is idempotent") {
    core::Grid1D grid(0.0, 1.0, 6, core::Boundary::Periodic);
    core::ModalBasis basis(2, 4);
    noise::CounterRng rng(7, 7);
    core::DGCoefficients u(basis.dof(), 6);
    for (double& v : u.data) v = rng.normal();
    auto field = [&](double x) { return core::eval_field(u, grid, basis, x); };
    auto v = core::project_initial(field, grid, basis);
    for (size_t i = 0; i < u.data.size(); ++i) CHECK(u.data[i] == doctest::Approx(v.data[i]).epsilon(1e-12));
}

TEST_CASE("projection rejects non-finite data") {
    core::Grid1D grid(0.0, 1.0, 4, core::Boundary::Periodic);
    core::ModalBasis basis(1, 3);
    CHECK_THROWS_AS(core::project_initial([](double) { return std::nan(""); }, grid, basis),
                    std::invalid_argument);
}

TEST_CASE("trace pair on piecewise constants") {
    core::Grid1D grid(0.0, 2.0, 2, core::Boundary::Periodic);
    core::ModalBasis basis(0, 2);
    core::DGCoefficients u(1, 2);
    u(0, 0) = 1.0;
    u(0, 1) = 3.0;
    auto t = core::trace_pair(u, basis, grid, 1);
    CHECK(t.minus == doctest::Approx(1.0));
    CHECK(t.plus == doctest::Approx(3.0));
    CHECK(core::jump(t) == doctest::Approx(2.0));
    CHECK(core::avg(t) == doctest::Approx(2.0));
}

TEST_CASE("trace pair sees P1 endpoint values") {
    core::Grid1D grid(0.0, 1.0, 2, core::Boundary::Periodic);
    core::ModalBasis basis(1, 3);
    core::DGCoefficients u(2, 2);
    u(1, 0) = 1.0; // pure slope in cell 0
    auto t = core::trace_pair(u, basis, grid, 1);
    CHECK(t.minus == doctest::Approx(1.0));  // P1(+1) = 1
    auto t0 = core::trace_pair(u, basis, grid, 0);
    CHECK(t0.plus == doctest::Approx(-1.0)); // P1(-1) = -1
}

TEST_CASE("extrapolate boundary kills all boundary jumps") {
    core::Grid1D grid(0.0, 1.0, 4, core::Boundary::Extrapolate);
    core::ModalBasis basis(2, 4);
    noise::CounterRng rng(3, 9);
    core::DGCoefficients u(basis.dof(), 4);
    for (double& v : u.data) v = rng.normal();
    auto tl = core::trace_pair(u, basis, grid, 0);
    auto tr = core::trace_pair(u, basis, grid, 4);
    CHECK(core::jump(tl) == 0.0);
    CHECK(core::jump(tr) == 0.0);
}

TEST_CASE("trace pair rejects out-of-range interface") {
    core::Grid1D grid(0.0, 1.0, 4, core::Boundary::Periodic);
    core::ModalBasis basis(0, 2);
    core::DGCoefficients u(1, 4);
    CHECK_THROWS_AS(core::trace_pair(u, basis, grid, 5), std::out_of_range);
}

TEST_CASE("jump identity") {
    CHECK(core::jump_identity_check(1.0, 3.0, 2.0, 2.0) == doctest::Approx(0.0));
    CHECK(core::jump_identity_check(0.7, -1.3, 0.7, -1.3) == doctest::Approx(0.0));
    noise::CounterRng rng(12, 5);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double am = rng.normal(), ap = rng.normal(), bm = rng.normal(), bp = rng.normal();
        worst = std::max(worst, std::abs(core::jump_identity_check(am, ap, bm, bp)));
    }
    CHECK(worst < 1e-14);
}

TEST_CASE("telescoping flux differences vanish on periodic grids") {
    core::Grid1D grid(0.0, 1.0, 16, core::Boundary::Periodic);
    noise::CounterRng rng(4, 4);
    std::vector<double> F(17);
    for (int i = 0; i < 16; ++i) F[i] = rng.normal();
    F[16] = F[0];
    double sum = 0.0, scale = 0.0;
    for (int j = 0; j < 16; ++j) {
        sum += F[j + 1] - F[j];
        scale = std::max(scale, std::abs(F[j]));
    }
    CHECK(std::abs(sum) <= 1e-12 * std::max(1.0, scale));
}
