#include "noise/kraichnan.hpp"

#include <cmath>
#include <stdexcept>

#include "core/quadrature.hpp"
#include "noise/rng.hpp"

namespace sldg::noise {

void KraichnanField::eval(int l, double x, double y, double& sx, double& sy) const {
    const Mode& m = modes[l];
    const double kn = std::sqrt(m.kx * m.kx + m.ky * m.ky);
    const double phase = m.kx * x + m.ky * y;
    const double f = m.amp * (m.cosine ? std::cos(phase) : std::sin(phase));
    sx = -m.ky / kn * f;
    sy = m.kx / kn * f;
}

double KraichnanField::sum_sq(double x, double y) const {
    double s = 0.0;
    for (int l = 0; l < n_modes(); ++l) {
        double sx, sy;
        eval(l, x, y, sx, sy);
        s += sx * sx + sy * sy;
    }
    return s;
}

double KraichnanField::boundary_flux(int l, double x0, double x1, double y0, double y1, int n_panels,
                                     int n_gauss) const {
    const core::QuadRule rule = core::gauss_legendre(n_gauss);
    auto edge = [&](double ax, double ay, double bx, double by, double nx, double ny) {
        const double len = std::hypot(bx - ax, by - ay);
        double s = 0.0;
        for (int panel = 0; panel < n_panels; ++panel) {
            const double t0 = static_cast<double>(panel) / n_panels;
            const double t1 = static_cast<double>(panel + 1) / n_panels;
            for (int q = 0; q < rule.size(); ++q) {
                const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * rule.nodes[q];
                const double px = ax + t * (bx - ax), py = ay + t * (by - ay);
                double sx, sy;
                eval(l, px, py, sx, sy);
                s += rule.weights[q] * 0.5 * (t1 - t0) * len * (sx * nx + sy * ny);
            }
        }
        return s;
    };
    return edge(x0, y0, x1, y0, 0.0, -1.0) + edge(x1, y0, x1, y1, 1.0, 0.0) +
           edge(x1, y1, x0, y1, 0.0, 1.0) + edge(x0, y1, x0, y0, -1.0, 0.0);
}

KraichnanField build_kraichnan(double xi, double V0, double h) {
    if (!(xi > 0.0 && xi < 2.0)) throw std::invalid_argument("build_kraichnan: xi must be in (0,2)");
    if (!(h > 0.0) || !(V0 > 0.0)) throw std::invalid_argument("build_kraichnan: h and V0 must be > 0");
    KraichnanField f;
    f.xi = xi;
    f.V0 = V0;
    f.k_star = std::max(1, static_cast<int>(std::lround(1.0 / (3.0 * h))));

    double denom = 0.0;
    for (int kx = -f.k_star; kx <= f.k_star; ++kx)
        for (int ky = -f.k_star; ky <= f.k_star; ++ky) {
            const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
            if (k2 < 1.0 || k2 > static_cast<double>(f.k_star) * f.k_star) continue;
            denom += std::pow(k2, -0.5 * (2.0 + xi));
        }
    f.D = V0 * V0 / denom;

    for (int kx = -f.k_star; kx <= f.k_star; ++kx)
        for (int ky = -f.k_star; ky <= f.k_star; ++ky) {
            const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
            if (k2 < 1.0 || k2 > static_cast<double>(f.k_star) * f.k_star) continue;
            const double amp = std::sqrt(f.D) * std::pow(k2, -0.5 * (1.0 + 0.5 * xi));
            f.modes.push_back({static_cast<double>(kx), static_cast<double>(ky), amp, true});
            f.modes.push_back({static_cast<double>(kx), static_cast<double>(ky), amp, false});
        }
    return f;
}

StructureTable structure_function(const KraichnanField& field, const std::vector<double>& separations,
                                  int n_points, int n_dirs, uint64_t seed) {
    if (separations.empty()) throw std::invalid_argument("structure_function: empty separation list");
    StructureTable tab;
    tab.separations = separations;
    tab.values.resize(separations.size());
    CounterRng rng(seed, 0x5374727563ULL);
    const double twopi = 6.283185307179586476925;
    std::vector<double> xs(n_points), ys(n_points), phis(n_dirs);
    for (int i = 0; i < n_points; ++i) {
        xs[i] = twopi * rng.u01();
        ys[i] = twopi * rng.u01();
    }
    for (int d = 0; d < n_dirs; ++d) phis[d] = twopi * rng.u01();

    for (size_t s = 0; s < separations.size(); ++s) {
        const double r = separations[s];
        double acc = 0.0;
        for (int d = 0; d < n_dirs; ++d) {
            const double ex = std::cos(phis[d]), ey = std::sin(phis[d]);
            for (int i = 0; i < n_points; ++i) {
                double tot = 0.0;
                for (int l = 0; l < field.n_modes(); ++l) {
                    double ax, ay, bx, by;
                    field.eval(l, xs[i], ys[i], ax, ay);
                    field.eval(l, xs[i] + r * ex, ys[i] + r * ey, bx, by);
                    tot += (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
                }
                acc += tot;
            }
        }
        tab.values[s] = acc / (static_cast<double>(n_dirs) * n_points);
    }

    // Least-squares slope of log S against log r.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(separations.size());
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(tab.separations[i]), ly = std::log(tab.values[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    tab.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return tab;
}

} // namespace sldg::noise
