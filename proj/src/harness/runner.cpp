#include "harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "core/projection.hpp"
#include "integrate/integrators.hpp"
#include "noise/kraichnan.hpp"
#include "noise/rng.hpp"

namespace sldg::harness {

using nlohmann::json;

int resolve_steps(const ExperimentConfig& cfg, double h, int degree, double* dt_out) {
    double dt_target;
    if (cfg.dt > 0.0) {
        dt_target = cfg.dt;
    } else if (cfg.dt_c_h2 > 0.0) {
        dt_target = cfg.dt_c_h2 * h * h;
    } else if (cfg.use_cfl) {
        ti::StepController ctl;
        ctl.use_cfl = true;
        ctl.kappa_c = cfg.kappa_c;
        ctl.kappa_d = cfg.kappa_d;
        ctl.lambda_max = cfg.lambda_max;
        ctl.a_max = cfg.a_max;
        ctl.parabolic_2d = cfg.parabolic_2d;
        dt_target = ti::select_dt(ctl, h, degree);
    } else {
        dt_target = 0.1 * h * h; // default rule dt = c h^2
    }
    const int n = std::max(1, static_cast<int>(std::ceil(cfg.T / dt_target - 1e-12)));
    if (dt_out) *dt_out = cfg.T / n;
    return n;
}

namespace {

std::vector<int> output_indices(int n_steps, int n_output) {
    n_output = std::max(2, n_output);
    std::vector<int> idx;
    for (int i = 0; i < n_output; ++i) {
        int k = static_cast<int>(std::lround(static_cast<double>(i) * n_steps / (n_output - 1)));
        if (idx.empty() || k > idx.back()) idx.push_back(k);
    }
    if (idx.back() != n_steps) idx.push_back(n_steps);
    return idx;
}

void run_over_realizations(int n_realizations, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || n_realizations <= 1) {
        for (int r = 0; r < n_realizations; ++r) body(r);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= n_realizations) return;
            body(r);
        }
    };
    std::vector<std::thread> pool;
    const int nt = std::min(threads, n_realizations);
    pool.reserve(nt);
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

} // namespace

PathRun integrate_realization(const ProblemSetup& ps, const ExperimentConfig& cfg, uint64_t realization,
                              const noise::WienerRealization* given_path, bool keep_snapshots) {
    PathRun out;
    const int modes = ps.system.n_modes;

    noise::WienerRealization local_path;
    const noise::WienerRealization* path = given_path;
    int n_steps;
    if (!path) {
        double dt;
        n_steps = resolve_steps(cfg, ps.h, cfg.degree, &dt);
        std::vector<double> tgrid(n_steps + 1);
        for (int n = 0; n <= n_steps; ++n) tgrid[n] = cfg.T * n / n_steps;
        local_path = noise::sample_path(modes, tgrid, noise::hash_combine(cfg.seed, realization));
        path = &local_path;
    } else {
        n_steps = path->n_steps();
    }

    const std::vector<int> out_idx = output_indices(n_steps, cfg.n_output);
    const bool has_exact = static_cast<bool>(ps.exact) && modes == 1;

    core::DGCoefficients u = ps.u0;
    double W = 0.0; // cumulative first-mode path, for closed-form solutions
    size_t next_out = 0;

    ti::DenseLinearSystem dense;
    if (cfg.integrator == "theta") dense = ti::materialize(ps.system);

    noise::CounterRng iter_rng(noise::hash_combine(cfg.seed, realization), 0x49746572ULL);

    auto record = [&](int step) {
        const double t = path->times[step];
        out.trace.times.push_back(t);
        out.trace.l2.push_back(ps.l2_norm_of(u));
        if (has_exact) out.trace.err.push_back(ps.l2_error_at(u, t, W));
        if (keep_snapshots) out.snapshots.push_back(u);
    };

    if (out_idx[next_out] == 0) {
        record(0);
        ++next_out;
    }

    bool ok = true;
    for (int n = 0; n < n_steps && ok; ++n) {
        const double dt = path->dt(n);
        if (cfg.integrator == "em") {
            ok = ti::euler_maruyama(ps.system, u, dt, path->dW[n]);
        } else if (cfg.integrator == "theta") {
            std::vector<double> state(u.data.begin(), u.data.end());
            ok = ti::theta_step(dense, state, dt, path->dW[n][0], cfg.theta_t);
            std::copy(state.begin(), state.end(), u.data.begin());
        } else if (modes == 1) {
            ok = ti::srk32_scalar(ps.system, u, dt, path->dW[n][0], path->dZ[n][0]);
        } else {
            const int p = cfg.truncation_p > 0 ? cfg.truncation_p : noise::default_truncation(dt);
            const noise::IteratedIntegrals ii =
                noise::iterated_integrals(path->dW[n], dt, p, iter_rng, &path->dZ[n], true);
            ok = ti::srk32_multi(ps.system, u, dt, ii);
        }
        W += path->dW[n][0];
        if (next_out < out_idx.size() && out_idx[next_out] == n + 1) {
            if (ok) record(n + 1);
            ++next_out;
        }
    }
    out.trace.blew_up = !ok;
    out.final_state = u;
    return out;
}

McResult run_mc_core(const ExperimentConfig& cfg) {
    const ProblemSetup ps = build_problem(cfg);
    McResult res;
    res.traces.resize(cfg.n_realizations);

    run_over_realizations(cfg.n_realizations, cfg.threads, [&](int r) {
        res.traces[r] = integrate_realization(ps, cfg, r).trace;
    });

    // Deterministic aggregation over the realization index.
    for (const auto& tr : res.traces)
        if (tr.blew_up) ++res.blowups;
    const RealizationTrace* ref = nullptr;
    for (const auto& tr : res.traces)
        if (!tr.blew_up) {
            ref = &tr;
            break;
        }
    if (ref) {
        res.times = ref->times;
        const size_t nt = res.times.size();
        res.mc_energy.assign(nt, 0.0);
        std::vector<double> mean_err2(nt, 0.0);
        int count = 0;
        for (const auto& tr : res.traces) {
            if (tr.blew_up || tr.times.size() != nt) continue;
            ++count;
            for (size_t i = 0; i < nt; ++i) {
                res.mc_energy[i] += tr.l2[i] * tr.l2[i];
                if (!tr.err.empty()) mean_err2[i] += tr.err[i] * tr.err[i];
            }
            double run_min = tr.l2.empty() ? 0.0 : tr.l2[0];
            for (size_t i = 1; i < tr.l2.size(); ++i) {
                res.max_pathwise_increase = std::max(res.max_pathwise_increase, tr.l2[i] - run_min);
                run_min = std::min(run_min, tr.l2[i]);
            }
        }
        if (count > 0) {
            for (size_t i = 0; i < nt; ++i) {
                const double e2 = res.mc_energy[i] / count;
                res.mc_energy[i] = std::sqrt(e2);
                const double bound = ps.u0_l2 * ps.u0_l2 * std::exp(ps.energy_rate * res.times[i]);
                if (bound > 0.0) res.mean_bound_margin = std::max(res.mean_bound_margin, e2 / bound);
                res.err_max = std::max(res.err_max, std::sqrt(mean_err2[i] / count));
            }
        }
    }
    return res;
}

std::vector<EocRow> run_eoc_core(const ExperimentConfig& cfg) {
    std::vector<int> levels = cfg.levels;
    if (levels.empty()) levels = {0, 1, 2, 3, 4};
    std::sort(levels.begin(), levels.end());
    const int lmax = levels.back();
    const double c = cfg.dt_c_h2 > 0.0 ? cfg.dt_c_h2 : 0.1;
    const double h_fin = std::pow(2.0, -(3.0 + lmax));

    // Common random numbers: one path per realization at the finest step,
    // aggregated upward (step ratios are exact powers of 4).
    int n_fin = std::max(1, static_cast<int>(std::ceil(cfg.T / (c * h_fin * h_fin) - 1e-12)));
    const int align = 1 << (2 * (lmax - levels.front()));
    n_fin = ((n_fin + align - 1) / align) * align;
    std::vector<double> tfine(n_fin + 1);
    for (int n = 0; n <= n_fin; ++n) tfine[n] = cfg.T * n / n_fin;

    std::vector<EocRow> table;
    for (int l : levels) {
        ExperimentConfig lc = cfg;
        lc.level = l;
        const ProblemSetup ps = build_problem(lc);
        const int factor = 1 << (2 * (lmax - l));

        std::vector<std::vector<double>> errs(cfg.n_realizations);
        std::vector<char> blew(cfg.n_realizations, 0);
        run_over_realizations(cfg.n_realizations, cfg.threads, [&](int r) {
            const noise::WienerRealization fine =
                noise::sample_path(ps.system.n_modes, tfine, noise::hash_combine(cfg.seed, r));
            const noise::WienerRealization coarse = noise::aggregate_path(fine, factor);
            const PathRun run = integrate_realization(ps, lc, r, &coarse);
            blew[r] = run.trace.blew_up ? 1 : 0;
            errs[r] = run.trace.err;
        });

        // Err = max over output times of the rms-in-omega spatial error.
        size_t nt = 0;
        for (int r = 0; r < cfg.n_realizations; ++r)
            if (!blew[r]) nt = std::max(nt, errs[r].size());
        double err_level = std::nan("");
        if (nt > 0) {
            err_level = 0.0;
            for (size_t i = 0; i < nt; ++i) {
                double mean2 = 0.0;
                int count = 0;
                for (int r = 0; r < cfg.n_realizations; ++r) {
                    if (blew[r] || errs[r].size() != nt) continue;
                    mean2 += errs[r][i] * errs[r][i];
                    ++count;
                }
                if (count) err_level = std::max(err_level, std::sqrt(mean2 / count));
            }
        }
        EocRow row;
        row.level = l;
        row.h = std::pow(2.0, -(3.0 + l));
        row.err = err_level;
        row.eoc = std::nan("");
        if (!table.empty())
            row.eoc = std::log(table.back().err / row.err) / std::log(table.back().h / row.h);
        table.push_back(row);
    }
    return table;
}

// ---------------------------------------------------------------------------
// File-emitting commands
// ---------------------------------------------------------------------------

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void write_resolved_config(const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    write_text(cfg.out_dir + "/resolved_config.json", cfg.to_json() + "\n");
}

void write_gnuplot(const ExperimentConfig& cfg, const std::string& csv, int ycol,
                   const std::string& title) {
    std::string plt = "set datafile separator ','\nset key off\nset xlabel 't'\n";
    plt += "set title '" + title + "'\n";
    plt += "plot '" + csv + "' using 1:" + std::to_string(ycol) + " with points pt 7 ps 0.3\n";
    write_text(cfg.out_dir + "/plot.plt", plt);
}

std::string finish_summary(const ExperimentConfig& cfg, json& j) {
    j["config_hash"] = cfg.hash();
    const std::string text = j.dump(2) + "\n";
    write_text(cfg.out_dir + "/summary.json", text);
    return text;
}

} // namespace

std::string run_single(const ExperimentConfig& cfg) {
    write_resolved_config(cfg);
    const ProblemSetup ps = build_problem(cfg);
    const PathRun run = integrate_realization(ps, cfg, 0, nullptr, true);

    std::ofstream csv(cfg.out_dir + "/snapshots.csv", std::ios::binary);
    if (!ps.is_2d) {
        csv << "t,x,value\n";
        for (size_t s = 0; s < run.snapshots.size(); ++s) {
            const double t = run.trace.times[s];
            for (int j = 0; j < ps.grid.n_cells; ++j)
                for (double xi : {-1.0, 0.0, 1.0}) {
                    const double x = ps.grid.cell_center(j) + 0.5 * ps.grid.dx() * xi;
                    csv << t << ',' << x << ',' << ps.basis->eval(run.snapshots[s].col(j), xi) << '\n';
                }
        }
    } else {
        csv << "t,x,y,value\n";
        for (size_t s = 0; s < run.snapshots.size(); ++s) {
            const double t = run.trace.times[s];
            for (int cj = 0; cj < ps.mesh.ny; ++cj)
                for (int ci = 0; ci < ps.mesh.nx; ++ci) {
                    const int cell = ps.mesh.cell_id(ci, cj);
                    csv << t << ',' << ps.mesh.cell_x(ci) << ',' << ps.mesh.cell_y(cj) << ','
                        << ps.basis2->eval(run.snapshots[s].col(cell), 0.0, 0.0) << '\n';
                }
        }
    }
    csv.close();
    write_gnuplot(cfg, "snapshots.csv", 3, "solution snapshots");

    json j;
    j["command"] = "run";
    j["blew_up"] = run.trace.blew_up;
    j["l2_initial"] = ps.u0_l2;
    j["l2_final"] = run.trace.l2.empty() ? 0.0 : run.trace.l2.back();
    return finish_summary(cfg, j);
}

namespace {
std::string mc_common(const ExperimentConfig& cfg, const char* command) {
    write_resolved_config(cfg);
    const McResult res = run_mc_core(cfg);

    std::ofstream csv(cfg.out_dir + "/trace.csv", std::ios::binary);
    const bool has_err = !res.traces.empty() && !res.traces.front().err.empty();
    csv << (has_err ? "t,realization,l2_norm,err_exact\n" : "t,realization,l2_norm\n");
    csv.precision(15);
    for (size_t r = 0; r < res.traces.size(); ++r) {
        const auto& tr = res.traces[r];
        for (size_t i = 0; i < tr.times.size(); ++i) {
            csv << tr.times[i] << ',' << r << ',' << tr.l2[i];
            if (has_err) csv << ',' << (i < tr.err.size() ? tr.err[i] : std::nan(""));
            csv << '\n';
        }
    }
    csv.close();

    std::ofstream ecsv(cfg.out_dir + "/energy.csv", std::ios::binary);
    ecsv << "t,root_mean_energy\n";
    ecsv.precision(15);
    for (size_t i = 0; i < res.times.size(); ++i) ecsv << res.times[i] << ',' << res.mc_energy[i] << '\n';
    ecsv.close();
    write_gnuplot(cfg, "energy.csv", 2, "root mean energy");

    json j;
    j["command"] = command;
    j["blowup_count"] = res.blowups;
    j["max_pathwise_increase"] = res.max_pathwise_increase;
    j["mean_bound_margin"] = res.mean_bound_margin;
    j["err_max"] = res.err_max;
    j["n_realizations"] = cfg.n_realizations;
    return finish_summary(cfg, j);
}
} // namespace

std::string run_mc(const ExperimentConfig& cfg) { return mc_common(cfg, "mc"); }
std::string run_energy(const ExperimentConfig& cfg) { return mc_common(cfg, "energy"); }

std::string run_eoc(const ExperimentConfig& cfg) {
    write_resolved_config(cfg);
    const std::vector<EocRow> table = run_eoc_core(cfg);

    std::ofstream csv(cfg.out_dir + "/eoc.csv", std::ios::binary);
    csv << "level,h,err,eoc\n";
    csv.precision(15);
    for (const auto& row : table)
        csv << row.level << ',' << row.h << ',' << row.err << ',' << row.eoc << '\n';
    csv.close();

    json j;
    j["command"] = "eoc";
    json rows = json::array();
    for (const auto& row : table) {
        json r;
        r["level"] = row.level;
        r["h"] = row.h;
        r["err"] = row.err;
        r["eoc"] = std::isnan(row.eoc) ? json() : json(row.eoc);
        rows.push_back(r);
    }
    j["table"] = rows;
    return finish_summary(cfg, j);
}

std::string run_field(const ExperimentConfig& cfg) {
    write_resolved_config(cfg);
    const double h = 1.0 / cfg.nx;
    const noise::KraichnanField field = noise::build_kraichnan(cfg.xi, cfg.V0, h);

    const int ns = 4 * cfg.nx;
    const double twopi = 6.283185307179586476925;
    std::ofstream csv(cfg.out_dir + "/field.csv", std::ios::binary);
    csv << "x,y,sigma_index,component,value\n";
    csv.precision(15);
    double max_dev = 0.0;
    for (int iy = 0; iy < ns; ++iy)
        for (int ix = 0; ix < ns; ++ix) {
            const double x = twopi * ix / ns, y = twopi * iy / ns;
            max_dev = std::max(max_dev, std::abs(field.sum_sq(x, y) - cfg.V0 * cfg.V0));
            for (int l = 0; l < field.n_modes(); ++l) {
                double sx, sy;
                field.eval(l, x, y, sx, sy);
                csv << x << ',' << y << ',' << l << ",0," << sx << '\n';
                csv << x << ',' << y << ',' << l << ",1," << sy << '\n';
            }
        }
    csv.close();

    std::vector<double> seps;
    for (int i = 0; i < 12; ++i)
        seps.push_back(1.0 / field.k_star * std::pow(10.0, static_cast<double>(i) / 11.0));
    const noise::StructureTable tab = noise::structure_function(field, seps);
    std::ofstream scsv(cfg.out_dir + "/structure.csv", std::ios::binary);
    scsv << "separation,structure\n";
    scsv.precision(15);
    for (size_t i = 0; i < tab.separations.size(); ++i)
        scsv << tab.separations[i] << ',' << tab.values[i] << '\n';
    scsv.close();

    double max_flux = 0.0;
    noise::CounterRng rng(cfg.seed, 0x466c7578ULL);
    for (int trial = 0; trial < 8; ++trial) {
        const double x0 = twopi * rng.u01(), y0 = twopi * rng.u01();
        const double w = 0.1 + rng.u01(), hgt = 0.1 + rng.u01();
        for (int l = 0; l < field.n_modes(); ++l)
            max_flux = std::max(max_flux, std::abs(field.boundary_flux(l, x0, x0 + w, y0, y0 + hgt)));
    }

    json j;
    j["command"] = "field";
    j["k_star"] = field.k_star;
    j["n_modes"] = field.n_modes();
    j["normalization_D"] = field.D;
    j["max_sum_sq_deviation"] = max_dev;
    j["max_divergence_flux"] = max_flux;
    j["structure_slope"] = tab.slope;
    return finish_summary(cfg, j);
}

} // namespace sldg::harness
