#pragma once

#include <string>
#include <vector>

#include "harness/config.hpp"
#include "harness/problems.hpp"
#include "noise/wiener.hpp"

namespace sldg::harness {

/// Pathwise record of one realization at the output times.
struct RealizationTrace {
    std::vector<double> times;
    std::vector<double> l2;
    std::vector<double> err; // empty when no exact solution
    bool blew_up = false;
};

struct McResult {
    std::vector<double> times;
    std::vector<RealizationTrace> traces;
    std::vector<double> mc_energy; // sqrt(mean of ||u||^2) per output time
    int blowups = 0;
    double max_pathwise_increase = 0.0; // sup over realizations of sup_{s<t} (||u(t)|| - ||u(s)||)_+
    double mean_bound_margin = 0.0;     // max_t E||u||^2 / (||u0||^2 exp(rate t))
    double err_max = 0.0;               // max over times of rms spatial error
};

struct EocRow {
    int level = 0;
    double h = 0.0;
    double err = 0.0;
    double eoc = 0.0; // nan on the coarsest row
};

/// In-memory entry points (also used by the acceptance suite).
McResult run_mc_core(const ExperimentConfig& cfg);
std::vector<EocRow> run_eoc_core(const ExperimentConfig& cfg);

/// Integrate one realization; exposes the final state for single runs.
struct PathRun {
    RealizationTrace trace;
    core::DGCoefficients final_state;
    std::vector<core::DGCoefficients> snapshots; // filled when requested
};
PathRun integrate_realization(const ProblemSetup& ps, const ExperimentConfig& cfg, uint64_t realization,
                              const noise::WienerRealization* path = nullptr,
                              bool keep_snapshots = false);

/// Resolve the step count/size for a problem (fixed dt, c*h^2 rule, or CFL).
int resolve_steps(const ExperimentConfig& cfg, double h, int degree, double* dt_out);

/// File-emitting commands; each writes CSV artifacts plus summary.json and
/// the resolved config under cfg.out_dir, returning the summary JSON text.
std::string run_single(const ExperimentConfig& cfg);
std::string run_mc(const ExperimentConfig& cfg);
std::string run_eoc(const ExperimentConfig& cfg);
std::string run_energy(const ExperimentConfig& cfg);
std::string run_field(const ExperimentConfig& cfg);

} // namespace sldg::harness
