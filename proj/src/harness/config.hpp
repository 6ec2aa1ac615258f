#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sldg::harness {

/// Experiment description. Parsed from JSON with a strict key set: unknown
/// keys are rejected so typos fail loudly. Every run writes its resolved
/// config next to its outputs.
struct ExperimentConfig {
    std::string problem = "translating_sine";
    std::string form = "continuity"; // continuity | transport (linear problems)
    std::string module = "ldg";      // ldg | fd
    std::string flux_family = "linear"; // linear | mean | pathwise

    double gamma = 0.0;
    double gamma_tilde = 0.0;
    double theta = 0.5;
    double eta_u = 0.0;
    double eta_q = 0.0;

    std::string integrator = "srk32"; // srk32 | em | theta
    double theta_t = 0.5;

    int degree = 1;
    int n_cells = 16;
    int level = -1;          // h = 2^{-(3+level)} when >= 0
    std::vector<int> levels; // eoc studies
    std::vector<double> domain;

    int nx = 8, ny = 8;

    double T = 0.1;
    double dt = -1.0;
    double dt_c_h2 = -1.0;
    bool use_cfl = false;
    double kappa_c = 0.1, kappa_d = 0.1;
    double lambda_max = 0.0, a_max = 0.0;
    bool parabolic_2d = false;

    int n_realizations = 1;
    uint64_t seed = 0;
    std::string out_dir = "out";
    int threads = 1;
    int n_output = 11;
    int truncation_p = -1;

    double sigma_bar = 1.0;
    double xi = 1.0;
    double V0 = 1.0;
    std::vector<double> state_interval;

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);

    /// Resolved-config dump (canonical key order).
    std::string to_json() const;

    /// FNV-1a hash of the resolved config text.
    uint64_t hash() const;

    void validate() const;
};

} // namespace sldg::harness
