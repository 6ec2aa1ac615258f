#include "harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sldg::harness {

using nlohmann::json;

namespace {
const std::set<std::string> kKnownKeys = {
    "problem",      "form",       "module",     "flux_family", "gamma",       "gamma_tilde",
    "theta",        "eta_u",      "eta_q",      "integrator",  "theta_t",     "degree",
    "n_cells",      "level",      "levels",     "domain",      "nx",          "ny",
    "T",            "dt",         "dt_c_h2",    "use_cfl",     "kappa_c",     "kappa_d",
    "lambda_max",   "a_max",      "parabolic_2d", "n_realizations", "seed",   "out_dir",
    "threads",      "n_output",   "truncation_p", "sigma_bar", "xi",          "V0",
    "state_interval"};
} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (kKnownKeys.find(it.key()) == kKnownKeys.end())
            throw std::invalid_argument("config: unknown key '" + it.key() + "'");

    ExperimentConfig c;
    auto get = [&](const char* k, auto& dst) {
        if (j.contains(k)) dst = j.at(k).get<std::decay_t<decltype(dst)>>();
    };
    get("problem", c.problem);
    get("form", c.form);
    get("module", c.module);
    get("flux_family", c.flux_family);
    get("gamma", c.gamma);
    get("gamma_tilde", c.gamma_tilde);
    get("theta", c.theta);
    get("eta_u", c.eta_u);
    get("eta_q", c.eta_q);
    get("integrator", c.integrator);
    get("theta_t", c.theta_t);
    get("degree", c.degree);
    get("n_cells", c.n_cells);
    get("level", c.level);
    get("levels", c.levels);
    get("domain", c.domain);
    get("nx", c.nx);
    get("ny", c.ny);
    get("T", c.T);
    get("dt", c.dt);
    get("dt_c_h2", c.dt_c_h2);
    get("use_cfl", c.use_cfl);
    get("kappa_c", c.kappa_c);
    get("kappa_d", c.kappa_d);
    get("lambda_max", c.lambda_max);
    get("a_max", c.a_max);
    get("parabolic_2d", c.parabolic_2d);
    get("n_realizations", c.n_realizations);
    get("seed", c.seed);
    get("out_dir", c.out_dir);
    get("threads", c.threads);
    get("n_output", c.n_output);
    get("truncation_p", c.truncation_p);
    get("sigma_bar", c.sigma_bar);
    get("xi", c.xi);
    get("V0", c.V0);
    get("state_interval", c.state_interval);
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json() const {
    json j;
    j["problem"] = problem;
    j["form"] = form;
    j["module"] = module;
    j["flux_family"] = flux_family;
    j["gamma"] = gamma;
    j["gamma_tilde"] = gamma_tilde;
    j["theta"] = theta;
    j["eta_u"] = eta_u;
    j["eta_q"] = eta_q;
    j["integrator"] = integrator;
    j["theta_t"] = theta_t;
    j["degree"] = degree;
    j["n_cells"] = n_cells;
    j["level"] = level;
    j["levels"] = levels;
    j["domain"] = domain;
    j["nx"] = nx;
    j["ny"] = ny;
    j["T"] = T;
    j["dt"] = dt;
    j["dt_c_h2"] = dt_c_h2;
    j["use_cfl"] = use_cfl;
    j["kappa_c"] = kappa_c;
    j["kappa_d"] = kappa_d;
    j["lambda_max"] = lambda_max;
    j["a_max"] = a_max;
    j["parabolic_2d"] = parabolic_2d;
    j["n_realizations"] = n_realizations;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["threads"] = threads;
    j["n_output"] = n_output;
    j["truncation_p"] = truncation_p;
    j["sigma_bar"] = sigma_bar;
    j["xi"] = xi;
    j["V0"] = V0;
    j["state_interval"] = state_interval;
    return j.dump(2);
}

uint64_t ExperimentConfig::hash() const {
    const std::string s = to_json();
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

void ExperimentConfig::validate() const {
    if (degree < 0) throw std::invalid_argument("config: degree must be >= 0");
    if (n_cells <= 0) throw std::invalid_argument("config: n_cells must be > 0");
    if (n_realizations <= 0) throw std::invalid_argument("config: n_realizations must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("config: T must be > 0");
    if (threads <= 0) throw std::invalid_argument("config: threads must be > 0");
    if (flux_family != "linear" && flux_family != "mean" && flux_family != "pathwise")
        throw std::invalid_argument("config: flux_family must be linear|mean|pathwise");
    if (integrator != "srk32" && integrator != "em" && integrator != "theta")
        throw std::invalid_argument("config: integrator must be srk32|em|theta");
    if (module != "ldg" && module != "fd") throw std::invalid_argument("config: module must be ldg|fd");
    if (module == "fd" && degree != 0)
        throw std::invalid_argument("config: fd module requires degree 0");
}

} // namespace sldg::harness
