#include "sldg/sldg.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "harness/config.hpp"
#include "harness/runner.hpp"

struct sldg_experiment {
    sldg::harness::ExperimentConfig cfg;
};

namespace {

thread_local std::string g_last_error;

sldg_status fail(sldg_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
sldg_status run_command(sldg_experiment* exp, char** summary_json, Fn&& fn) {
    if (!exp) return fail(SLDG_ERR_INVALID_ARG, "null experiment handle");
    try {
        const std::string summary = fn(exp->cfg);
        if (summary_json) *summary_json = dup_string(summary);
        g_last_error.clear();
        return SLDG_OK;
    } catch (const std::invalid_argument& e) {
        return fail(SLDG_ERR_CONFIG, e.what());
    } catch (const std::runtime_error& e) {
        return fail(SLDG_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(SLDG_ERR_INTERNAL, e.what());
    }
}

} // namespace

extern "C" {

const char* sldg_version(void) { return "0.1.0"; }

const char* sldg_status_message(sldg_status status) {
    switch (status) {
        case SLDG_OK: return "ok";
        case SLDG_ERR_INVALID_ARG: return "invalid argument";
        case SLDG_ERR_CONFIG: return "configuration error";
        case SLDG_ERR_IO: return "i/o error";
        case SLDG_ERR_BLOWUP: return "realization blow-up";
        case SLDG_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

sldg_status sldg_experiment_create_from_json(const char* json_text, sldg_experiment** out) {
    if (!json_text || !out) return fail(SLDG_ERR_INVALID_ARG, "null argument");
    try {
        auto* exp = new sldg_experiment{sldg::harness::ExperimentConfig::from_json_text(json_text)};
        *out = exp;
        g_last_error.clear();
        return SLDG_OK;
    } catch (const std::exception& e) {
        return fail(SLDG_ERR_CONFIG, e.what());
    }
}

sldg_status sldg_experiment_create_from_file(const char* path, sldg_experiment** out) {
    if (!path || !out) return fail(SLDG_ERR_INVALID_ARG, "null argument");
    try {
        auto* exp = new sldg_experiment{sldg::harness::ExperimentConfig::from_file(path)};
        *out = exp;
        g_last_error.clear();
        return SLDG_OK;
    } catch (const std::exception& e) {
        return fail(SLDG_ERR_CONFIG, e.what());
    }
}

void sldg_experiment_destroy(sldg_experiment* exp) { delete exp; }

sldg_status sldg_experiment_set_seed(sldg_experiment* exp, uint64_t seed) {
    if (!exp) return fail(SLDG_ERR_INVALID_ARG, "null experiment handle");
    exp->cfg.seed = seed;
    return SLDG_OK;
}

sldg_status sldg_experiment_set_out_dir(sldg_experiment* exp, const char* dir) {
    if (!exp || !dir) return fail(SLDG_ERR_INVALID_ARG, "null argument");
    exp->cfg.out_dir = dir;
    return SLDG_OK;
}

sldg_status sldg_experiment_set_threads(sldg_experiment* exp, int threads) {
    if (!exp || threads <= 0) return fail(SLDG_ERR_INVALID_ARG, "threads must be positive");
    exp->cfg.threads = threads;
    return SLDG_OK;
}

sldg_status sldg_run_single(sldg_experiment* exp, char** summary_json) {
    return run_command(exp, summary_json, [](auto& c) { return sldg::harness::run_single(c); });
}

sldg_status sldg_run_mc(sldg_experiment* exp, char** summary_json) {
    return run_command(exp, summary_json, [](auto& c) { return sldg::harness::run_mc(c); });
}

sldg_status sldg_run_eoc(sldg_experiment* exp, char** summary_json) {
    return run_command(exp, summary_json, [](auto& c) { return sldg::harness::run_eoc(c); });
}

sldg_status sldg_run_energy(sldg_experiment* exp, char** summary_json) {
    return run_command(exp, summary_json, [](auto& c) { return sldg::harness::run_energy(c); });
}

sldg_status sldg_run_field(sldg_experiment* exp, char** summary_json) {
    return run_command(exp, summary_json, [](auto& c) { return sldg::harness::run_field(c); });
}

void sldg_string_free(char* s) { std::free(s); }

const char* sldg_last_error(void) { return g_last_error.c_str(); }

} // extern "C"
