// Command-line harness. Talks to the solver exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "sldg/sldg.h"

namespace {

int run(const std::string& command, const std::string& config_path, uint64_t seed, bool have_seed,
        const std::string& out_dir, int threads, bool quiet) {
    sldg_experiment* exp = nullptr;
    sldg_status st = sldg_experiment_create_from_file(config_path.c_str(), &exp);
    if (st != SLDG_OK) {
        std::fprintf(stderr, "error: %s: %s\n", sldg_status_message(st), sldg_last_error());
        return 1;
    }
    if (have_seed) sldg_experiment_set_seed(exp, seed);
    if (!out_dir.empty()) sldg_experiment_set_out_dir(exp, out_dir.c_str());
    if (threads > 0) sldg_experiment_set_threads(exp, threads);

    char* summary = nullptr;
    if (command == "run")
        st = sldg_run_single(exp, &summary);
    else if (command == "mc")
        st = sldg_run_mc(exp, &summary);
    else if (command == "eoc")
        st = sldg_run_eoc(exp, &summary);
    else if (command == "energy")
        st = sldg_run_energy(exp, &summary);
    else
        st = sldg_run_field(exp, &summary);

    int rc = 0;
    if (st != SLDG_OK) {
        std::fprintf(stderr, "error: %s: %s\n", sldg_status_message(st), sldg_last_error());
        rc = 1;
    } else if (summary && !quiet) {
        std::fputs(summary, stdout);
    }
    sldg_string_free(summary);
    sldg_experiment_destroy(exp);
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic LDG/FD solver harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    uint64_t seed = 0;
    bool have_seed = false;
    int threads = 0;
    bool quiet = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "experiment config (JSON)")->required();
        cmd->add_option("--seed", seed, "override the RNG seed")->each([&](const std::string&) {
            have_seed = true;
        });
        cmd->add_option("--out-dir", out_dir, "override the output directory");
        cmd->add_option("--threads", threads, "worker threads for Monte-Carlo realizations");
        cmd->add_flag("--quiet", quiet, "suppress the summary on stdout");
    };

    add_common(app.add_subcommand("run", "single realization, emits solution snapshots"));
    add_common(app.add_subcommand("mc", "Monte-Carlo study"));
    add_common(app.add_subcommand("eoc", "convergence table"));
    add_common(app.add_subcommand("energy", "stability traces"));
    add_common(app.add_subcommand("field", "Kraichnan field sample"));

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();
    return run(command, config_path, seed, have_seed, out_dir, threads, quiet);
}
