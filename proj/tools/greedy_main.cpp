#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "greedy/experiment.hpp"

namespace {

constexpr const char* kSubcommands[] = {"sample",        "solve",  "scan-lln",      "tail",
                                        "rate-table",    "fekete", "concentration", "verify",
                                        "counterexample", "emit-plotdata"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy fields: simulation, exact solving and statistical verification "
                 "of continuous greedy paths and animals on marked Poisson processes"};
    app.require_subcommand(0, 1);
    app.set_version_flag("--version", greedy::kToolVersion);

    std::string config_path;
    std::string out_dir = "out";
    bool force = false;
    std::uint64_t seed_flag = 0;
    bool seed_set = false;
    int workers_flag = 0;
    std::vector<std::string> inputs;

    app.add_option("--config", config_path, "experiment configuration file (key = value lines)");
    app.add_option("--out", out_dir, "output directory (refuses to overwrite without --force)");
    app.add_flag("--force", force, "overwrite existing outputs");
    app.add_option("--seed", seed_flag, "master seed, overrides the config seed")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_option("--workers", workers_flag, "worker threads (results do not depend on this)");

    std::vector<CLI::App*> subs;
    for (const char* name : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->fallthrough();
        subs.push_back(sub);
    }
    subs.back()->add_option("files", inputs, "report files to flatten");

    CLI11_PARSE(app, argc, argv);

    std::string experiment;
    for (std::size_t i = 0; i < std::size(kSubcommands); ++i)
        if (subs[i]->parsed()) experiment = kSubcommands[i];

    std::string config_text;
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) {
            std::cerr << "i/o error: cannot read config " << config_path << '\n';
            return greedy::kExitIo;
        }
        std::stringstream buf;
        buf << is.rdbuf();
        config_text = buf.str();
    }

    greedy::RunOptions options;
    if (seed_set) options.seed = seed_flag;
    if (workers_flag > 0) options.workers = workers_flag;
    options.out_dir = out_dir;
    options.force = force;
    options.inputs = inputs;

    return greedy::run_experiment(experiment, config_text, options, std::cout, std::cerr);
}
