#include <CLI11.hpp>

#include <iostream>

#include "lamelab/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Fourier-spectral experiments for the Lamé operator on a periodic box"};
    app.set_version_flag("--version", lamelab::kVersion);

    std::string subcommand;
    std::string config;
    std::string out;
    std::string config_pos;
    std::string out_pos;
    std::uint64_t seed = 0;
    int threads = 0;
    app.add_option("subcommand", subcommand,
                   "decompose | operator-check | identities | constants | spectrum | resolvent-sweep")
        ->required();
    app.add_option("config_file", config_pos, "key=value config file");
    app.add_option("out_dir", out_pos, "output directory");
    app.add_option("--config,-c", config, "key=value config file");
    app.add_option("--out,-o", out, "output directory");
    auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
    auto* threads_opt = app.add_option("--threads", threads, "override the config thread count")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (config.empty()) config = config_pos;
    if (out.empty()) out = out_pos;
    if (config.empty() || out.empty()) {
        std::cerr << "error: both a config file and an output directory are required\n";
        return 2;
    }
    lamelab::RunOverrides ov;
    if (seed_opt->count()) ov.seed = seed;
    if (threads_opt->count()) ov.threads = threads;
    return lamelab::run(subcommand, config, out, ov);
}
