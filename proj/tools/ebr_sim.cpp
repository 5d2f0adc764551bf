#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "ebr/cli/commands.hpp"

int main(int argc, char **argv) {
    using namespace ebr::cli;

    CLI::App app{"Entanglement-breaking-channel recovery simulator"};
    app.require_subcommand(1);

    CommandOptions opts;
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    double grid_step = 0.0;
    std::string format;

    const std::map<std::string, std::string> descriptions{
        {"run", "Run the three-stage protocol for one configuration"},
        {"sweep", "Sweep T, epsilon or p and write one row per stage"},
        {"oracle-check", "Compare closed forms with the Fock-space simulation"},
        {"tomography", "Simulate counts, reconstruct and bootstrap error bars"},
    };
    std::map<std::string, CLI::App *> subs;
    for (const auto &[name, text] : descriptions) {
        CLI::App *sub = app.add_subcommand(name, text);
        sub->add_option("--config", config, "Configuration file (key = value)");
        sub->add_option("--out", out, "Output path (prefix for tomography)");
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--grid-step", grid_step, "T grid spacing for oracle-check");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    for (const auto &[name, sub] : subs) {
        if (!sub->parsed()) {
            continue;
        }
        if (sub->count("--config")) opts.config_path = config;
        if (sub->count("--out")) opts.out_path = out;
        if (sub->count("--seed")) opts.seed = seed;
        if (sub->count("--grid-step")) opts.grid_step = grid_step;
        if (sub->count("--format")) opts.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

        if (name == "run") return cmd_run(opts, std::cout, std::cerr);
        if (name == "sweep") return cmd_sweep(opts, std::cout, std::cerr);
        if (name == "oracle-check") return cmd_oracle_check(opts, std::cout, std::cerr);
        return cmd_tomography(opts, std::cout, std::cerr);
    }
    return kUsage;
}
