#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specband/cli.hpp"
#include "specband/version.hpp"

namespace specband::cli {

// Argument parsing front door shared by the binary and the test suite.
inline int run_main(int argc, const char* const* argv) {
    CLI::App app{"Reproducible bandit simulation and policy-spectrum analysis"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string alphas_text;
    std::string at_text;
    int threads = 1;

    CLI::App* run = app.add_subcommand("run", "Run a single trace or a seeded ensemble");
    run->add_option("config", config_path, "Experiment config file (JSON)")->required();
    run->add_option("out_dir", out_dir, "Output directory")->required();
    run->add_option("--threads", threads, "Worker threads for replications");

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep the exploration decay exponent");
    sweep->add_option("config", config_path, "Experiment config file (JSON)")->required();
    sweep->add_option("out_dir", out_dir, "Output directory")->required();
    sweep->add_option("--alphas", alphas_text, "Comma-separated exponents in (0, 1]")->required();
    sweep->add_option("--threads", threads, "Worker threads for replications");

    CLI::App* spectrum = app.add_subcommand("spectrum", "Emit spectral slices at chosen times");
    spectrum->add_option("config", config_path, "Experiment config file (JSON)")->required();
    spectrum->add_option("out_dir", out_dir, "Output directory")->required();
    spectrum->add_option("--at", at_text, "Comma-separated time steps")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    RunOptions options;
    options.threads = threads;
    try {
        if (run->parsed()) {
            return cmd_run(config_path, out_dir, options);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config_path, detail::parse_alpha_list(alphas_text), out_dir, options);
        }
        if (spectrum->parsed()) {
            return cmd_spectrum(config_path, detail::parse_time_list(at_text), out_dir);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}

}  // namespace specband::cli
