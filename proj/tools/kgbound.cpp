#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kgbound/config.hpp"
#include "kgbound/error.hpp"
#include "kgbound/runner.hpp"

using namespace kgbound;

int main(int argc, char** argv)
{
    CLI::App app{"Klein-Gordon bound states: algebraic spectra, wavefunctions and a shooting cross-check"};
    std::string command;
    std::string config_path;
    std::string out_dir;
    cli::RunOptions options;

    app.add_option("command", command, "solve | spectrum | wavefunction | verify | list-potentials (default: from config)")
        ->check(CLI::IsMember({"solve", "spectrum", "wavefunction", "verify", "list-potentials"}));
    app.add_option("--config", config_path, "JSON job file");
    app.add_option("--out", out_dir, "output directory (overrides output.directory)");
    app.add_flag("--seed-goldens", options.seed_goldens, "run the shooting oracle and write goldens.csv");
    app.add_flag("--strict", options.strict, "treat warnings as errors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_config;
    }

    options.threads = cli::threads_from_environment();
    if (!out_dir.empty()) {
        options.out_dir = out_dir;
    }

    cli::JobConfig job;
    if (config_path.empty()) {
        if (command != "list-potentials") {
            std::cerr << "error: --config is required\n";
            return cli::exit_config;
        }
        job.command = cli::Command::list_potentials;
    } else {
        try {
            job = cli::load_config(config_path);
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return cli::exit_config;
        }
        if (!command.empty() && command != cli::to_string(job.command)) {
            std::cerr << "error: command '" << command << "' does not match config command '"
                      << cli::to_string(job.command) << "'\n";
            return cli::exit_config;
        }
    }
    return cli::run(job, options, std::cout, std::cerr);
}
