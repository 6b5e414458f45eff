#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dsi/commands.hpp"
#include "dsi/config.hpp"
#include "dsi/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Geometric sampling, Markov covariances and spectra of DSI processes"};
    app.set_version_flag("--version", "dsi_lab 0.1.0");

    std::string command;
    std::string config_path;
    app.add_option("command", command, "simulate | covariance | spectrum | invert | verify")
        ->required();
    app.add_option("--config", config_path, "key=value config file");

    // Flag name -> config key; flags override the file.
    const std::map<std::string, std::string> flags = {
        {"--H", "H"},
        {"--alpha", "alpha"},
        {"--T", "T"},
        {"--q", "q"},
        {"--s", "s"},
        {"--R0", "R0"},
        {"--R1", "R1"},
        {"--paths", "paths"},
        {"--seed", "seed"},
        {"--tau-max", "tau_max"},
        {"--omega-points", "omega_points"},
        {"--inversion-points", "inversion_points"},
        {"--tol", "tol"},
        {"--method", "method"},
        {"--kappa-min", "kappa_min"},
        {"--kappa-max", "kappa_max"},
        {"--out", "out"},
    };
    std::map<std::string, std::string> values;
    for (const auto& [flag, key] : flags) {
        app.add_option(flag, values[key], "overrides config key " + key);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : dsi::kExitConfigError;
    }

    try {
        dsi::KeyValues file;
        if (!config_path.empty()) {
            file = dsi::read_config_file(config_path);
        }
        dsi::KeyValues overrides;
        for (const auto& [flag, key] : flags) {
            if (app.count(flag) > 0) {
                overrides[key] = values[key];
            }
        }
        const auto config =
            dsi::make_run_config(dsi::parse_command(command), file, overrides);
        return dsi::run(config, std::cout, std::cerr);
    } catch (const dsi::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == dsi::ErrorCode::IoError ? dsi::kExitIoError : dsi::kExitConfigError;
    }
}
