// Copyright 2026 The qeraser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace qeraser::cli;

namespace {

int exit_code_for(qe_status status) {
    switch (status) {
        case QE_ERR_ALIASING_RISK:
            return kExitAliasing;
        case QE_ERR_INVALID_ARGUMENT:
        case QE_ERR_NON_UNITARY:
        case QE_ERR_DIMENSION_MISMATCH:
        case QE_ERR_WINDOW_OUT_OF_GRID:
        case QE_ERR_GRID_MISMATCH:
            return kExitConfig;
        default:
            return kExitRuntime;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multi-slit which-path eraser simulator", "qeraser"};
    app.set_version_flag("--version", std::string(qe_version()));
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    bool oracle = false;
    auto *simulate = app.add_subcommand("simulate", "Compute the screen patterns for one configuration");
    simulate->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
    simulate->add_option("-o,--output", output_path, "Output file (overrides output.path)");
    simulate->add_flag("--oracle", oracle, "Cross-check the propagation against the spectral oracle first");

    std::string suite = "all";
    auto *verify = app.add_subcommand("verify", "Run the consistency checks for one configuration");
    verify->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
    verify->add_option("--suite", suite, "all, sumrule, unitarity, oracle, sorkin or closedform");

    std::string param;
    std::vector<double> values;
    std::string out_dir;
    auto *sweep = app.add_subcommand("sweep", "Repeat the simulation over a list of parameter values");
    sweep->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
    sweep->add_option("--param", param, "a, d or epsilon")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
    sweep->add_option("--out-dir", out_dir, "Directory for the per-value files and the summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        ExperimentConfig cfg = load_config(config_path);
        if (!output_path.empty()) {
            cfg.output.path = output_path;
        }
        if (*simulate) {
            return cmd_simulate(cfg, oracle, std::cerr);
        }
        if (*verify) {
            return cmd_verify(cfg, suite, std::cout);
        }
        return cmd_sweep(cfg, param, values, out_dir, std::cerr);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ApiError &e) {
        std::cerr << "error (" << qe_status_name(e.status()) << "): " << e.what() << '\n';
        return exit_code_for(e.status());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
