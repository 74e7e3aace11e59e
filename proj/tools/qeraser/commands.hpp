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


#ifndef QERASER_TOOLS_COMMANDS_HPP_
#define QERASER_TOOLS_COMMANDS_HPP_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "api.hpp"
#include "config.hpp"
#include "output.hpp"

namespace qeraser::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitConfig = 2,
    kExitAliasing = 3,
    kExitRuntime = 4,
};

struct Experiment {
    Table table;                      // x, p_total, p_<outcome>...
    std::vector<std::string> labels;  // outcome labels, empty without detector
    double omega = 0.0;
    double density_prefactor = 0.0;   // |C_t|^2
    double norm_squared = 0.0;
    double sum_rule_residual = 0.0;   // max |sum_j p_j - p_total| / max p_total (unnormalized)
};

std::vector<double> grid_points(const qe_grid &grid);
State make_state(const ExperimentConfig &cfg, bool tagged);
/// Translates a rejected custom basis into a ConfigError on detector.matrix.
Basis make_basis(const ExperimentConfig &cfg);

Experiment run_experiment(const ExperimentConfig &cfg);
std::string render(const Experiment &exp, const ExperimentConfig &cfg);

int cmd_simulate(const ExperimentConfig &cfg, bool oracle, std::ostream &log);
int cmd_verify(const ExperimentConfig &cfg, const std::string &suite, std::ostream &out);
int cmd_sweep(const ExperimentConfig &cfg, const std::string &param, const std::vector<double> &values,
              const std::filesystem::path &out_dir, std::ostream &log);

}  // namespace qeraser::cli

#endif
