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


#ifndef QERASER_TOOLS_CONFIG_HPP_
#define QERASER_TOOLS_CONFIG_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qeraser/qeraser.h"

namespace qeraser::cli {

/// Parse or validation failure; `field` is the dotted path of the offending
/// entry (e.g. "slits.epsilon").
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string field, const std::string &message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {
    }
    const std::string &field() const noexcept {
        return field_;
    }

   private:
    std::string field_;
};

struct SlitConfig {
    std::size_t n = 3;
    double d = 0.0;
    double epsilon = 0.0;
    std::optional<std::vector<qe_complex>> amplitudes;
};

struct DetectorConfig {
    bool enabled = false;
    std::string basis = "computational";
    std::vector<qe_complex> matrix;  // row-major, custom basis only
};

struct OutputConfig {
    std::string format = "csv";
    std::string path;  // empty: stdout
    bool normalize = false;
};

struct ExperimentConfig {
    SlitConfig slits;
    double a = 0.0;  // resolved from whichever parameterization was given
    std::string propagation_source;
    DetectorConfig detector;
    qe_grid grid{};
    OutputConfig output;
};

ExperimentConfig load_config(const std::filesystem::path &path);
ExperimentConfig parse_config(const std::string &text);

/// Re-checks cross-field invariants after a sweep edits a value.
void validate(const ExperimentConfig &config);

}  // namespace qeraser::cli

#endif
