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


#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "commands.hpp"

namespace qeraser::cli {

namespace {

double visibility_or_nan(const qe_grid &grid, const std::vector<double> &pattern, const std::vector<double> &baseline,
                         double period) {
    double v = std::numeric_limits<double>::quiet_NaN();
    if (qe_visibility(grid, pattern.data(), baseline.data(), period, &v) != QE_OK) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return v;
}

std::string value_tag(double v) {
    std::string s = format_number(v);
    for (char &c : s) {
        if (c == '.') {
            c = 'p';
        } else if (c == '-') {
            c = 'm';
        } else if (c == '+') {
            c = '_';
        }
    }
    return s;
}

}  // namespace

int cmd_sweep(const ExperimentConfig &cfg, const std::string &param, const std::vector<double> &values,
              const std::filesystem::path &out_dir, std::ostream &log) {
    if (param != "a" && param != "d" && param != "epsilon") {
        throw ConfigError("--param", "unknown sweep parameter '" + param + "' (expected a, d or epsilon)");
    }
    if (values.empty()) {
        throw ConfigError("--values", "no values given");
    }
    for (double v : values) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw ConfigError("--values", "sweep values must be positive and finite");
        }
    }

    std::filesystem::path dir = out_dir;
    std::string stem = "qeraser";
    if (!cfg.output.path.empty()) {
        std::filesystem::path p(cfg.output.path);
        stem = p.stem().string();
        if (dir.empty()) {
            dir = p.parent_path();
        }
    }
    if (dir.empty()) {
        dir = ".";
    }
    std::filesystem::create_directories(dir);
    const std::string ext = cfg.output.format == "json" ? ".json" : ".csv";

    Table summary;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> visibilities;
    std::vector<double> omegas, prefactors, residuals, totals;

    for (double v : values) {
        ExperimentConfig c = cfg;
        if (param == "a") {
            c.a = v;
            c.propagation_source = "a";
        } else if (param == "d") {
            c.slits.d = v;
        } else {
            c.slits.epsilon = v;
        }
        validate(c);
        Experiment exp = run_experiment(c);
        std::filesystem::path file = dir / (stem + "_" + param + "_" + value_tag(v) + ext);
        write_file(file, render(exp, c));
        log << "wrote " << file.string() << '\n';

        ExperimentConfig base = c;
        base.detector.enabled = true;
        base.detector.basis = "computational";
        base.output.normalize = c.output.normalize;
        Experiment tagged = run_experiment(base);
        const std::vector<double> &baseline = tagged.table.columns[1];
        const double period = std::numbers::pi * c.a / c.slits.d;

        if (labels.empty()) {
            labels = exp.labels;
            visibilities.resize(labels.size());
        }
        omegas.push_back(exp.omega);
        prefactors.push_back(exp.density_prefactor);
        totals.push_back(visibility_or_nan(c.grid, exp.table.columns[1], baseline, period));
        for (std::size_t j = 0; j < labels.size(); ++j) {
            visibilities[j].push_back(visibility_or_nan(c.grid, exp.table.columns[2 + j], baseline, period));
        }
        residuals.push_back(c.detector.enabled ? exp.sum_rule_residual : std::numeric_limits<double>::quiet_NaN());
    }

    summary.add("value", values);
    summary.add("omega", std::move(omegas));
    summary.add("ct2", std::move(prefactors));
    summary.add("V_total", std::move(totals));
    for (std::size_t j = 0; j < labels.size(); ++j) {
        summary.add("V_" + labels[j], std::move(visibilities[j]));
    }
    summary.add("sumrule_residual", std::move(residuals));

    std::ostringstream text;
    write_csv(text, summary);
    std::filesystem::path file = dir / (stem + "_" + param + "_summary.csv");
    write_file(file, text.str());
    log << "wrote " << file.string() << '\n';
    return kExitOk;
}

}  // namespace qeraser::cli
