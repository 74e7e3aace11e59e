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


#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <sstream>

#include "commands.hpp"

namespace qeraser::cli {

std::vector<double> grid_points(const qe_grid &grid) {
    std::vector<double> xs(grid.points);
    double step = (grid.xmax - grid.xmin) / static_cast<double>(grid.points - 1);
    for (std::size_t i = 0; i < grid.points; ++i) {
        xs[i] = grid.xmin + static_cast<double>(i) * step;
    }
    return xs;
}

State make_state(const ExperimentConfig &cfg, bool tagged) {
    const auto &s = cfg.slits;
    qe_state *raw = nullptr;
    check(qe_state_create(s.n, s.d, s.epsilon, s.amplitudes ? s.amplitudes->data() : nullptr, tagged ? 1 : 0, &raw),
          "slits");
    return State(raw);
}

Basis make_basis(const ExperimentConfig &cfg) {
    const auto &det = cfg.detector;
    qe_basis *raw = nullptr;
    qe_status status;
    if (det.basis == "computational") {
        status = qe_basis_computational(cfg.slits.n, &raw);
    } else if (det.basis == "sx3") {
        status = qe_basis_sx3(&raw);
    } else if (det.basis == "eraser") {
        status = qe_basis_eraser(cfg.slits.n, &raw);
    } else {
        status = qe_basis_custom(cfg.slits.n, det.matrix.data(), &raw);
    }
    if (status != QE_OK) {
        throw ConfigError(det.basis == "custom" ? "detector.matrix" : "detector.basis", qe_last_error());
    }
    return Basis(raw);
}

Experiment run_experiment(const ExperimentConfig &cfg) {
    const bool detector = cfg.detector.enabled;
    const std::size_t points = cfg.grid.points;
    Experiment exp;
    check(qe_omega(cfg.slits.epsilon, cfg.a, &exp.omega), "propagation");
    check(qe_density_prefactor(cfg.slits.epsilon, cfg.a, &exp.density_prefactor), "propagation");

    State initial = make_state(cfg, detector);
    check(qe_state_norm_squared(initial.get(), &exp.norm_squared), "norm");
    qe_state *raw = nullptr;
    check(qe_state_propagate(initial.get(), cfg.a, &raw), "propagation");
    State evolved(raw);

    std::vector<double> total(points);
    check(qe_marginal_intensity(evolved.get(), cfg.grid, total.data()), "grid");
    exp.table.add("x", grid_points(cfg.grid));

    std::vector<std::vector<double>> outcomes;
    if (detector) {
        Basis basis = make_basis(cfg);
        size_t dim = 0;
        check(qe_basis_dim(basis.get(), &dim), "detector");
        std::vector<double> joint(dim * points);
        check(qe_joint_patterns(evolved.get(), basis.get(), cfg.grid, 0, joint.data()), "detector");
        double peak = *std::max_element(total.begin(), total.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < points; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                sum += joint[j * points + i];
            }
            worst = std::max(worst, std::abs(sum - total[i]));
        }
        exp.sum_rule_residual = peak > 0.0 ? worst / peak : worst;
        if (cfg.output.normalize) {
            check(qe_joint_patterns(evolved.get(), basis.get(), cfg.grid, 1, joint.data()), "detector");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            const char *label = nullptr;
            check(qe_basis_label(basis.get(), j, &label), "detector");
            exp.labels.emplace_back(label);
            outcomes.emplace_back(joint.begin() + static_cast<std::ptrdiff_t>(j * points),
                                  joint.begin() + static_cast<std::ptrdiff_t>((j + 1) * points));
        }
    }
    if (cfg.output.normalize && exp.norm_squared > 0.0) {
        for (double &v : total) {
            v /= exp.norm_squared;
        }
    }
    exp.table.add("p_total", std::move(total));
    for (std::size_t j = 0; j < outcomes.size(); ++j) {
        exp.table.add("p_" + exp.labels[j], std::move(outcomes[j]));
    }
    return exp;
}

std::string render(const Experiment &exp, const ExperimentConfig &cfg) {
    std::ostringstream out;
    if (cfg.output.format == "json") {
        write_json(out, exp.table,
                   {{"detector", cfg.detector.enabled ? cfg.detector.basis : "none"},
                    {"propagation", cfg.propagation_source}},
                   {{"n", double(cfg.slits.n)},
                    {"d", cfg.slits.d},
                    {"epsilon", cfg.slits.epsilon},
                    {"a", cfg.a},
                    {"omega", exp.omega},
                    {"ct2", exp.density_prefactor},
                    {"norm_squared", exp.norm_squared},
                    {"normalized", cfg.output.normalize ? 1.0 : 0.0}});
    } else {
        write_csv(out, exp.table);
    }
    return out.str();
}

int cmd_simulate(const ExperimentConfig &cfg, bool oracle, std::ostream &log) {
    if (oracle) {
        if (cfg.grid.points < 1024 || !std::has_single_bit(cfg.grid.points)) {
            throw ConfigError("grid.points", "the oracle check needs a power of two of at least 1024");
        }
        State initial = make_state(cfg, cfg.detector.enabled);
        qe_oracle_report report{};
        check(qe_cross_validate(initial.get(), cfg.a, cfg.grid, &report), "oracle");
        log << "oracle: amplitude L-inf rel " << format_number(report.amplitude_linf_rel) << " (tolerance 1e-06), "
            << "padded points " << report.domain.points << ", " << (report.pass ? "pass" : "FAIL") << '\n';
        if (!report.pass) {
            return kExitCheckFailed;
        }
    }
    Experiment exp = run_experiment(cfg);
    std::string text = render(exp, cfg);
    if (cfg.output.path.empty()) {
        std::cout << text;
    } else {
        write_file(cfg.output.path, text);
        log << "wrote " << cfg.output.path << " (" << exp.table.rows() << " rows)\n";
    }
    return kExitOk;
}

}  // namespace qeraser::cli
