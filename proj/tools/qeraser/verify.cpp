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
#include <functional>
#include <map>

#include "commands.hpp"

namespace qeraser::cli {

namespace {

constexpr double kSumRuleTolerance = 1e-12;
constexpr double kNormTolerance = 1e-6;
constexpr double kSorkinTolerance = 1e-12;
constexpr double kExactTolerance = 1e-12;
constexpr double kFarFieldTolerance = 1e-2;

struct Reporter {
    std::ostream &out;
    int failures = 0;

    void check(const std::string &name, double measured, double tolerance) {
        bool ok = std::isfinite(measured) && measured <= tolerance;
        out << name << "  measured=" << format_number(measured) << "  tolerance=" << format_number(tolerance)
            << "  " << (ok ? "PASS" : "FAIL") << '\n';
        failures += ok ? 0 : 1;
    }
    void skip(const std::string &name, const std::string &why) {
        out << name << "  SKIP (" << why << ")\n";
    }
};

bool equal_amplitudes(const ExperimentConfig &cfg) {
    if (!cfg.slits.amplitudes) {
        return true;
    }
    const auto &amps = *cfg.slits.amplitudes;
    double expected = 1.0 / std::sqrt(static_cast<double>(amps.size()));
    return std::all_of(amps.begin(), amps.end(), [&](const qe_complex &c) {
        return std::abs(c.re - expected) < 1e-12 && std::abs(c.im) < 1e-12;
    });
}

double relative_linf(const qe_grid &grid, const std::vector<double> &p, const std::vector<double> &q) {
    qe_comparison cmp{};
    qeraser::cli::check(qe_compare(grid, p.data(), q.data(), &cmp), "compare");
    return cmp.linf_rel;
}

State evolve(const ExperimentConfig &cfg, bool tagged) {
    State initial = make_state(cfg, tagged);
    qe_state *raw = nullptr;
    qeraser::cli::check(qe_state_propagate(initial.get(), cfg.a, &raw), "propagation");
    return State(raw);
}

std::vector<double> marginal(const qe_state *state, const qe_grid &grid) {
    std::vector<double> values(grid.points);
    qeraser::cli::check(qe_marginal_intensity(state, grid, values.data()), "grid");
    return values;
}

void suite_sumrule(const ExperimentConfig &cfg, Reporter &rep) {
    ExperimentConfig c = cfg;
    c.output.normalize = false;
    if (!c.detector.enabled) {
        c.detector.enabled = true;
        c.detector.basis = c.slits.n == 3 ? "eraser" : "computational";
    }
    Experiment exp = run_experiment(c);
    rep.check("sumrule." + c.detector.basis, exp.sum_rule_residual, kSumRuleTolerance);

    State tagged = make_state(c, true);
    Basis basis = make_basis(c);
    double total = 0.0;
    for (std::size_t j = 0; j < c.slits.n; ++j) {
        double p = 0.0;
        qeraser::cli::check(qe_outcome_probability(tagged.get(), basis.get(), j, &p), "detector");
        total += p;
    }
    rep.check("sumrule.outcome_probabilities", std::abs(total - 1.0), kSumRuleTolerance);
}

void suite_unitarity(const ExperimentConfig &cfg, Reporter &rep) {
    for (bool tagged : {false, true}) {
        std::string prefix = tagged ? "unitarity.tagged" : "unitarity.untagged";
        State initial = make_state(cfg, tagged);
        qe_state *raw = nullptr;
        qeraser::cli::check(qe_state_propagate(initial.get(), cfg.a, &raw), "propagation");
        State evolved(raw);
        double before = 0.0;
        double after = 0.0;
        double analytic = 0.0;
        qeraser::cli::check(qe_state_total_probability(initial.get(), &before), "norm");
        qeraser::cli::check(qe_state_total_probability(evolved.get(), &after), "norm");
        qeraser::cli::check(qe_state_norm_squared(evolved.get(), &analytic), "norm");
        rep.check(prefix + ".quadrature_drift", std::abs(after - before), kNormTolerance);
        rep.check(prefix + ".analytic_vs_quadrature", std::abs(after - analytic), kNormTolerance);
        if (tagged) {
            rep.check(prefix + ".norm", std::abs(analytic - 1.0), kNormTolerance);
        }
    }
}

void suite_oracle(const ExperimentConfig &cfg, Reporter &rep) {
    // The screen grid need not resolve the slit packets, so the oracle samples the
    // initial state on its own grid: spacing eps/4, covering every slit +- 12 eps.
    const double step = cfg.slits.epsilon / 4.0;
    const double reach = 0.5 * cfg.slits.d * static_cast<double>(cfg.slits.n - 1) + 12.0 * cfg.slits.epsilon;
    const auto needed = static_cast<std::size_t>(std::ceil(2.0 * reach / step)) + 1;
    const std::size_t points = std::max<std::size_t>(1024, std::bit_ceil(needed));
    const double half = 0.5 * step * static_cast<double>(points - 1);
    qe_grid grid{-half, half, points};
    for (bool tagged : {false, true}) {
        std::string name = tagged ? "oracle.tagged" : "oracle.untagged";
        State initial = make_state(cfg, tagged);
        qe_oracle_report report{};
        qeraser::cli::check(qe_cross_validate(initial.get(), cfg.a, grid, &report), "oracle");
        rep.check(name + ".amplitude_linf_rel", report.amplitude_linf_rel, 1e-6);
        rep.check(name + ".pattern_linf_rel", report.pattern_linf_rel, 1e-6);
        rep.check(name + ".norm_drift", std::abs(report.norm_spectral - report.norm_initial), kNormTolerance);
    }
}

void suite_sorkin(const ExperimentConfig &cfg, Reporter &rep) {
    if (cfg.slits.n != 3) {
        rep.skip("sorkin", "needs n = 3");
        return;
    }
    const qe_complex *amps = cfg.slits.amplitudes ? cfg.slits.amplitudes->data() : nullptr;
    std::vector<double> values(cfg.grid.points);
    qeraser::cli::check(qe_sorkin(cfg.slits.d, cfg.slits.epsilon, amps, cfg.a, cfg.grid, values.data()), "sorkin");
    State evolved = evolve(cfg, false);
    std::vector<double> full = marginal(evolved.get(), cfg.grid);
    double peak = *std::max_element(full.begin(), full.end());
    double worst = 0.0;
    for (double v : values) {
        worst = std::max(worst, std::abs(v));
    }
    rep.check("sorkin.max_abs_over_peak", peak > 0.0 ? worst / peak : worst, kSorkinTolerance);
}

void compare_closed_form(const ExperimentConfig &cfg, Reporter &rep, qe_scenario scenario, const std::string &name,
                         const std::vector<double> &reference) {
    std::vector<double> values(cfg.grid.points);
    int out_of_regime = 0;
    qeraser::cli::check(
        qe_closed_form(scenario, cfg.slits.d, cfg.slits.epsilon, cfg.a, cfg.grid, values.data(), &out_of_regime),
        "closed form");
    bool far = scenario != QE_PURE_EXACT && scenario != QE_TAGGED;
    if (far && out_of_regime) {
        rep.skip("closedform." + name, "outside the far-field regime");
        return;
    }
    rep.check("closedform." + name, relative_linf(cfg.grid, values, reference),
              far ? kFarFieldTolerance : kExactTolerance);
}

void suite_closedform(const ExperimentConfig &cfg, Reporter &rep) {
    if (cfg.slits.n != 3 || !equal_amplitudes(cfg)) {
        rep.skip("closedform", "needs n = 3 with equal amplitudes");
        return;
    }
    if (cfg.a <= 0.0) {
        rep.skip("closedform", "needs a > 0");
        return;
    }
    State pure = evolve(cfg, false);
    State tagged = evolve(cfg, true);
    std::vector<double> pure_pattern = marginal(pure.get(), cfg.grid);
    std::vector<double> tagged_pattern = marginal(tagged.get(), cfg.grid);
    compare_closed_form(cfg, rep, QE_PURE_EXACT, "pure_exact", pure_pattern);
    compare_closed_form(cfg, rep, QE_PURE_FARFIELD, "pure_farfield", pure_pattern);
    compare_closed_form(cfg, rep, QE_TAGGED, "tagged", tagged_pattern);
    compare_closed_form(cfg, rep, QE_TAGGED_FARFIELD, "tagged_farfield", tagged_pattern);

    struct Family {
        const char *basis;
        qe_scenario first;
    };
    for (Family fam : {Family{"sx3", QE_SX_UP}, Family{"eraser", QE_ERASER_ALPHA}}) {
        ExperimentConfig c = cfg;
        c.detector.enabled = true;
        c.detector.basis = fam.basis;
        Basis basis = make_basis(c);
        std::vector<double> joint(3 * cfg.grid.points);
        qeraser::cli::check(qe_joint_patterns(tagged.get(), basis.get(), cfg.grid, 0, joint.data()), "detector");
        for (std::size_t j = 0; j < 3; ++j) {
            const char *label = nullptr;
            qeraser::cli::check(qe_basis_label(basis.get(), j, &label), "detector");
            std::vector<double> ref(joint.begin() + static_cast<std::ptrdiff_t>(j * cfg.grid.points),
                                    joint.begin() + static_cast<std::ptrdiff_t>((j + 1) * cfg.grid.points));
            compare_closed_form(cfg, rep, static_cast<qe_scenario>(fam.first + static_cast<int>(j)),
                                std::string(fam.basis) + "." + label, ref);
        }
    }
}

}  // namespace

int cmd_verify(const ExperimentConfig &cfg, const std::string &suite, std::ostream &out) {
    static const std::map<std::string, std::function<void(const ExperimentConfig &, Reporter &)>> suites = {
        {"sumrule", suite_sumrule}, {"unitarity", suite_unitarity}, {"oracle", suite_oracle},
        {"sorkin", suite_sorkin},   {"closedform", suite_closedform},
    };
    Reporter rep{out};
    if (suite == "all") {
        for (const char *name : {"sumrule", "unitarity", "sorkin", "closedform", "oracle"}) {
            suites.at(name)(cfg, rep);
        }
    } else {
        auto it = suites.find(suite);
        if (it == suites.end()) {
            throw ConfigError("--suite", "unknown suite '" + suite + "'");
        }
        it->second(cfg, rep);
    }
    out << (rep.failures == 0 ? "all checks passed" : std::to_string(rep.failures) + " check(s) failed") << '\n';
    return rep.failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace qeraser::cli
