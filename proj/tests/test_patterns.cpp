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
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "qeraser/erasure.hpp"
#include "qeraser/error.hpp"
#include "qeraser/patterns.hpp"
#include "qeraser/propagation.hpp"

using namespace qeraser;

namespace {

struct Direct {
    Pattern pure;
    Pattern tagged;
    std::vector<Pattern> sx;
    std::vector<Pattern> eraser;
};

Direct direct_patterns(double d, double eps, double a, const ScreenGrid &grid) {
    SlitArray slits = SlitArray::equal(3, d, eps);
    PropagationParams params(a);
    EntangledState pure = propagate(make_slit_state(slits), params);
    EntangledState tagged = propagate(make_tagged_state(slits), params);
    return Direct{marginal_intensity(pure, grid), marginal_intensity(tagged, grid),
                  joint_patterns(tagged, DetectorBasis::sx3(), grid),
                  joint_patterns(tagged, DetectorBasis::eraser(3), grid)};
}

double rel_linf(const Pattern &p, const Pattern &q) {
    return compare(p, q).linf_rel;
}

}  // namespace

TEST_CASE("scenario metadata") {
    CHECK(scenario_name(Scenario::EraserBeta) == "eraser_beta");
    CHECK_FALSE(has_fringes(Scenario::Tagged));
    CHECK(has_fringes(Scenario::SxRight));
    CHECK_FALSE(is_far_field(Scenario::PureExact));
    CHECK(is_far_field(Scenario::TaggedFarField));
}

TEST_CASE("exact closed forms agree with direct computation") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> d_dist(0.5, 10.0);
    std::uniform_real_distribution<double> eps_dist(0.3, 2.0);
    std::uniform_real_distribution<double> a_dist(1.0, 400.0);
    for (int trial = 0; trial < 15; ++trial) {
        double d = d_dist(rng), eps = eps_dist(rng), a = a_dist(rng);
        double reach = d + 6.0 * std::sqrt(PropagationParams(a).omega(eps));
        ScreenGrid grid(-reach, reach, 2001);
        Direct direct = direct_patterns(d, eps, a, grid);
        CAPTURE(d);
        CAPTURE(eps);
        CAPTURE(a);
        CHECK(rel_linf(closed_form(Scenario::PureExact, d, eps, a, grid).pattern, direct.pure) <= 1e-12);
        CHECK(rel_linf(closed_form(Scenario::Tagged, d, eps, a, grid).pattern, direct.tagged) <= 1e-12);
    }
}

TEST_CASE("the exact form needs the full phase rate a / (eps^2 omega)") {
    // Same expression with the far-field rate 1/a in every cosine.
    const double d = 5.0, eps = 1.0, a = 50.0;
    const double om = PropagationParams(a).omega(eps);
    ScreenGrid grid(-120.0, 120.0, 2001);
    Pattern far_rate{grid, std::vector<double>(grid.size()), "far_rate"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double x = grid.x(i);
        double k = 1.0 / a;
        far_rate.values[i] =
            density_prefactor(eps, a) / 3.0 *
            (std::exp(-2.0 * x * x / om) + std::exp(-2.0 * (x - d) * (x - d) / om) +
             std::exp(-2.0 * (x + d) * (x + d) / om) +
             2.0 * std::exp(-(2.0 * x * x - 2.0 * x * d + d * d) / om) * std::cos(k * (2.0 * x * d - d * d)) +
             2.0 * std::exp(-(2.0 * x * x + 2.0 * x * d + d * d) / om) * std::cos(k * (2.0 * x * d + d * d)) +
             2.0 * std::exp(-2.0 * (x * x + d * d) / om) * std::cos(4.0 * x * d * k));
    }
    Direct direct = direct_patterns(d, eps, a, grid);
    CHECK(rel_linf(far_rate, direct.pure) > 1e-4);
    CHECK(rel_linf(closed_form(Scenario::PureExact, d, eps, a, grid).pattern, direct.pure) <= 1e-12);
}

TEST_CASE("far-field closed forms inside their regime") {
    const double d = 1.0, eps = 1.0, a = 1e4;
    ScreenGrid grid(-60000.0, 60000.0, 8001);
    Direct direct = direct_patterns(d, eps, a, grid);
    struct Case {
        Scenario s;
        const Pattern *ref;
    };
    std::vector<Case> cases{{Scenario::PureFarField, &direct.pure},  {Scenario::TaggedFarField, &direct.tagged},
                            {Scenario::SxUp, &direct.sx[0]},         {Scenario::SxRight, &direct.sx[1]},
                            {Scenario::SxDown, &direct.sx[2]},       {Scenario::EraserAlpha, &direct.eraser[0]},
                            {Scenario::EraserBeta, &direct.eraser[1]}, {Scenario::EraserGamma, &direct.eraser[2]}};
    for (const Case &c : cases) {
        ClosedForm cf = closed_form(c.s, d, eps, a, grid);
        CAPTURE(scenario_name(c.s));
        CHECK_FALSE(cf.out_of_regime);
        CHECK(rel_linf(cf.pattern, *c.ref) <= 1e-3);
    }
}

TEST_CASE("far-field forms flag poor parameters") {
    ScreenGrid grid(-100.0, 100.0, 11);
    CHECK(closed_form(Scenario::EraserAlpha, 5.0, 1.0, 50.0, grid).out_of_regime);
    CHECK_FALSE(closed_form(Scenario::PureExact, 5.0, 1.0, 50.0, grid).out_of_regime);
    CHECK_FALSE(closed_form(Scenario::EraserAlpha, 1.0, 1.0, 1e4, grid).out_of_regime);
}

TEST_CASE("closed forms reject invalid parameters") {
    ScreenGrid grid(-1.0, 1.0, 3);
    CHECK_THROWS_AS(closed_form(Scenario::PureExact, 0.0, 1.0, 1.0, grid), Error);
    CHECK_THROWS_AS(closed_form(Scenario::PureExact, 1.0, -1.0, 1.0, grid), Error);
    CHECK_THROWS_AS(closed_form(Scenario::SxUp, 1.0, 1.0, 0.0, grid), Error);
    CHECK_NOTHROW(closed_form(Scenario::Tagged, 1.0, 1.0, 0.0, grid));
}

TEST_CASE("readout sum rules at the closed-form level") {
    for (auto [d, eps, a] : {std::tuple{5.0, 1.0, 50.0}, std::tuple{1.0, 1.0, 1e4}, std::tuple{2.0, 0.5, 10.0}}) {
        ScreenGrid grid(-3.0 * a, 3.0 * a, 3001);
        Pattern tagged = closed_form(Scenario::TaggedFarField, d, eps, a, grid).pattern;
        Pattern eraser_sum = closed_form(Scenario::EraserAlpha, d, eps, a, grid).pattern;
        Pattern sx_sum = closed_form(Scenario::SxUp, d, eps, a, grid).pattern;
        Pattern beta = closed_form(Scenario::EraserBeta, d, eps, a, grid).pattern;
        Pattern gamma = closed_form(Scenario::EraserGamma, d, eps, a, grid).pattern;
        Pattern right = closed_form(Scenario::SxRight, d, eps, a, grid).pattern;
        Pattern down = closed_form(Scenario::SxDown, d, eps, a, grid).pattern;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            eraser_sum.values[i] += beta.values[i] + gamma.values[i];
            sx_sum.values[i] += right.values[i] + down.values[i];
            CHECK(std::abs(eraser_sum.values[i] - tagged.values[i]) <= 1e-12 * tagged.values[i]);
            CHECK(std::abs(sx_sum.values[i] - tagged.values[i]) <= 1e-12 * tagged.values[i]);
        }
    }
}

TEST_CASE("point values at the screen center") {
    ScreenGrid center(-1.0, 1.0, 3);
    const double ct2 = density_prefactor(1.0, 50.0);
    auto at0 = [&](Scenario s) { return closed_form(s, 5.0, 1.0, 50.0, center).pattern.values[1]; };
    CHECK(at0(Scenario::SxRight) == 0.0);
    CHECK(at0(Scenario::PureFarField) == doctest::Approx(3.0 * ct2).epsilon(1e-15));
    CHECK(at0(Scenario::SxUp) == doctest::Approx((1.5 + std::numbers::sqrt2) * ct2 / 3.0).epsilon(1e-15));
    CHECK(at0(Scenario::EraserAlpha) == doctest::Approx(ct2).epsilon(1e-15));
    CHECK(std::abs(at0(Scenario::Tagged) - 0.0157439704881692459) < 1e-16);
    CHECK(std::abs(at0(Scenario::PureExact) - 0.0446546334237060812) < 1e-16);
}

TEST_CASE("visibility") {
    const double d = 5.0, eps = 1.0, a = 50.0;
    const double period = std::numbers::pi * a / d;
    ScreenGrid grid(-120.0, 120.0, 4096);
    Pattern tagged = closed_form(Scenario::Tagged, d, eps, a, grid).pattern;
    CHECK(visibility(tagged, tagged, period) == 0.0);
    for (Scenario s : {Scenario::EraserAlpha, Scenario::EraserBeta, Scenario::EraserGamma}) {
        double v = visibility(closed_form(s, d, eps, a, grid).pattern, tagged, period);
        CHECK(v >= 0.99);
        CHECK(v <= 1.0 + 1e-9);
    }
    Pattern right = closed_form(Scenario::SxRight, d, eps, a, grid).pattern;
    CHECK(visibility(right, tagged, period / 2.0) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(visibility(tagged, tagged, 1000.0), Error);
    try {
        visibility(tagged, tagged, 1000.0);
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::WindowOutOfGrid);
    }
    Pattern other = closed_form(Scenario::Tagged, d, eps, a, ScreenGrid(-120.0, 120.0, 4095)).pattern;
    try {
        visibility(tagged, other, period);
        FAIL("expected GridMismatch");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::GridMismatch);
    }
}

TEST_CASE("visibility stays within [0, 1] for arbitrary fringes") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> contrast(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    ScreenGrid grid(-10.0, 10.0, 1001);
    Pattern base{grid, std::vector<double>(grid.size(), 2.0), "base"};
    for (int trial = 0; trial < 30; ++trial) {
        double c = contrast(rng), ph = phase(rng);
        Pattern p{grid, std::vector<double>(grid.size()), "p"};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            p.values[i] = 1.0 + c * std::cos(2.0 * std::numbers::pi * grid.x(i) / 8.0 + ph);
        }
        double v = visibility(p, base, 8.0);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-9);
        CHECK(v == doctest::Approx(c).epsilon(1e-6));
    }
}

TEST_CASE("third-order interference vanishes") {
    for (auto [d, eps, a] : {std::tuple{5.0, 1.0, 50.0}, std::tuple{2.0, 0.5, 10.0}, std::tuple{10.0, 1.0, 200.0}}) {
        double reach = d + 8.0 * std::sqrt(PropagationParams(a).omega(eps));
        ScreenGrid grid(-reach, reach, 4001);
        SlitArray slits = SlitArray::equal(3, d, eps);
        Pattern s = sorkin(slits, a, grid);
        CHECK(s.label == "sorkin");
        double i123 = marginal_intensity_at(propagate(make_slit_state(slits), PropagationParams(a)), 0.0);
        for (double v : s.values) {
            CHECK(std::abs(v) <= 1e-12 * i123);
        }
    }
    CHECK_THROWS_AS(sorkin(SlitArray::equal(4, 1.0, 1.0), 1.0, ScreenGrid(-1.0, 1.0, 3)), Error);
}

TEST_CASE("third-order interference with unequal amplitudes") {
    SlitArray slits(3.0, 0.8, {Complex(0.2, 0.5), Complex(-0.7, 0.1), Complex(0.3, -0.4)});
    ScreenGrid grid(-200.0, 200.0, 2001);
    Pattern s = sorkin(slits, 30.0, grid);
    double peak = 0.0;
    Pattern full = marginal_intensity(propagate(make_slit_state(slits), PropagationParams(30.0)), grid);
    peak = *std::max_element(full.values.begin(), full.values.end());
    for (double v : s.values) {
        CHECK(std::abs(v) <= 1e-12 * peak);
    }
}

TEST_CASE("pattern comparison") {
    ScreenGrid grid(-50.0, 50.0, 101);
    Pattern pure = closed_form(Scenario::PureFarField, 1.0, 1.0, 1e4, grid).pattern;
    Comparison self = compare(pure, pure);
    CHECK(self.linf_abs == 0.0);
    CHECK(self.linf_rel == 0.0);
    CHECK(self.l2 == 0.0);
    Pattern alpha = closed_form(Scenario::EraserAlpha, 1.0, 1.0, 1e4, grid).pattern;
    CHECK(compare(alpha, pure).linf_rel == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    for (double &v : pure.values) {
        v /= 3.0;
    }
    CHECK(compare(alpha, pure).linf_rel <= 1e-15);
    Pattern shifted = closed_form(Scenario::PureFarField, 1.0, 1.0, 1e4, ScreenGrid(-50.0, 51.0, 101)).pattern;
    CHECK_THROWS_AS(compare(alpha, shifted), Error);
}
