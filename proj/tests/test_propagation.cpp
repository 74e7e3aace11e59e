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
#include <cstring>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qeraser/error.hpp"
#include "qeraser/parallel.hpp"
#include "qeraser/propagation.hpp"

using namespace qeraser;

TEST_CASE("evolution parameter from time and from geometry") {
    CHECK(PropagationParams::from_time(3.0, 2.0, 1.5).evolution() == doctest::Approx(4.5));
    CHECK(PropagationParams::from_geometry(2.0, 10.0).evolution() == doctest::Approx(20.0 / std::numbers::pi));
    CHECK(PropagationParams(50.0).omega(1.0) == 2501.0);
    CHECK(PropagationParams(50.0).omega(2.0) == doctest::Approx(4.0 + 625.0));
    CHECK_THROWS_AS(PropagationParams(-1.0), Error);
    CHECK_THROWS_AS(PropagationParams(NAN), Error);
    CHECK_THROWS_AS(PropagationParams::from_time(1.0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(PropagationParams::from_geometry(-1.0, 1.0), Error);
    CHECK_THROWS_AS(PropagationParams(1.0).omega(0.0), Error);
}

TEST_CASE("density prefactor at eps = 1, a = 50") {
    CHECK(std::abs(density_prefactor(1.0, 50.0) - 0.0159545006349565265) < 1e-17);
}

TEST_CASE("propagation adds to the imaginary width and composes") {
    GaussianPacket p(1.5, Complex(0.8, 0.0), Complex(0.3, -0.2));
    GaussianPacket q = propagate(p, PropagationParams(12.0));
    CHECK(q.width_sq() == Complex(0.8, 12.0));
    CHECK(q.center() == p.center());
    CHECK(q.coeff() == p.coeff());
    GaussianPacket r = propagate(propagate(p, PropagationParams(5.0)), PropagationParams(7.0));
    for (double x : {-10.0, 0.0, 3.3, 25.0}) {
        CHECK(std::abs(r.amplitude(x) - q.amplitude(x)) < 1e-15);
    }
    GaussianPacket same = propagate(p, PropagationParams(0.0));
    CHECK(same.width_sq() == p.width_sq());
}

TEST_CASE("marginal intensity at the screen center, d = 5, eps = 1, a = 50") {
    SlitArray slits = SlitArray::equal(3, 5.0, 1.0);
    PropagationParams params(50.0);
    EntangledState pure = propagate(make_slit_state(slits), params);
    EntangledState tagged = propagate(make_tagged_state(slits), params);
    CHECK(std::abs(marginal_intensity_at(pure, 0.0) - 0.0446546334237060812) < 1e-16);
    CHECK(std::abs(marginal_intensity_at(tagged, 0.0) - 0.0157439704881692459) < 1e-16);
}

TEST_CASE("marginal intensity pattern matches pointwise evaluation") {
    EntangledState s = propagate(make_tagged_state(SlitArray::equal(3, 2.0, 0.5)), PropagationParams(10.0));
    ScreenGrid grid(-40.0, 40.0, 801);
    Pattern p = marginal_intensity(s, grid);
    CHECK(p.label == "marginal");
    REQUIRE(p.values.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); i += 37) {
        CHECK(p.values[i] == marginal_intensity_at(s, grid.x(i)));
    }
}

TEST_CASE("total probability equals the analytic norm") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d_dist(0.5, 8.0);
    std::uniform_real_distribution<double> eps_dist(0.3, 2.0);
    std::uniform_real_distribution<double> a_dist(0.0, 300.0);
    for (int trial = 0; trial < 12; ++trial) {
        SlitArray slits = SlitArray::equal(3, d_dist(rng), eps_dist(rng));
        PropagationParams params(a_dist(rng));
        for (const EntangledState &s : {make_slit_state(slits), make_tagged_state(slits)}) {
            EntangledState evolved = propagate(s, params);
            CHECK(total_probability(evolved) == doctest::Approx(norm_squared(s)).epsilon(1e-10));
        }
    }
}

TEST_CASE("coverage grid spans every packet") {
    EntangledState s = propagate(make_slit_state(SlitArray::equal(3, 5.0, 1.0)), PropagationParams(50.0));
    ScreenGrid g = coverage_grid(s, 1001);
    double reach = 12.0 * std::sqrt(2501.0);
    CHECK(g.x_min() == doctest::Approx(-5.0 - reach));
    CHECK(g.x_max() == doctest::Approx(5.0 + reach));
}

TEST_CASE("trapezoid rule") {
    CHECK(trapezoid({1.0, 1.0, 1.0}, 0.5) == 1.0);
    CHECK(trapezoid({0.0, 1.0, 0.0}, 1.0) == 1.0);
    CHECK(trapezoid({2.0}, 1.0) == 0.0);
}

TEST_CASE("pattern is independent of the thread count") {
    EntangledState s = propagate(make_tagged_state(SlitArray::equal(3, 5.0, 1.0)), PropagationParams(50.0));
    ScreenGrid grid(-120.0, 120.0, 20000);
    set_max_threads(1);
    Pattern serial = marginal_intensity(s, grid);
    set_max_threads(7);
    Pattern threaded = marginal_intensity(s, grid);
    set_max_threads(0);
    REQUIRE(serial.values.size() == threaded.values.size());
    CHECK(std::memcmp(serial.values.data(), threaded.values.data(), serial.values.size() * sizeof(double)) == 0);
}

TEST_CASE("parallel_for visits each index once") {
    set_max_threads(5);
    std::vector<int> hits(100003, 0);
    parallel_for(hits.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            ++hits[i];
        }
    });
    set_max_threads(0);
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK(max_threads() >= 1);
}
