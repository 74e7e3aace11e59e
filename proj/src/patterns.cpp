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


#include "qeraser/patterns.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qeraser/error.hpp"
#include "qeraser/parallel.hpp"
#include "qeraser/propagation.hpp"

namespace qeraser {

namespace {

constexpr double kTwoPiOverThree = 2.0 * std::numbers::pi / 3.0;

// exp(g) * cosh(v) without overflowing when g is very negative and v large.
double exp_cosh(double g, double v) {
    return 0.5 * (std::exp(g + v) + std::exp(g - v));
}

struct Geometry {
    double x, d, a, omega, kappa;
};

// Bracket of the three-path pure pattern in the far-field limit, with the
// phase offsets of the pair (1,2)/(2,3) terms and the (1,3) term.
double farfield_pure_bracket(const Geometry &g, double middle_phase, double last_phase) {
    double e = -2.0 * g.x * g.x / g.omega;
    double u = g.x * g.d / g.omega;
    double theta = 2.0 * g.x * g.d / g.a;
    return std::exp(e) + 2.0 * exp_cosh(e, 4.0 * u) + 4.0 * exp_cosh(e, 2.0 * u) * std::cos(theta + middle_phase) +
           2.0 * std::exp(e) * std::cos(2.0 * theta + last_phase);
}

double evaluate(Scenario s, const Geometry &g) {
    const double x = g.x;
    const double d = g.d;
    const double om = g.omega;
    const double e = -2.0 * x * x / om;
    const double u = x * d / om;
    switch (s) {
        case Scenario::PureExact: {
            double k = g.kappa;
            return std::exp(e) + std::exp(-2.0 * (x - d) * (x - d) / om) + std::exp(-2.0 * (x + d) * (x + d) / om) +
                   2.0 * std::exp(-(2.0 * x * x - 2.0 * x * d + d * d) / om) * std::cos(k * (2.0 * x * d - d * d)) +
                   2.0 * std::exp(-(2.0 * x * x + 2.0 * x * d + d * d) / om) * std::cos(k * (2.0 * x * d + d * d)) +
                   2.0 * std::exp(-2.0 * (x * x + d * d) / om) * std::cos(4.0 * x * d * k);
        }
        case Scenario::PureFarField:
            return farfield_pure_bracket(g, 0.0, 0.0);
        case Scenario::Tagged:
            return std::exp(e) + std::exp(-2.0 * (x - d) * (x - d) / om) + std::exp(-2.0 * (x + d) * (x + d) / om);
        case Scenario::TaggedFarField:
            return std::exp(e) + 2.0 * exp_cosh(e, 4.0 * u);
        case Scenario::SxUp:
        case Scenario::SxDown: {
            double sign = s == Scenario::SxUp ? 1.0 : -1.0;
            double theta = 2.0 * x * d / g.a;
            return 0.5 * std::exp(e) + 0.5 * exp_cosh(e, 4.0 * u) +
                   sign * std::numbers::sqrt2 * exp_cosh(e, 2.0 * u) * std::cos(theta) +
                   0.5 * std::exp(e) * std::cos(2.0 * theta);
        }
        case Scenario::SxRight:
            return exp_cosh(e, 4.0 * u) - std::exp(e) * std::cos(4.0 * x * d / g.a);
        case Scenario::EraserAlpha:
            return farfield_pure_bracket(g, 0.0, 0.0) / 3.0;
        case Scenario::EraserBeta:
            return farfield_pure_bracket(g, -kTwoPiOverThree, kTwoPiOverThree) / 3.0;
        case Scenario::EraserGamma:
            return farfield_pure_bracket(g, kTwoPiOverThree, -kTwoPiOverThree) / 3.0;
    }
    return 0.0;
}

// Six-point Lagrange interpolation on nodes -2..3, evaluated at t in [0, 1).
double lagrange6(const std::array<double, 6> &y, double t) {
    double sum = 0.0;
    for (int j = 0; j < 6; ++j) {
        double w = 1.0;
        for (int m = 0; m < 6; ++m) {
            if (m != j) {
                w *= (t - (m - 2)) / static_cast<double>(j - m);
            }
        }
        sum += w * y[static_cast<std::size_t>(j)];
    }
    return sum;
}

double parabola_peak(double y0, double y1, double y2) {
    double curvature = y0 - 2.0 * y1 + y2;
    if (curvature == 0.0) {
        return y1;
    }
    double offset = 0.5 * (y0 - y2) / curvature;
    if (std::abs(offset) > 1.0) {
        return y1;
    }
    return y1 - 0.25 * (y0 - y2) * offset;
}

}  // namespace

std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::PureExact: return "pure_exact";
        case Scenario::PureFarField: return "pure_farfield";
        case Scenario::Tagged: return "tagged";
        case Scenario::TaggedFarField: return "tagged_farfield";
        case Scenario::SxUp: return "sx_up";
        case Scenario::SxRight: return "sx_right";
        case Scenario::SxDown: return "sx_down";
        case Scenario::EraserAlpha: return "eraser_alpha";
        case Scenario::EraserBeta: return "eraser_beta";
        case Scenario::EraserGamma: return "eraser_gamma";
    }
    return "unknown";
}

bool has_fringes(Scenario s) {
    return s != Scenario::Tagged && s != Scenario::TaggedFarField;
}

bool is_far_field(Scenario s) {
    return s != Scenario::PureExact && s != Scenario::Tagged;
}

ClosedForm closed_form(Scenario scenario, double d, double eps, double a, const ScreenGrid &grid) {
    require(std::isfinite(d) && d > 0.0, "slit spacing d must be positive");
    require(std::isfinite(eps) && eps > 0.0, "width parameter eps must be positive");
    require(std::isfinite(a) && a >= 0.0, "evolution parameter a must be non-negative");
    require(a > 0.0 || !has_fringes(scenario), "fringe scenarios need a > 0");

    Geometry geom{0.0, d, a, PropagationParams(a).omega(eps), 0.0};
    geom.kappa = a / (eps * eps * geom.omega);
    const double prefactor = density_prefactor(eps, a) / 3.0;

    ClosedForm out{Pattern{grid, std::vector<double>(grid.size()), std::string(scenario_name(scenario))}, false};
    if (is_far_field(scenario)) {
        out.out_of_regime = std::exp(-2.0 * d * d / geom.omega) < 0.99 || (a > 0.0 && d * d / a > 0.01);
    }
    parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
        Geometry g = geom;
        for (std::size_t i = begin; i < end; ++i) {
            g.x = grid.x(i);
            out.pattern.values[i] = prefactor * evaluate(scenario, g);
        }
    });
    return out;
}

double visibility(const Pattern &p, const Pattern &baseline, double fringe_period) {
    if (!(p.grid == baseline.grid) || p.values.size() != baseline.values.size()) {
        fail(ErrorCode::GridMismatch, "visibility needs pattern and baseline on the same grid");
    }
    require(std::isfinite(fringe_period) && fringe_period > 0.0, "fringe period must be positive");
    const ScreenGrid &grid = p.grid;
    const double half = 0.5 * fringe_period;
    if (-half < grid.x_min() || half > grid.x_max()) {
        fail(ErrorCode::WindowOutOfGrid, "fringe period window [-P/2, P/2] does not fit in the grid");
    }
    const double dx = grid.spacing();
    const std::size_t last = grid.size() - 1;
    auto lo = static_cast<std::size_t>(std::max(0.0, std::ceil((-half - grid.x_min()) / dx - 1e-9)));
    auto hi = std::min(last, static_cast<std::size_t>(std::floor((half - grid.x_min()) / dx + 1e-9)));
    require(hi >= lo + 3, "fringe period spans fewer than 4 grid points");

    // Ratio on the native samples, up to three neighbors beyond the window.
    std::size_t first = lo >= 3 ? lo - 3 : 0;
    std::size_t stop = std::min(last, hi + 3);
    std::vector<double> ratio(stop - first + 1);
    for (std::size_t i = first; i <= stop; ++i) {
        double b = baseline.values[i];
        require(b > 0.0 && std::isfinite(b), "baseline must be strictly positive on the window");
        ratio[i - first] = p.values[i] / b;
    }
    if (std::all_of(ratio.begin(), ratio.end(), [&](double r) { return r == ratio.front(); })) {
        return 0.0;
    }

    auto at = [&](long k) {
        k = std::clamp<long>(k, 0, static_cast<long>(ratio.size()) - 1);
        return ratio[static_cast<std::size_t>(k)];
    };
    const std::size_t intervals = std::max<std::size_t>(512, 4 * (hi - lo));
    std::vector<double> dense(intervals + 1);
    for (std::size_t m = 0; m <= intervals; ++m) {
        double x = -half + fringe_period * static_cast<double>(m) / static_cast<double>(intervals);
        double s = (x - grid.x(first)) / dx;
        double base = std::floor(s);
        auto k = static_cast<long>(base);
        dense[m] = lagrange6({at(k - 2), at(k - 1), at(k), at(k + 1), at(k + 2), at(k + 3)}, s - base);
    }

    auto refine = [&](std::size_t m) {
        if (m == 0 || m == intervals) {
            return dense[m];
        }
        return parabola_peak(dense[m - 1], dense[m], dense[m + 1]);
    };
    auto [min_it, max_it] = std::minmax_element(dense.begin(), dense.end());
    double hi_val = refine(static_cast<std::size_t>(max_it - dense.begin()));
    double lo_val = std::max(0.0, refine(static_cast<std::size_t>(min_it - dense.begin())));
    if (hi_val + lo_val <= 0.0) {
        return 0.0;
    }
    return (hi_val - lo_val) / (hi_val + lo_val);
}

Pattern sorkin(const SlitArray &slits, double a, const ScreenGrid &grid) {
    require(slits.size() == 3, "the third-order interference test needs exactly 3 slits");
    PropagationParams params(a);
    auto intensity = [&](std::initializer_list<std::size_t> which) {
        std::vector<std::size_t> idx(which);
        return marginal_intensity(propagate(make_subset_state(slits, idx), params), grid).values;
    };
    const std::array<std::vector<double>, 7> terms = {
        intensity({0, 1, 2}), intensity({0, 1}), intensity({0, 2}), intensity({1, 2}),
        intensity({0}),       intensity({1}),    intensity({2}),
    };
    Pattern out{grid, std::vector<double>(grid.size()), "sorkin"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values[i] = terms[0][i] - (terms[1][i] + terms[2][i] + terms[3][i]) + (terms[4][i] + terms[5][i] + terms[6][i]);
    }
    return out;
}

Comparison compare(const Pattern &p, const Pattern &q) {
    if (!(p.grid == q.grid) || p.values.size() != q.values.size()) {
        fail(ErrorCode::GridMismatch, "cannot compare patterns on different grids");
    }
    Comparison c;
    double q_max = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        double diff = std::abs(p.values[i] - q.values[i]);
        q_max = std::max(q_max, std::abs(q.values[i]));
        sum_sq += diff * diff;
        if (diff > c.linf_abs) {
            c.linf_abs = diff;
            c.x_at_max = p.grid.x(i);
        }
    }
    c.linf_rel = q_max > 0.0 ? c.linf_abs / q_max : (c.linf_abs == 0.0 ? 0.0 : INFINITY);
    c.l2 = std::sqrt(sum_sq * p.grid.spacing());
    return c;
}

}  // namespace qeraser
