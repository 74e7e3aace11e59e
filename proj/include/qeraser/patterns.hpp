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


#ifndef QERASER_PATTERNS_HPP_
#define QERASER_PATTERNS_HPP_

#include <string_view>

#include "qeraser/qstate.hpp"

namespace qeraser {

/// One closed-form screen pattern for the symmetric three-slit setup
/// (slits at +d, 0, -d, equal amplitudes 1/sqrt(3)).
enum class Scenario {
    PureExact,       // no detector, every overlap and phase term kept
    PureFarField,    // no detector, omega >> d^2 and a >> d^2
    Tagged,          // which-way tags, exact
    TaggedFarField,  // which-way tags, omega >> d^2
    SxUp,
    SxRight,
    SxDown,
    EraserAlpha,
    EraserBeta,
    EraserGamma,
};

std::string_view scenario_name(Scenario s);
bool has_fringes(Scenario s);
bool is_far_field(Scenario s);

struct ClosedForm {
    Pattern pattern;
    // Far-field forms evaluated where e^(-2d^2/omega) < 0.99 or d^2/a > 0.01.
    bool out_of_regime = false;
};

/// Evaluates the scenario's formula on the grid with prefactor
/// |C_t|^2 / 3 = sqrt(2/(pi omega)) / 3. Requires d, eps > 0 and, for
/// scenarios with fringes, a > 0.
ClosedForm closed_form(Scenario scenario, double d, double eps, double a, const ScreenGrid &grid);

/// Fringe visibility (max - min)/(max + min) of p/baseline over one fringe
/// period centered at x = 0. Extrema come from a dense resampling (at least
/// 512 points per period, six-point Lagrange interpolation of the ratio)
/// refined by a local parabola.
double visibility(const Pattern &p, const Pattern &baseline, double fringe_period);

/// Third-order interference term I123 - (I12 + I13 + I23) + (I1 + I2 + I3)
/// after evolution by a. Zero under the Born rule.
Pattern sorkin(const SlitArray &slits, double a, const ScreenGrid &grid);

struct Comparison {
    double linf_abs = 0.0;
    double linf_rel = 0.0;  // linf_abs / max|q|
    double l2 = 0.0;        // sqrt(sum (p - q)^2 dx)
    double x_at_max = 0.0;
};

Comparison compare(const Pattern &p, const Pattern &q);

}  // namespace qeraser

#endif
