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


#ifndef QERASER_ORACLE_HPP_
#define QERASER_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qeraser/qstate.hpp"

namespace qeraser {

/// Complex samples of one detector component on a uniform grid.
struct GridWave {
    ScreenGrid grid;
    std::vector<Complex> samples;
};

/// Component j sampled from the analytic amplitude.
std::vector<GridWave> sample_state(const EntangledState &state, const ScreenGrid &grid);

/// Trapezoid integral of |samples|^2.
double discrete_norm(const GridWave &wave);

struct SpectralOptions {
    /// Interval the computational domain must contain in addition to the
    /// input grid and the predicted spread.
    std::optional<std::pair<double, double>> cover;
    std::size_t max_points = std::size_t{1} << 24;
};

/// Free evolution by multiplying the spectrum with exp(-i k^2 a / 4).
///
/// The input must have a power-of-two size of at least 1024 and be contained
/// in its grid (edge mass below 1e-10 of the total). The wave is zero-padded
/// on the same spacing to a power-of-two domain that also holds the predicted
/// spread (24 standard deviations, i.e. 12 sqrt(omega) for a Gaussian), so
/// periodic images never meet. The result lives on that padded grid; use
/// crop() to get back to the input window. Throws AliasingRisk when the input
/// is truncated, under-resolved, or the padded domain would be too large.
GridWave spectral_propagate(const GridWave &wave, double a, const SpectralOptions &options = {});

/// Restricts a wave to a sub-grid with the same spacing and aligned points.
GridWave crop(const GridWave &wave, const ScreenGrid &window);

struct ComponentError {
    double linf_abs = 0.0;
    double linf_rel = 0.0;
    double l2 = 0.0;
};

struct CrossValidation {
    std::vector<ComponentError> components;
    double pattern_linf_rel = 0.0;
    double norm_analytic = 0.0;  // trapezoid on the padded domain
    double norm_spectral = 0.0;
    double norm_initial = 0.0;   // trapezoid of the sampled input
    ScreenGrid domain{0.0, 1.0, 2};
    bool pass = false;
};

/// Compares {sample, then spectral_propagate} against {analytic propagation,
/// then sample} over the whole padded domain. Passes iff every relative
/// amplitude error is at most 1e-6.
CrossValidation cross_validate(const EntangledState &state, double a, const ScreenGrid &grid);

/// Third-order interference term with every intensity computed by the
/// spectral propagator.
Pattern sorkin_spectral(const SlitArray &slits, double a, const ScreenGrid &grid);

}  // namespace qeraser

#endif
