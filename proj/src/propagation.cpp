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


#include "qeraser/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qeraser/error.hpp"
#include "qeraser/parallel.hpp"

namespace qeraser {

PropagationParams::PropagationParams(double a) : a_(a) {
    require(std::isfinite(a) && a >= 0.0, "evolution parameter a must be finite and non-negative");
}

PropagationParams PropagationParams::from_time(double t, double mass, double hbar) {
    require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
    require(std::isfinite(hbar) && hbar > 0.0, "hbar must be positive");
    require(std::isfinite(t) && t >= 0.0, "time must be non-negative");
    return PropagationParams(2.0 * hbar * t / mass);
}

PropagationParams PropagationParams::from_geometry(double wavelength, double distance) {
    require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be positive");
    require(std::isfinite(distance) && distance >= 0.0, "distance must be non-negative");
    return PropagationParams(wavelength * distance / std::numbers::pi);
}

double PropagationParams::omega(double epsilon) const {
    require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
    return epsilon * epsilon + a_ * a_ / (epsilon * epsilon);
}

double density_prefactor(double epsilon, double a) {
    return std::sqrt(2.0 / (std::numbers::pi * PropagationParams(a).omega(epsilon)));
}

GaussianPacket propagate(const GaussianPacket &packet, const PropagationParams &params) {
    if (params.evolution() == 0.0) {
        return packet;
    }
    return packet.with_width_sq(packet.width_sq() + Complex(0.0, params.evolution()));
}

EntangledState propagate(const EntangledState &state, const PropagationParams &params) {
    std::vector<Branch> out;
    out.reserve(state.branches().size());
    for (const auto &b : state.branches()) {
        out.push_back({propagate(b.packet, params), b.tag});
    }
    return EntangledState(state.detector_dim(), std::move(out));
}

std::vector<Complex> evaluate_amplitude(const EntangledState &state, double x) {
    std::vector<Complex> out(state.detector_dim(), 0.0);
    for (const auto &b : state.branches()) {
        out[b.tag] += b.packet.amplitude(x);
    }
    return out;
}

double marginal_intensity_at(const EntangledState &state, double x) {
    auto amps = evaluate_amplitude(state, x);
    double total = 0.0;
    for (Complex z : amps) {
        total += std::norm(z);
    }
    return total;
}

Pattern marginal_intensity(const EntangledState &state, const ScreenGrid &grid) {
    Pattern p{grid, std::vector<double>(grid.size(), 0.0), "marginal"};
    parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<Complex> amps(state.detector_dim());
        for (std::size_t i = begin; i < end; ++i) {
            std::fill(amps.begin(), amps.end(), Complex(0.0));
            double x = grid.x(i);
            for (const auto &b : state.branches()) {
                amps[b.tag] += b.packet.amplitude(x);
            }
            double total = 0.0;
            for (Complex z : amps) {
                total += std::norm(z);
            }
            p.values[i] = total;
        }
    });
    return p;
}

ScreenGrid coverage_grid(const EntangledState &state, std::size_t points) {
    require(!state.branches().empty(), "state has no branches");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double widest = 0.0;
    for (const auto &b : state.branches()) {
        lo = std::min(lo, b.packet.center());
        hi = std::max(hi, b.packet.center());
        widest = std::max(widest, std::sqrt(b.packet.omega()));
    }
    return ScreenGrid(lo - 12.0 * widest, hi + 12.0 * widest, points);
}

double trapezoid(const std::vector<double> &values, double spacing) {
    if (values.size() < 2) {
        return 0.0;
    }
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        sum += values[i];
    }
    return sum * spacing;
}

double total_probability(const EntangledState &state) {
    require(!state.branches().empty(), "state has no branches");
    double narrowest = std::numeric_limits<double>::infinity();
    for (const auto &b : state.branches()) {
        narrowest = std::min(narrowest, b.packet.epsilon());
    }
    ScreenGrid span = coverage_grid(state, 2);
    double step = narrowest / 8.0;
    double count = std::ceil((span.x_max() - span.x_min()) / step) + 1.0;
    // FIXME: very wide evolutions (omega/eps^2 above ~1e10) exceed this cap and
    // would need an adaptive rule instead of a uniform step.
    require(count <= double(1 << 26), "quadrature grid too large for this state");
    ScreenGrid grid(span.x_min(), span.x_max(), static_cast<std::size_t>(count));
    return trapezoid(marginal_intensity(state, grid).values, grid.spacing());
}

}  // namespace qeraser
