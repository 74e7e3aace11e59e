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


#ifndef QERASER_PROPAGATION_HPP_
#define QERASER_PROPAGATION_HPP_

#include <vector>

#include "qeraser/qstate.hpp"

namespace qeraser {

/// Free-evolution bookkeeping. Everything reduces to the single parameter
/// a = 2*hbar*t/m = lambda*D/pi, which is what propagation adds to the
/// imaginary part of a packet's complex squared width.
class PropagationParams {
   public:
    /// Rejects negative or non-finite a.
    explicit PropagationParams(double a);

    static PropagationParams from_time(double t, double mass, double hbar);
    static PropagationParams from_geometry(double wavelength, double distance);

    double evolution() const noexcept {
        return a_;
    }
    /// eps^2 + a^2/eps^2.
    double omega(double epsilon) const;

   private:
    double a_;
};

/// sqrt(2 / (pi * omega)), the peak density of a unit packet after evolution.
double density_prefactor(double epsilon, double a);

GaussianPacket propagate(const GaussianPacket &packet, const PropagationParams &params);
EntangledState propagate(const EntangledState &state, const PropagationParams &params);

/// Per-tag amplitude at x; component j sums the branches carrying tag j.
std::vector<Complex> evaluate_amplitude(const EntangledState &state, double x);

/// Sum over tags of |amplitude|^2 on every grid point.
Pattern marginal_intensity(const EntangledState &state, const ScreenGrid &grid);
double marginal_intensity_at(const EntangledState &state, double x);

/// Screen window covering every packet center +- 12 times the largest
/// expanded width sqrt(omega).
ScreenGrid coverage_grid(const EntangledState &state, std::size_t points);

/// Trapezoid integral of the marginal intensity over coverage_grid, with a
/// step no larger than eps/8 for the narrowest packet.
double total_probability(const EntangledState &state);

double trapezoid(const std::vector<double> &values, double spacing);

}  // namespace qeraser

#endif
