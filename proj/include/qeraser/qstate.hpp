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

#ifndef QERASER_QSTATE_HPP_
#define QERASER_QSTATE_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qeraser {

using Complex = std::complex<double>;

/// One Gaussian branch of the particle wavefunction.
///
/// The position amplitude is
///
///     coeff * (2/pi)^(1/4) * (width_sq / eps)^(-1/2) * exp(-(x - center)^2 / width_sq)
///
/// with eps = sqrt(Re width_sq). At Im width_sq = 0 this is a unit-norm
/// Gaussian of width parameter eps; free evolution only adds to the imaginary
/// part, so the normalization constant is always recovered from width_sq and
/// never folded into coeff.
class GaussianPacket {
   public:
    GaussianPacket(double center, Complex width_sq, Complex coeff);

    double center() const noexcept {
        return center_;
    }
    Complex width_sq() const noexcept {
        return width_sq_;
    }
    Complex coeff() const noexcept {
        return coeff_;
    }

    /// Slit width parameter, sqrt(Re width_sq).
    double epsilon() const noexcept;
    /// Accumulated evolution parameter, Im width_sq.
    double evolution() const noexcept {
        return width_sq_.imag();
    }
    /// Expanded squared width eps^2 + a^2/eps^2 (= |width_sq|^2 / Re width_sq).
    double omega() const noexcept;
    /// |normalization constant|^2 = sqrt(2 / (pi * omega)).
    double density_scale() const noexcept;
    Complex normalization() const noexcept {
        return norm_;
    }

    /// Amplitude without the branch coefficient.
    Complex shape(double x) const noexcept;
    /// Full branch amplitude, coeff * shape(x).
    Complex amplitude(double x) const noexcept {
        return coeff_ * shape(x);
    }

    GaussianPacket with_coeff(Complex coeff) const {
        return GaussianPacket(center_, width_sq_, coeff);
    }
    GaussianPacket with_width_sq(Complex width_sq) const {
        return GaussianPacket(center_, width_sq, coeff_);
    }

   private:
    double center_;
    Complex width_sq_;
    Complex coeff_;
    Complex norm_;  // (2/pi)^(1/4) * (width_sq/eps)^(-1/2), principal branch
};

/// <bra|ket> of the two packet shapes, coefficients excluded.
Complex packet_overlap(const GaussianPacket &bra, const GaussianPacket &ket);

/// Geometry of the N-slit aperture. Slit k sits at spacing*((n-1)/2 - k), so
/// index 0 is the slit at largest x.
class SlitArray {
   public:
    SlitArray(double spacing, double width, std::vector<Complex> amplitudes);

    /// n slits with equal amplitudes 1/sqrt(n).
    static SlitArray equal(std::size_t n, double spacing, double width);

    std::size_t size() const noexcept {
        return amplitudes_.size();
    }
    double spacing() const noexcept {
        return spacing_;
    }
    double width() const noexcept {
        return width_;
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    double center(std::size_t k) const;

   private:
    double spacing_;
    double width_;
    std::vector<Complex> amplitudes_;
};

struct Branch {
    GaussianPacket packet;
    std::size_t tag;
};

/// Particle branches entangled with an n-level path detector. A detector
/// dimension of 1 is the coherent, detector-free case. Several branches may
/// share a tag.
class EntangledState {
   public:
    EntangledState(std::size_t detector_dim, std::vector<Branch> branches);

    std::size_t detector_dim() const noexcept {
        return detector_dim_;
    }
    std::span<const Branch> branches() const noexcept {
        return branches_;
    }

   private:
    std::size_t detector_dim_;
    std::vector<Branch> branches_;
};

EntangledState make_slit_state(const SlitArray &slits);
EntangledState make_tagged_state(const SlitArray &slits);
/// Detector-free state built from the listed slits only, keeping their
/// amplitudes. Used for the pairwise/single-slit intensities.
EntangledState make_subset_state(const SlitArray &slits, std::span<const std::size_t> which);

/// Squared norm including the overlap of packets that share a tag.
double norm_squared(const EntangledState &state);

class ScreenGrid {
   public:
    ScreenGrid(double x_min, double x_max, std::size_t points);

    double x_min() const noexcept {
        return x_min_;
    }
    double x_max() const noexcept {
        return x_max_;
    }
    std::size_t size() const noexcept {
        return points_;
    }
    double spacing() const noexcept {
        return (x_max_ - x_min_) / static_cast<double>(points_ - 1);
    }
    double x(std::size_t i) const noexcept {
        return x_min_ + static_cast<double>(i) * spacing();
    }

    bool operator==(const ScreenGrid &) const = default;

   private:
    double x_min_;
    double x_max_;
    std::size_t points_;
};

/// Intensity sampled on a screen grid. Values are probability densities
/// (non-negative) for every label except "sorkin", which is signed.
struct Pattern {
    ScreenGrid grid;
    std::vector<double> values;
    std::string label;
};

}  // namespace qeraser

#endif
