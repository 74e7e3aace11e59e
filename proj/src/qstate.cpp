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


#include "qeraser/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qeraser/error.hpp"

namespace qeraser {

namespace {

const double kQuarticRootTwoOverPi = std::pow(2.0 / std::numbers::pi, 0.25);

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

GaussianPacket::GaussianPacket(double center, Complex width_sq, Complex coeff)
    : center_(center), width_sq_(width_sq), coeff_(coeff) {
    require(std::isfinite(center), "packet center must be finite");
    require(finite(width_sq) && width_sq.real() > 0.0, "packet width_sq must have a positive real part");
    require(finite(coeff), "packet coefficient must be finite");
    norm_ = kQuarticRootTwoOverPi / std::sqrt(width_sq_ / epsilon());
}

double GaussianPacket::epsilon() const noexcept {
    return std::sqrt(width_sq_.real());
}

double GaussianPacket::omega() const noexcept {
    return std::norm(width_sq_) / width_sq_.real();
}

double GaussianPacket::density_scale() const noexcept {
    return std::sqrt(2.0 / (std::numbers::pi * omega()));
}

Complex GaussianPacket::shape(double x) const noexcept {
    double dx = x - center_;
    return norm_ * std::exp(-(dx * dx) / width_sq_);
}

Complex packet_overlap(const GaussianPacket &bra, const GaussianPacket &ket) {
    // Integrand exp(-(x-c_k)^2/w_k - (x-c_b)^2/conj(w_b)); complete the square.
    Complex alpha = 1.0 / ket.width_sq();
    Complex beta = 1.0 / std::conj(bra.width_sq());
    Complex sum = alpha + beta;
    double delta = ket.center() - bra.center();
    Complex gaussian = std::sqrt(std::numbers::pi / sum) * std::exp(-alpha * beta * delta * delta / sum);
    return std::conj(bra.normalization()) * ket.normalization() * gaussian;
}

SlitArray::SlitArray(double spacing, double width, std::vector<Complex> amplitudes)
    : spacing_(spacing), width_(width), amplitudes_(std::move(amplitudes)) {
    require(amplitudes_.size() >= 2, "slit count must be at least 2");
    require(std::isfinite(spacing_) && spacing_ > 0.0, "slit spacing must be positive");
    require(std::isfinite(width_) && width_ > 0.0, "slit width parameter must be positive");
    require(std::all_of(amplitudes_.begin(), amplitudes_.end(), finite), "slit amplitudes must be finite");
    require(std::any_of(amplitudes_.begin(), amplitudes_.end(), [](Complex c) { return c != 0.0; }),
            "slit amplitudes must not all be zero");
}

SlitArray SlitArray::equal(std::size_t n, double spacing, double width) {
    require(n >= 2, "slit count must be at least 2");
    return SlitArray(spacing, width, std::vector<Complex>(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

double SlitArray::center(std::size_t k) const {
    require(k < size(), "slit index out of range");
    return spacing_ * (static_cast<double>(size() - 1) / 2.0 - static_cast<double>(k));
}

EntangledState::EntangledState(std::size_t detector_dim, std::vector<Branch> branches)
    : detector_dim_(detector_dim), branches_(std::move(branches)) {
    require(detector_dim_ >= 1, "detector dimension must be at least 1");
    for (const auto &b : branches_) {
        require(b.tag < detector_dim_, "branch tag exceeds detector dimension");
    }
}

namespace {

std::vector<Branch> slit_branches(const SlitArray &slits, bool tagged) {
    std::vector<Branch> out;
    out.reserve(slits.size());
    Complex width_sq(slits.width() * slits.width(), 0.0);
    for (std::size_t k = 0; k < slits.size(); ++k) {
        out.push_back({GaussianPacket(slits.center(k), width_sq, slits.amplitudes()[k]), tagged ? k : 0});
    }
    return out;
}

}  // namespace

EntangledState make_slit_state(const SlitArray &slits) {
    return EntangledState(1, slit_branches(slits, false));
}

EntangledState make_tagged_state(const SlitArray &slits) {
    return EntangledState(slits.size(), slit_branches(slits, true));
}

EntangledState make_subset_state(const SlitArray &slits, std::span<const std::size_t> which) {
    require(!which.empty(), "slit subset must not be empty");
    std::vector<Branch> out;
    Complex width_sq(slits.width() * slits.width(), 0.0);
    for (std::size_t k : which) {
        out.push_back({GaussianPacket(slits.center(k), width_sq, slits.amplitudes()[k]), 0});
    }
    return EntangledState(1, std::move(out));
}

double norm_squared(const EntangledState &state) {
    Complex total = 0.0;
    auto branches = state.branches();
    for (const auto &j : branches) {
        for (const auto &k : branches) {
            if (j.tag != k.tag) {
                continue;
            }
            total += j.packet.coeff() * std::conj(k.packet.coeff()) * packet_overlap(k.packet, j.packet);
        }
    }
    if (std::abs(total.imag()) >= 1e-12 * std::max(1.0, std::abs(total))) {
        fail(ErrorCode::InvalidArgument, "norm has a non-negligible imaginary part");
    }
    return total.real();
}

ScreenGrid::ScreenGrid(double x_min, double x_max, std::size_t points)
    : x_min_(x_min), x_max_(x_max), points_(points) {
    require(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max, "grid requires xmin < xmax");
    require(points >= 2, "grid requires at least 2 points");
}

}  // namespace qeraser
