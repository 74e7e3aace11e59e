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


#include "qeraser/erasure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qeraser/error.hpp"
#include "qeraser/propagation.hpp"

namespace qeraser {

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kDegenerateProbability = 1e-300;

std::vector<std::string> indexed_labels(const char *prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(prefix + std::to_string(k));
    }
    return out;
}

void check_dims(const EntangledState &state, const DetectorBasis &basis) {
    if (basis.dim() != state.detector_dim()) {
        fail(ErrorCode::DimensionMismatch, "basis dimension " + std::to_string(basis.dim()) +
                                               " does not match detector dimension " +
                                               std::to_string(state.detector_dim()));
    }
}

}  // namespace

DetectorBasis::DetectorBasis(std::size_t n, std::vector<Complex> rows, std::vector<std::string> labels)
    : dim_(n), rows_(std::move(rows)), labels_(std::move(labels)) {
}

DetectorBasis DetectorBasis::computational(std::size_t n) {
    require(n >= 1, "basis dimension must be at least 1");
    std::vector<Complex> rows(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        rows[k * n + k] = 1.0;
    }
    auto labels = n == 3 ? std::vector<std::string>{"plus", "zero", "minus"} : indexed_labels("tag", n);
    return DetectorBasis(n, std::move(rows), std::move(labels));
}

DetectorBasis DetectorBasis::sx3() {
    const double h = 0.5;
    const double r = 1.0 / std::numbers::sqrt2;
    std::vector<Complex> rows = {
        h, r, h,     // up
        r, 0.0, -r,  // right
        h, -r, h,    // down
    };
    return DetectorBasis(3, std::move(rows), {"up", "right", "down"});
}

DetectorBasis DetectorBasis::eraser(std::size_t n) {
    require(n >= 2, "eraser basis needs at least 2 detector states");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double nn = static_cast<double>(n);
    std::vector<Complex> rows(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            double phase;
            if (n % 2 == 1) {
                double m = 2 * j <= n - 1 ? double(j) : double(j) - nn;
                phase = 2.0 * std::numbers::pi * m * (double(k) + 0.5) / nn;
            } else {
                // Reduce j*k mod n first so large n keeps full phase accuracy.
                phase = 2.0 * std::numbers::pi * double((j * k) % n) / nn;
            }
            rows[j * n + k] = std::polar(scale, phase);
        }
    }
    auto labels = n == 3 ? std::vector<std::string>{"alpha", "beta", "gamma"} : indexed_labels("e", n);
    return DetectorBasis(n, std::move(rows), std::move(labels));
}

DetectorBasis DetectorBasis::custom(std::size_t n, std::vector<Complex> rows, std::vector<std::string> labels) {
    require(n >= 1, "basis dimension must be at least 1");
    if (rows.size() != n * n) {
        fail(ErrorCode::DimensionMismatch, "custom basis must be square: expected " + std::to_string(n * n) +
                                               " entries, got " + std::to_string(rows.size()));
    }
    for (Complex z : rows) {
        require(std::isfinite(z.real()) && std::isfinite(z.imag()), "custom basis entries must be finite");
    }
    if (labels.empty()) {
        labels = indexed_labels("o", n);
    }
    require(labels.size() == n, "custom basis needs one label per row");
    DetectorBasis basis(n, std::move(rows), std::move(labels));
    double dev = basis.unitarity_deviation();
    if (!(dev <= kUnitaryTolerance)) {
        std::ostringstream msg;
        msg.precision(3);
        msg << "basis is not unitary: max |U U^dagger - I| = " << dev << " exceeds " << kUnitaryTolerance;
        throw NonUnitaryError(dev, msg.str());
    }
    return basis;
}

DetectorBasis DetectorBasis::random(std::size_t n, std::uint64_t seed) {
    require(n >= 1, "basis dimension must be at least 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<Complex> rows(n * n);
    for (auto &z : rows) {
        double re = normal(rng);
        z = Complex(re, normal(rng));
    }
    // Modified Gram-Schmidt, twice for good orthogonality in double precision.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex *rj = &rows[j * n];
            for (std::size_t i = 0; i < j; ++i) {
                const Complex *ri = &rows[i * n];
                Complex dot = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    dot += std::conj(ri[k]) * rj[k];
                }
                for (std::size_t k = 0; k < n; ++k) {
                    rj[k] -= dot * ri[k];
                }
            }
            double len = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                len += std::norm(rj[k]);
            }
            len = std::sqrt(len);
            for (std::size_t k = 0; k < n; ++k) {
                rj[k] /= len;
            }
        }
    }
    return custom(n, std::move(rows));
}

double DetectorBasis::unitarity_deviation() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            Complex dot = 0.0;
            for (std::size_t k = 0; k < dim_; ++k) {
                dot += at(i, k) * std::conj(at(j, k));
            }
            double dev = std::abs(dot - Complex(i == j ? 1.0 : 0.0));
            if (std::isnan(dev)) {
                return dev;
            }
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

DetectorBasis multiply(const DetectorBasis &lhs, const DetectorBasis &rhs) {
    if (lhs.dim() != rhs.dim()) {
        fail(ErrorCode::DimensionMismatch, "cannot multiply bases of different dimension");
    }
    std::size_t n = lhs.dim();
    std::vector<Complex> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                out[i * n + j] += lhs.at(i, k) * rhs.at(k, j);
            }
        }
    }
    return DetectorBasis::custom(n, std::move(out));
}

EntangledState rotate_detector(const EntangledState &state, const DetectorBasis &unitary) {
    check_dims(state, unitary);
    std::vector<Branch> out;
    for (const auto &b : state.branches()) {
        for (std::size_t j = 0; j < unitary.dim(); ++j) {
            Complex u = unitary.at(j, b.tag);
            if (u != 0.0) {
                out.push_back({b.packet.with_coeff(b.packet.coeff() * u), j});
            }
        }
    }
    return EntangledState(state.detector_dim(), std::move(out));
}

EntangledState project(const EntangledState &state, const DetectorBasis &basis, std::size_t index) {
    check_dims(state, basis);
    require(index < basis.dim(), "readout index out of range");
    std::vector<Branch> out;
    out.reserve(state.branches().size());
    for (const auto &b : state.branches()) {
        out.push_back({b.packet.with_coeff(b.packet.coeff() * std::conj(basis.at(index, b.tag))), 0});
    }
    EntangledState projected(1, std::move(out));
    if (projected.branches().empty() || norm_squared(projected) >= kDegenerateProbability) {
        return projected;
    }
    std::vector<Branch> zeroed;
    for (const auto &b : projected.branches()) {
        zeroed.push_back({b.packet.with_coeff(0.0), 0});
    }
    return EntangledState(1, std::move(zeroed));
}

double outcome_probability(const EntangledState &state, const DetectorBasis &basis, std::size_t index) {
    return norm_squared(project(state, basis, index));
}

std::vector<Pattern> joint_patterns(const EntangledState &state, const DetectorBasis &basis,
                                    const ScreenGrid &grid, bool normalize) {
    check_dims(state, basis);
    std::vector<Pattern> out;
    out.reserve(basis.dim());
    for (std::size_t j = 0; j < basis.dim(); ++j) {
        EntangledState conditioned = project(state, basis, j);
        Pattern p = marginal_intensity(conditioned, grid);
        p.label = basis.label(j);
        if (normalize) {
            double prob = norm_squared(conditioned);
            for (double &v : p.values) {
                v = prob >= kDegenerateProbability ? v / prob : 0.0;
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace qeraser
