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


#ifndef QERASER_ERASURE_HPP_
#define QERASER_ERASURE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qeraser/qstate.hpp"

namespace qeraser {

/// A projective readout of the path detector: an n x n unitary whose row j
/// is readout state j written in the computational tag basis.
class DetectorBasis {
   public:
    /// Identity; rows are the which-way tags themselves.
    static DetectorBasis computational(std::size_t n);
    /// Pseudo-spin-1 S_x eigenbasis (up, right, down) over the tags (+, 0, -).
    static DetectorBasis sx3();
    /// Basis unbiased to the tags: |<row|tag>|^2 = 1/n for every entry. Row 0
    /// is the uniform superposition. For odd n, row j uses the symmetric
    /// frequency m (m = j for j <= (n-1)/2, else j - n) with entries
    /// exp(2 pi i m (k + 1/2) / n) / sqrt(n); for n = 3 that is alpha, beta,
    /// gamma with the cube-root-of-unity phases. Even n uses the plain DFT,
    /// which gives the familiar (1,1), (1,-1) pair at n = 2.
    static DetectorBasis eraser(std::size_t n);
    /// Accepts any matrix unitary to 1e-10 per entry of rows * rows^dagger.
    /// Throws NonUnitaryError otherwise.
    static DetectorBasis custom(std::size_t n, std::vector<Complex> rows,
                                std::vector<std::string> labels = {});
    /// Haar-style random unitary (Gram-Schmidt on a complex Gaussian matrix).
    static DetectorBasis random(std::size_t n, std::uint64_t seed);

    std::size_t dim() const noexcept {
        return dim_;
    }
    Complex at(std::size_t row, std::size_t col) const {
        return rows_[row * dim_ + col];
    }
    std::span<const Complex> row(std::size_t j) const {
        return std::span<const Complex>(rows_).subspan(j * dim_, dim_);
    }
    std::span<const Complex> entries() const noexcept {
        return rows_;
    }
    const std::string &label(std::size_t j) const {
        return labels_.at(j);
    }

    /// Largest entry of |rows * rows^dagger - I|.
    double unitarity_deviation() const;

   private:
    DetectorBasis(std::size_t n, std::vector<Complex> rows, std::vector<std::string> labels);

    std::size_t dim_;
    std::vector<Complex> rows_;
    std::vector<std::string> labels_;
};

/// Matrix product lhs * rhs as a basis (unitary closure).
DetectorBasis multiply(const DetectorBasis &lhs, const DetectorBasis &rhs);

/// Applies a unitary to the detector: tag k becomes sum_j u(j, k) |j>.
EntangledState rotate_detector(const EntangledState &state, const DetectorBasis &unitary);

/// Conditions the state on readout `index`: a detector-free state whose
/// branch k carries coeff_k * conj(row[index][tag_k]). Left unnormalized; its
/// squared norm is the outcome probability. Outcomes with probability below
/// 1e-300 come back with all coefficients zero.
EntangledState project(const EntangledState &state, const DetectorBasis &basis, std::size_t index);

double outcome_probability(const EntangledState &state, const DetectorBasis &basis, std::size_t index);

/// One joint density p(x, outcome j) per basis row. With normalize set, each
/// pattern is divided by its outcome probability (conditional density).
std::vector<Pattern> joint_patterns(const EntangledState &state, const DetectorBasis &basis,
                                    const ScreenGrid &grid, bool normalize = false);

}  // namespace qeraser

#endif
