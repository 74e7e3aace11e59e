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

#ifndef QERASER_ERROR_HPP_
#define QERASER_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qeraser {

enum class ErrorCode {
    InvalidArgument = 1,
    NonUnitary,
    DimensionMismatch,
    AliasingRisk,
    WindowOutOfGrid,
    GridMismatch,
};

const char *error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// C API can translate it without string matching.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {
    }

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

/// Raised by basis validation; keeps the measured deviation from unitarity.
class NonUnitaryError : public Error {
   public:
    NonUnitaryError(double deviation, const std::string &message)
        : Error(ErrorCode::NonUnitary, message), deviation_(deviation) {
    }

    double deviation() const noexcept {
        return deviation_;
    }

   private:
    double deviation_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        fail(ErrorCode::InvalidArgument, message);
    }
}

}  // namespace qeraser

#endif
