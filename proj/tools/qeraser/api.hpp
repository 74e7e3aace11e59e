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


// Thin RAII layer over the C API for the command-line tool.

#ifndef QERASER_TOOLS_API_HPP_
#define QERASER_TOOLS_API_HPP_

#include <memory>
#include <stdexcept>
#include <string>

#include "qeraser/qeraser.h"

namespace qeraser::cli {

class ApiError : public std::runtime_error {
   public:
    ApiError(qe_status status, const std::string &message) : std::runtime_error(message), status_(status) {
    }
    qe_status status() const noexcept {
        return status_;
    }

   private:
    qe_status status_;
};

inline void check(qe_status status, const std::string &context) {
    if (status != QE_OK) {
        throw ApiError(status, context + ": " + qe_last_error());
    }
}

struct StateDeleter {
    void operator()(qe_state *s) const noexcept {
        qe_state_destroy(s);
    }
};
struct BasisDeleter {
    void operator()(qe_basis *b) const noexcept {
        qe_basis_destroy(b);
    }
};
using State = std::unique_ptr<qe_state, StateDeleter>;
using Basis = std::unique_ptr<qe_basis, BasisDeleter>;

}  // namespace qeraser::cli

#endif
