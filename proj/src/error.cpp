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


#include "qeraser/error.hpp"

namespace qeraser {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonUnitary: return "NonUnitary";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::AliasingRisk: return "AliasingRisk";
        case ErrorCode::WindowOutOfGrid: return "WindowOutOfGrid";
        case ErrorCode::GridMismatch: return "GridMismatch";
    }
    return "Unknown";
}

}  // namespace qeraser
