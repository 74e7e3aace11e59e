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


#ifndef QERASER_PARALLEL_HPP_
#define QERASER_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace qeraser {

/// Upper bound on worker threads. Defaults to QERASER_THREADS when set,
/// otherwise the hardware concurrency.
std::size_t max_threads();
/// 0 restores the default.
void set_max_threads(std::size_t n);

/// Runs body(begin, end) over disjoint chunks of [0, n). Each index is
/// processed by exactly one call, so per-index results never depend on the
/// chunking.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)> &body);

}  // namespace qeraser

#endif
