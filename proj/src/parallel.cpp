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


#include "qeraser/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qeraser {

namespace {

std::atomic<std::size_t> g_override{0};

std::size_t env_threads() {
    const char *env = std::getenv("QERASER_THREADS");
    if (env == nullptr) {
        return 0;
    }
    try {
        long v = std::stol(env);
        return v > 0 ? static_cast<std::size_t>(v) : 0;
    } catch (const std::exception &) {
        return 0;
    }
}

// Chunks below this size are not worth a thread.
constexpr std::size_t kMinChunk = 2048;

}  // namespace

std::size_t max_threads() {
    if (std::size_t o = g_override.load(); o > 0) {
        return o;
    }
    if (std::size_t e = env_threads(); e > 0) {
        return e;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void set_max_threads(std::size_t n) {
    g_override.store(n);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)> &body) {
    std::size_t workers = std::min(max_threads(), (n + kMinChunk - 1) / kMinChunk);
    if (workers <= 1) {
        if (n > 0) {
            body(0, n);
        }
        return;
    }
    std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) {
            break;
        }
        threads.emplace_back([&, w, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace qeraser
