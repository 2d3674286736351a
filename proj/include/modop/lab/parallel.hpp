// SPDX-License-Identifier: Apache-2.0
//
// modop - numerical time-frequency operator calculus
// Copyright (C) 2026 The modop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#pragma once

// Ordered parallel map over independent tasks.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace modop::lab {

/// Default worker count: $MODOP_JOBS if set to a positive integer, else the
/// hardware concurrency.
inline unsigned default_jobs() {
    if (const char* env = std::getenv("MODOP_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Result slot of one task: its value, or the message of the exception it threw.
template <typename T>
struct TaskResult {
    T value{};
    bool failed = false;
    std::string error;
};

/// Runs fn(i) for i in [0, count) on `jobs` threads. Results are indexed by
/// task, so the output does not depend on scheduling.
template <typename T, typename Fn>
std::vector<TaskResult<T>> run_tasks(std::size_t count, unsigned jobs, Fn&& fn) {
    std::vector<TaskResult<T>> results(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i].value = fn(i);
            } catch (const std::exception& e) {
                results[i].failed = true;
                results[i].error = e.what();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (n == 1) {
        worker();
        return results;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace modop::lab
