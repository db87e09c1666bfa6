// Copyright 2026 The oodl Authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "oodl/config.hpp"
#include "oodl/results.hpp"

namespace oodl {

/// Evaluates fn(0), ..., fn(count - 1) on up to `jobs` threads and returns
/// the results in index order. Each call must only touch its own state. The
/// first failing index (lowest, not first in time) is rethrown.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, int jobs, F &&fn) {
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<R> out;
    out.reserve(count);
    for (auto &s : slots) out.push_back(std::move(*s));
    return out;
}

struct ExperimentOutput {
    /// Written as results.csv.
    ResultTable results;
    /// Further tables keyed by file name, e.g. {"summary.csv", ...}.
    std::vector<std::pair<std::string, ResultTable>> extras;
};

ResultTable run_hamiltonian_learn(const HamiltonianLearnConfig &cfg, std::uint64_t seed, int jobs);
/// Per-run table; `summary` receives one row per (t, N).
ResultTable run_scrambler_learn(const ScramblerLearnConfig &cfg, std::uint64_t seed, int jobs, ResultTable *summary);
ResultTable run_tightness_scan(const TightnessScanConfig &cfg, std::uint64_t seed, int jobs);
ResultTable run_bounds_verify(const BoundsVerifyConfig &cfg, std::uint64_t seed, int jobs);
ResultTable run_linearity_demo(const LinearityDemoConfig &cfg);
ResultTable run_noisy_train(const NoisyTrainConfig &cfg, std::uint64_t seed, int jobs);

/// Validates cfg and dispatches on its kind.
ExperimentOutput run_experiment(const ExperimentConfig &cfg, int jobs);

}  // namespace oodl
