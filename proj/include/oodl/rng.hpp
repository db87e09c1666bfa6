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

#include <cstdint>
#include <limits>

namespace oodl {

/// Counter-based generator keyed by (seed, stream).
///
/// Draw k of a given key is a pure function of (seed, stream, k), so two
/// generators built from the same pair are bit-identical and generators with
/// different stream ids do not share state. `split` derives a child stream
/// deterministically, which is how parallel jobs obtain private generators.
///
/// Satisfies UniformRandomBitGenerator so it can drive <random>
/// distributions.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const noexcept {
        return seed_;
    }
    std::uint64_t stream() const noexcept {
        return stream_;
    }
    std::uint64_t counter() const noexcept {
        return counter_;
    }

    std::uint64_t next_u64();
    result_type operator()() {
        return next_u64();
    }
    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller (no cached second variate).
    double normal();
    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Independent child stream; the parent is not advanced.
    Rng split(std::uint64_t child) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace oodl
