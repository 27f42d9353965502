// SPDX-License-Identifier: Apache-2.0
//
// passim - positioning and link simulation for pinching-antenna systems
// Copyright (C) 2026 The passim authors
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

#include <cmath>
#include <cstdint>
#include <numbers>

namespace passim {

// Small self-contained generator so that realizations are bit-identical
// across platforms and standard-library versions. std::normal_distribution
// is implementation-defined and would break byte-stable campaign outputs.
class SplitMix64 {
  public:
    SplitMix64() = default;
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Standard normal via Box-Muller. One draw per call; the sine branch is
    // discarded so consumption stays one-call-two-u64 regardless of caller.
    double next_gaussian() {
        double u1 = next_double();
        double u2 = next_double();
        // 1 - u1 lies in (0, 1], which keeps the log argument away from zero.
        double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t state_ = 0x853C49E6748FEA9BULL;
};

// Derives an independent substream from a master seed and up to three stream
// coordinates (e.g. cell index, trial index). Each coordinate passes through
// the SplitMix64 finalizer, so (seed, a, b, c) tuples that differ in any
// component map to well-separated states. This is what makes Monte Carlo
// campaigns reproducible regardless of worker count or scheduling order.
inline std::uint64_t derive_substream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                      std::uint64_t c = 0) {
    auto mix = [](std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(master ^ 0x9E3779B97F4A7C15ULL);
    h = mix(h ^ (a + 0xA0761D6478BD642FULL));
    h = mix(h ^ (b + 0xE7037ED1A0B428DBULL));
    h = mix(h ^ (c + 0x8EBC6AF09C88C6E3ULL));
    return h;
}

} // namespace passim
