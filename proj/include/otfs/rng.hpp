// SPDX-License-Identifier: Apache-2.0
//
// otfs-outage: outage-probability simulation for OTFS over delay-Doppler channels
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

#include "otfs/common.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace otfs {

/// splitmix64 finalizer. Used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Folds one more stream coordinate into a seed. Substream seeds are built by
/// chaining: hash_combine(hash_combine(master, outer_index), inner_index).
constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept {
    return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

/// Seeded random stream with fully specified output.
///
/// The core engine is std::mt19937_64, whose raw 64-bit sequence is pinned by
/// the standard; all conversions to doubles are done here rather than through
/// std::*_distribution (whose algorithms are implementation-defined), so two
/// builds of this library produce bit-identical streams for the same seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; pairs are generated together and the
    /// second value cached, so draws stay aligned with the raw stream.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite.
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        has_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

    /// Circularly-symmetric complex Gaussian with the given per-dimension
    /// standard deviation.
    Complex complex_normal(double sigma_per_dim) {
        const double re = sigma_per_dim * normal();
        const double im = sigma_per_dim * normal();
        return {re, im};
    }

    /// Unbiased uniform integer in [0, n) by rejection on the raw stream.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0)
            throw std::invalid_argument("uniform_index: n must be positive");
        const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= bound);
        return x % n;
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace otfs
