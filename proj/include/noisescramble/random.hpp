// Copyright 2026 The noisescramble Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace noisescramble {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

/// Order-sensitive, platform-stable seed mixing.
class SeedHasher {
  public:
    explicit constexpr SeedHasher(std::uint64_t seed = 0) noexcept
        : state_(splitmix64(seed)) {}

    constexpr SeedHasher &mix(std::uint64_t value) noexcept {
        state_ = splitmix64(state_ ^ splitmix64(value + 0x632be59bd9b4e019ULL));
        return *this;
    }
    SeedHasher &mix(double value) noexcept {
        return mix(std::bit_cast<std::uint64_t>(value));
    }
    constexpr SeedHasher &mix(std::string_view text) noexcept {
        // FNV-1a over the bytes, then folded in.
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : text) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return mix(h);
    }

    [[nodiscard]] constexpr std::uint64_t value() const noexcept {
        return state_;
    }

  private:
    std::uint64_t state_;
};

/// mt19937_64 stream with distribution code that does not depend on the
/// standard library implementation, so draws are identical across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }
    double normal() {
        // Box-Muller; one value per call keeps the stream stateless.
        constexpr double two_pi = 6.283185307179586476925286766559;
        double u1 = uniform01();
        while (u1 <= 0.0) {
            u1 = uniform01();
        }
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }
    std::uint64_t next() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

} // namespace noisescramble
