// Copyright 2026 The qganlab authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGANLAB_RNG_HPP
#define QGANLAB_RNG_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

namespace qganlab {

//! Derives a child seed from a master seed and a stream index.
//!
//! Uses two rounds of the splitmix64 finalizer so that nearby master seeds
//! and nearby indices produce unrelated streams. The map is pure: the same
//! (master, index) pair always yields the same child seed, which is what
//! makes multi-seed experiment sweeps reproducible run to run.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    auto mix = [](std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    return mix(mix(z));
}

//! Deterministic random stream used for every stochastic choice in the
//! library (parameter init, noise batches, minibatch selection, sampling).
//!
//! Wraps std::mt19937_64 but performs the integer-to-double mapping by hand
//! (53 high bits, one multiply) instead of going through
//! std::uniform_real_distribution, whose output is not pinned down by the
//! standard. Identical seeds therefore give identical draws on every
//! platform and standard library.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    //! Raw 64 random bits.
    std::uint64_t next_bits() { return engine_(); }

    //! Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    //! Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    //! Uniform integer in [0, n). Rejection-sampled, so unbiased for all n.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) {
            throw std::invalid_argument("uniform_index: n must be positive");
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r = engine_();
        while (r >= limit) {
            r = engine_();
        }
        return r % n;
    }

  private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

} // namespace qganlab

#endif // QGANLAB_RNG_HPP
