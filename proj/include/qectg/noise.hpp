// Copyright 2026 The qectg Authors
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

#ifndef QECTG_NOISE_HPP
#define QECTG_NOISE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "code_model.hpp"

namespace qectg {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based stream: the value at counter k is a pure function of
/// (master_seed, stream_key, k). No state is carried between draws, so trials
/// can be generated in any order on any thread.
class TrialRng {
   public:
    constexpr TrialRng(std::uint64_t master_seed, std::uint64_t stream_key)
        : master_seed_(master_seed), stream_key_(stream_key), key_(mix64(mix64(master_seed) ^ stream_key)) {}

    constexpr std::uint64_t master_seed() const { return master_seed_; }
    constexpr std::uint64_t stream_key() const { return stream_key_; }

    constexpr std::uint64_t bits(std::uint64_t counter) const {
        return mix64(key_ ^ mix64(counter + 0x632BE59BD9B4E019ULL));
    }

    /// Uniform in [0, 1) with 53 bits of resolution.
    constexpr double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

   private:
    std::uint64_t master_seed_;
    std::uint64_t stream_key_;
    std::uint64_t key_;
};

/// Each data qubit independently suffers X, Z or Y with probability p/3 each.
/// One uniform draw per qubit, counter = qubit index.
inline PauliFrame sample_depolarizing(const Lattice &lat, double p, const TrialRng &rng) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("error probability must lie in [0, 1], got " + std::to_string(p));
    }
    PauliFrame f = lat.identity();
    const double third = p / 3.0;
    for (std::size_t q = 0; q < lat.data_count(); ++q) {
        const double u = rng.uniform(q);
        if (u >= p) {
            continue;
        }
        if (u < third) {
            f.x_bits[q] = 1;
        } else if (u < 2.0 * third) {
            f.z_bits[q] = 1;
        } else {
            f.x_bits[q] = 1;
            f.z_bits[q] = 1;
        }
    }
    return f;
}

}  // namespace qectg

#endif  // QECTG_NOISE_HPP
