// Copyright 2026 The Chamon Decoder Authors
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

#ifndef CHAMON_NOISE_H
#define CHAMON_NOISE_H

#include <cstdint>
#include <initializer_list>

#include "chamon/lattice.h"
#include "chamon/pauli_op.h"

namespace chamon {

inline uint64_t splitmix64_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Hashes a seed and a tuple of stream identifiers into one 64-bit key.
inline uint64_t derive_key(uint64_t seed, std::initializer_list<uint64_t> ids) {
    uint64_t key = splitmix64_mix(seed + 0x9e3779b97f4a7c15ULL);
    for (uint64_t id : ids) {
        key = splitmix64_mix(key ^ splitmix64_mix(id + 0x632be59bd9b4e019ULL));
    }
    return key;
}

/// Counter-based generator: draw i of stream `key` is mix(key + (i + 1) * golden).
/// Any stream can be replayed from its key alone, independent of other streams.
class CounterRng {
   public:
    using result_type = uint64_t;

    explicit CounterRng(uint64_t key) : key_(key) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return ~uint64_t{0};
    }
    result_type operator()() {
        counter_++;
        return splitmix64_mix(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return double((*this)() >> 11) * 0x1.0p-53;
    }
    /// Uniform integer in [0, bound).
    uint64_t below(uint64_t bound) {
        return uint64_t((unsigned __int128)(*this)() * bound >> 64);
    }
    uint64_t draws() const {
        return counter_;
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

/// I.i.d. depolarizing noise: each qubit gets X, Y, Z with probability p/3 each.
class DepolarizingChannel {
   public:
    /// Throws std::invalid_argument when p is outside [0, 1].
    DepolarizingChannel(double p, uint64_t seed);

    double p() const {
        return p_;
    }
    uint64_t seed() const {
        return seed_;
    }

    /// Draw number `draw_index`; identical (seed, draw_index) give identical errors.
    PauliOp sample_error(const ChamonLattice &lattice, uint64_t draw_index) const;
    /// One uniform per qubit from `rng`.
    PauliOp sample_error(size_t num_qubits, CounterRng &rng) const;

   private:
    double p_;
    uint64_t seed_;
};

}  // namespace chamon

#endif
