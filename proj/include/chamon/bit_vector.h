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

#ifndef CHAMON_BIT_VECTOR_H
#define CHAMON_BIT_VECTOR_H

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace chamon {

/// Fixed-length vector over GF(2), packed into 64-bit words.
///
/// Bits past `size()` in the last word are always zero so that word-level
/// kernels (popcount, equality, dot products) never need masking.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }

    bool operator[](size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool value = true) {
        uint64_t mask = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }
    void clear() {
        std::fill(words_.begin(), words_.end(), 0);
    }

    BitVector &operator^=(const BitVector &other) {
        check_same_size(other);
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector &b) {
        a ^= b;
        return a;
    }
    bool operator==(const BitVector &other) const = default;

    size_t popcount() const {
        size_t total = 0;
        for (uint64_t w : words_) {
            total += std::popcount(w);
        }
        return total;
    }
    bool none() const {
        for (uint64_t w : words_) {
            if (w) {
                return false;
            }
        }
        return true;
    }
    bool any() const {
        return !none();
    }

    /// Parity of the bitwise AND of the two vectors.
    bool dot(const BitVector &other) const {
        check_same_size(other);
        uint64_t acc = 0;
        for (size_t w = 0; w < words_.size(); w++) {
            acc ^= words_[w] & other.words_[w];
        }
        return std::popcount(acc) & 1;
    }

    /// Indices of the set bits, ascending.
    std::vector<size_t> ones() const {
        std::vector<size_t> out;
        for (size_t w = 0; w < words_.size(); w++) {
            uint64_t v = words_[w];
            while (v) {
                out.push_back(w * 64 + std::countr_zero(v));
                v &= v - 1;
            }
        }
        return out;
    }

    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }

   private:
    void check_same_size(const BitVector &other) const {
        if (other.num_bits_ != num_bits_) {
            throw std::invalid_argument("BitVector size mismatch");
        }
    }

    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace chamon

#endif
