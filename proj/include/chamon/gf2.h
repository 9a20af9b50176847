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

#ifndef CHAMON_GF2_H
#define CHAMON_GF2_H

#include <cstddef>
#include <optional>
#include <vector>

#include "chamon/bit_vector.h"

namespace chamon {

/// Rank over GF(2) by dense row reduction.
size_t gf2_rank(std::vector<BitVector> rows);

/// Basis of { v : row . v = 0 for every row }. Every row must have `num_cols` bits.
std::vector<BitVector> gf2_kernel(std::vector<BitVector> rows, size_t num_cols);

/// Row-echelon basis that grows one vector at a time.
class Gf2Echelon {
   public:
    explicit Gf2Echelon(size_t num_cols) : num_cols_(num_cols) {
    }

    /// Reduces `v` against the current basis; the result is zero iff `v` is in the span.
    BitVector reduce(BitVector v) const;
    /// Inserts `v` if independent. Returns whether the rank grew.
    bool insert(const BitVector &v);
    size_t rank() const {
        return rows_.size();
    }

   private:
    size_t num_cols_;
    std::vector<BitVector> rows_;
    std::vector<size_t> pivots_;
};

}  // namespace chamon

#endif
