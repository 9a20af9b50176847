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

#include "chamon/gf2.h"

#include <bit>
#include <stdexcept>

namespace chamon {

namespace {

std::optional<size_t> first_one(const BitVector &v) {
    auto words = v.words();
    for (size_t w = 0; w < words.size(); w++) {
        if (words[w]) {
            return w * 64 + std::countr_zero(words[w]);
        }
    }
    return std::nullopt;
}

/// Reduced row echelon form in place; returns the pivot column of each leading row.
std::vector<size_t> rref(std::vector<BitVector> &rows, size_t num_cols) {
    std::vector<size_t> pivots;
    size_t next_row = 0;
    for (size_t col = 0; col < num_cols && next_row < rows.size(); col++) {
        size_t found = next_row;
        while (found < rows.size() && !rows[found][col]) {
            found++;
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[next_row], rows[found]);
        const BitVector &pivot_row = rows[next_row];
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != next_row && rows[r][col]) {
                rows[r] ^= pivot_row;
            }
        }
        pivots.push_back(col);
        next_row++;
    }
    rows.resize(next_row);
    return pivots;
}

}  // namespace

size_t gf2_rank(std::vector<BitVector> rows) {
    if (rows.empty()) {
        return 0;
    }
    size_t num_cols = rows.front().size();
    return rref(rows, num_cols).size();
}

std::vector<BitVector> gf2_kernel(std::vector<BitVector> rows, size_t num_cols) {
    for (const auto &r : rows) {
        if (r.size() != num_cols) {
            throw std::invalid_argument("gf2_kernel: row width mismatch");
        }
    }
    std::vector<size_t> pivots = rref(rows, num_cols);
    std::vector<bool> is_pivot(num_cols, false);
    for (size_t c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<BitVector> basis;
    basis.reserve(num_cols - pivots.size());
    for (size_t free_col = 0; free_col < num_cols; free_col++) {
        if (is_pivot[free_col]) {
            continue;
        }
        BitVector v(num_cols);
        v.set(free_col);
        for (size_t r = 0; r < pivots.size(); r++) {
            if (rows[r][free_col]) {
                v.set(pivots[r]);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

BitVector Gf2Echelon::reduce(BitVector v) const {
    for (size_t r = 0; r < rows_.size(); r++) {
        if (v[pivots_[r]]) {
            v ^= rows_[r];
        }
    }
    return v;
}

bool Gf2Echelon::insert(const BitVector &v) {
    if (v.size() != num_cols_) {
        throw std::invalid_argument("Gf2Echelon: width mismatch");
    }
    BitVector reduced = reduce(v);
    auto pivot = first_one(reduced);
    if (!pivot) {
        return false;
    }
    // Keep existing rows free of the new pivot so reduce() stays a single pass.
    for (auto &row : rows_) {
        if (row[*pivot]) {
            row ^= reduced;
        }
    }
    rows_.push_back(std::move(reduced));
    pivots_.push_back(*pivot);
    return true;
}

}  // namespace chamon
