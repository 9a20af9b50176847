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

#ifndef CHAMON_PAULI_H
#define CHAMON_PAULI_H

#include <filesystem>
#include <optional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "chamon/lattice.h"
#include "chamon/pauli_op.h"

namespace chamon {

/// Bit i is set iff `error` anticommutes with stabilizer i.
Syndrome syndrome_of(const ChamonLattice &lattice, const PauliOp &error);

/// Symplectic vector (x-block | z-block) of length 2n.
BitVector to_symplectic(const PauliOp &op);
PauliOp from_symplectic(const BitVector &v);

/// Logical operators as symplectic pairs: pairs[i].first anticommutes with
/// pairs[i].second and commutes with every other basis element.
struct LogicalBasis {
    int d = 0;
    std::vector<std::pair<PauliOp, PauliOp>> pairs;

    size_t k() const {
        return pairs.size();
    }
};

/// Symplectic Gram-Schmidt over the normalizer modulo the stabilizer group.
LogicalBasis derive_logicals(const ChamonLattice &lattice);

/// Checks commutation with every stabilizer, pairwise symplectic pairing, and
/// that k equals n minus the check-matrix rank.
bool validate_logicals(const ChamonLattice &lattice, const LogicalBasis &basis, size_t expected_k);

/// Text cache format, keyed by d. Readers return nullopt on any mismatch.
void write_logicals(const LogicalBasis &basis, std::ostream &out);
std::optional<LogicalBasis> read_logicals(const ChamonLattice &lattice, std::istream &in);

/// Loads `<cache_dir>/logicals_d<d>.txt` if present and valid, otherwise derives and
/// rewrites it. Unreadable or unwritable caches fall back to derivation.
LogicalBasis load_or_derive_logicals(const ChamonLattice &lattice, const std::filesystem::path &cache_dir);

/// True iff the zero-syndrome `residual` anticommutes with some basis logical.
/// Throws std::invalid_argument when the residual has a nonzero syndrome.
bool is_logical_failure(const ChamonLattice &lattice, const LogicalBasis &basis, const PauliOp &residual);

}  // namespace chamon

#endif
