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

#ifndef CHAMON_PAULI_OP_H
#define CHAMON_PAULI_OP_H

#include <cstdint>
#include <string>

#include "chamon/bit_vector.h"

namespace chamon {

/// Single-qubit Pauli in symplectic encoding: bit 0 is the x-part, bit 1 the z-part.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline constexpr Pauli kNonTrivialPaulis[3] = {Pauli::X, Pauli::Y, Pauli::Z};

inline bool has_x(Pauli p) {
    return static_cast<uint8_t>(p) & 1;
}
inline bool has_z(Pauli p) {
    return static_cast<uint8_t>(p) & 2;
}
/// True when the two single-qubit Paulis anticommute.
inline bool anticommute(Pauli a, Pauli b) {
    return ((has_x(a) && has_z(b)) != (has_z(a) && has_x(b)));
}
char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// An n-qubit Pauli operator modulo phase, stored as two packed bit vectors.
struct PauliOp {
    BitVector x;
    BitVector z;

    PauliOp() = default;
    explicit PauliOp(size_t num_qubits) : x(num_qubits), z(num_qubits) {
    }

    size_t num_qubits() const {
        return x.size();
    }
    Pauli get(size_t q) const {
        return static_cast<Pauli>(uint8_t(x[q]) | (uint8_t(z[q]) << 1));
    }
    void set(size_t q, Pauli p) {
        x.set(q, has_x(p));
        z.set(q, has_z(p));
    }
    /// Multiplies qubit `q` by `p` (phase dropped).
    void apply(size_t q, Pauli p) {
        if (has_x(p)) {
            x.flip(q);
        }
        if (has_z(p)) {
            z.flip(q);
        }
    }

    size_t weight() const;
    bool is_identity() const {
        return x.none() && z.none();
    }

    PauliOp &operator*=(const PauliOp &other) {
        x ^= other.x;
        z ^= other.z;
        return *this;
    }
    friend PauliOp operator*(PauliOp a, const PauliOp &b) {
        a *= b;
        return a;
    }
    bool operator==(const PauliOp &other) const = default;

    /// Dense "IXYZ" rendering, one character per qubit.
    std::string str() const;
};

/// Symplectic inner product is zero. Throws std::invalid_argument on size mismatch.
bool commutes(const PauliOp &a, const PauliOp &b);

/// Bit i set means stabilizer i reports a defect.
using Syndrome = BitVector;

}  // namespace chamon

#endif
