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

#ifndef CHAMON_LATTICE_H
#define CHAMON_LATTICE_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "chamon/bit_vector.h"
#include "chamon/pauli_op.h"

namespace chamon {

/// A vertex of the periodic d x d x d lattice, 0-based on every axis.
///
/// The conventional labelling is 1-based; `from_one_based` / `to_one_based`
/// convert at the boundary. A vertex is a qubit site when its 1-based
/// coordinate sum is odd, and a stabilizer site when it is even.
struct Coord {
    int x = 0;
    int y = 0;
    int z = 0;

    static Coord from_one_based(int x, int y, int z) {
        return {x - 1, y - 1, z - 1};
    }
    std::array<int, 3> to_one_based() const {
        return {x + 1, y + 1, z + 1};
    }
    int operator[](int axis) const {
        return axis == 0 ? x : axis == 1 ? y : z;
    }
    int &operator[](int axis) {
        return axis == 0 ? x : axis == 1 ? y : z;
    }
    bool operator==(const Coord &) const = default;
};

/// Parity of the 1-based coordinate sum: 1 for qubit sites, 0 for stabilizer sites.
inline int site_parity(Coord c) {
    return (c.x + c.y + c.z + 3) & 1;
}

/// A (qubit, Pauli) pair: one single-qubit error location.
struct QubitPauli {
    uint32_t qubit;
    Pauli pauli;
    bool operator==(const QubitPauli &) const = default;
};

/// Index of Pauli X/Y/Z in 0..2 for table lookups.
inline int pauli_slot(Pauli p) {
    switch (p) {
        case Pauli::X:
            return 0;
        case Pauli::Y:
            return 1;
        case Pauli::Z:
            return 2;
        default:
            return -1;
    }
}

/// The cubic Chamon code on a periodic d x d x d lattice.
///
/// Stabilizer at even vertex v is X on v +- x, Y on v +- y, Z on v +- z.
/// There are n = d^3 / 2 qubits and as many stabilizer generators.
/// Immutable after construction.
class ChamonLattice {
   public:
    /// Throws std::invalid_argument unless d is even and at least 4.
    explicit ChamonLattice(int d);

    int d() const {
        return d_;
    }
    size_t num_qubits() const {
        return n_;
    }
    size_t num_stabilizers() const {
        return n_;
    }

    /// Wraps each component into [0, d).
    Coord wrap(Coord c) const;
    Coord shifted(Coord c, int axis, int delta) const {
        c[axis] += delta;
        return wrap(c);
    }

    bool is_qubit_site(Coord c) const {
        return site_parity(c) == 1;
    }
    /// Throws std::invalid_argument for a stabilizer-site coordinate.
    uint32_t qubit_index(Coord c) const;
    /// Throws std::invalid_argument for a qubit-site coordinate.
    uint32_t stabilizer_index(Coord c) const;
    Coord qubit_coord(uint32_t q) const {
        return qubit_coords_[q];
    }
    Coord stabilizer_coord(uint32_t s) const {
        return stab_coords_[s];
    }

    /// The six (qubit, Pauli) terms of stabilizer `s`, ordered -x, +x, -y, +y, -z, +z.
    const std::array<QubitPauli, 6> &stabilizer_terms(uint32_t s) const {
        return stab_terms_[s];
    }
    /// The four stabilizers flipped by Pauli `p` on qubit `q`, ascending.
    const std::array<uint32_t, 4> &diamond(uint32_t q, Pauli p) const {
        return diamonds_[3 * q + pauli_slot(p)];
    }

   private:
    int d_;
    size_t n_;
    std::vector<int32_t> site_index_;
    std::vector<Coord> qubit_coords_;
    std::vector<Coord> stab_coords_;
    std::vector<std::array<QubitPauli, 6>> stab_terms_;
    std::vector<std::array<uint32_t, 4>> diamonds_;
};

/// Weight-6 stabilizer at the even vertex `v`. Throws for odd-parity v.
PauliOp stabilizer_support(const ChamonLattice &lattice, Coord v);

/// Plane orientations with r_x fixed to +1.
inline constexpr std::array<std::array<int, 3>, 4> kPlaneOrientations = {{
    {1, 1, 1},
    {1, 1, -1},
    {1, -1, 1},
    {1, -1, -1},
}};

/// Value of r . v (mod d) on 1-based coordinates, in [0, d).
int plane_offset(const ChamonLattice &lattice, int orientation, Coord v);

/// Stabilizers on one diagonal plane; their product is the identity.
struct SymmetryPlane {
    int orientation;
    std::array<int, 3> r;
    int offset;
    std::vector<uint32_t> members;
};

/// All 2d planes, ordered by orientation then offset, so that plane index is
/// orientation * (d / 2) + offset / 2.
std::vector<SymmetryPlane> enumerate_symmetries(const ChamonLattice &lattice);

inline int plane_index(const ChamonLattice &lattice, int orientation, Coord v) {
    return orientation * (lattice.d() / 2) + plane_offset(lattice, orientation, v) / 2;
}

/// Symplectic check matrix: row i is stabilizer i as (x-block | z-block), 2n columns.
std::vector<BitVector> check_matrix(const ChamonLattice &lattice);

/// One row per line: sorted nonzero column indices, space separated.
void write_check_matrix_sparse(const ChamonLattice &lattice, std::ostream &out);

}  // namespace chamon

#endif
