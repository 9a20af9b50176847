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

#include "chamon/lattice.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace chamon {

ChamonLattice::ChamonLattice(int d) : d_(d) {
    if (d < 4 || d % 2 != 0) {
        throw std::invalid_argument("Chamon lattice needs an even d >= 4, got d=" + std::to_string(d));
    }
    n_ = size_t(d) * d * d / 2;
    site_index_.assign(size_t(d) * d * d, -1);
    qubit_coords_.reserve(n_);
    stab_coords_.reserve(n_);
    for (int x = 0; x < d; x++) {
        for (int y = 0; y < d; y++) {
            for (int z = 0; z < d; z++) {
                Coord c{x, y, z};
                size_t site = (size_t(x) * d + y) * d + z;
                if (is_qubit_site(c)) {
                    site_index_[site] = int32_t(qubit_coords_.size());
                    qubit_coords_.push_back(c);
                } else {
                    site_index_[site] = int32_t(stab_coords_.size());
                    stab_coords_.push_back(c);
                }
            }
        }
    }

    constexpr Pauli axis_pauli[3] = {Pauli::X, Pauli::Y, Pauli::Z};
    stab_terms_.resize(n_);
    for (uint32_t s = 0; s < n_; s++) {
        Coord v = stab_coords_[s];
        for (int axis = 0; axis < 3; axis++) {
            stab_terms_[s][2 * axis] = {qubit_index(shifted(v, axis, -1)), axis_pauli[axis]};
            stab_terms_[s][2 * axis + 1] = {qubit_index(shifted(v, axis, +1)), axis_pauli[axis]};
        }
    }

    // A Pauli on q flips the neighbours along the two axes whose stabilizer
    // term anticommutes with it.
    diamonds_.resize(3 * n_);
    for (uint32_t q = 0; q < n_; q++) {
        Coord c = qubit_coords_[q];
        for (Pauli p : kNonTrivialPaulis) {
            std::array<uint32_t, 4> flipped{};
            size_t k = 0;
            for (int axis = 0; axis < 3; axis++) {
                if (anticommute(p, axis_pauli[axis])) {
                    flipped[k++] = stabilizer_index(shifted(c, axis, -1));
                    flipped[k++] = stabilizer_index(shifted(c, axis, +1));
                }
            }
            std::sort(flipped.begin(), flipped.end());
            diamonds_[3 * q + pauli_slot(p)] = flipped;
        }
    }
}

Coord ChamonLattice::wrap(Coord c) const {
    for (int axis = 0; axis < 3; axis++) {
        int v = c[axis] % d_;
        c[axis] = v < 0 ? v + d_ : v;
    }
    return c;
}

uint32_t ChamonLattice::qubit_index(Coord c) const {
    c = wrap(c);
    if (!is_qubit_site(c)) {
        throw std::invalid_argument("coordinate is a stabilizer site, not a qubit site");
    }
    return uint32_t(site_index_[(size_t(c.x) * d_ + c.y) * d_ + c.z]);
}

uint32_t ChamonLattice::stabilizer_index(Coord c) const {
    c = wrap(c);
    if (is_qubit_site(c)) {
        throw std::invalid_argument("coordinate is a qubit site, not a stabilizer site");
    }
    return uint32_t(site_index_[(size_t(c.x) * d_ + c.y) * d_ + c.z]);
}

PauliOp stabilizer_support(const ChamonLattice &lattice, Coord v) {
    uint32_t s = lattice.stabilizer_index(v);
    PauliOp out(lattice.num_qubits());
    for (const QubitPauli &t : lattice.stabilizer_terms(s)) {
        out.set(t.qubit, t.pauli);
    }
    return out;
}

int plane_offset(const ChamonLattice &lattice, int orientation, Coord v) {
    const auto &r = kPlaneOrientations[orientation];
    auto one = v.to_one_based();
    int d = lattice.d();
    int value = (r[0] * one[0] + r[1] * one[1] + r[2] * one[2]) % d;
    return value < 0 ? value + d : value;
}

std::vector<SymmetryPlane> enumerate_symmetries(const ChamonLattice &lattice) {
    int d = lattice.d();
    std::vector<SymmetryPlane> planes;
    planes.reserve(2 * d);
    for (int o = 0; o < 4; o++) {
        for (int offset = 0; offset < d; offset += 2) {
            planes.push_back({o, kPlaneOrientations[o], offset, {}});
        }
    }
    for (uint32_t s = 0; s < lattice.num_stabilizers(); s++) {
        Coord v = lattice.stabilizer_coord(s);
        for (int o = 0; o < 4; o++) {
            planes[plane_index(lattice, o, v)].members.push_back(s);
        }
    }
    return planes;
}

std::vector<BitVector> check_matrix(const ChamonLattice &lattice) {
    size_t n = lattice.num_qubits();
    std::vector<BitVector> rows;
    rows.reserve(n);
    for (uint32_t s = 0; s < n; s++) {
        BitVector row(2 * n);
        for (const QubitPauli &t : lattice.stabilizer_terms(s)) {
            if (has_x(t.pauli)) {
                row.set(t.qubit);
            }
            if (has_z(t.pauli)) {
                row.set(n + t.qubit);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_check_matrix_sparse(const ChamonLattice &lattice, std::ostream &out) {
    for (const BitVector &row : check_matrix(lattice)) {
        bool first = true;
        for (size_t col : row.ones()) {
            out << (first ? "" : " ") << col;
            first = false;
        }
        out << '\n';
    }
}

}  // namespace chamon
