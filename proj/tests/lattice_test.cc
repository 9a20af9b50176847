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

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace chamon;

namespace {

Coord one_based(int x, int y, int z) {
    return Coord::from_one_based(x, y, z);
}

// Symplectic product computed straight from the per-qubit Pauli letters.
bool anticommute_by_letters(const PauliOp &a, const PauliOp &b) {
    int count = 0;
    for (size_t q = 0; q < a.x.size(); q++) {
        Pauli pa = a.get(q);
        Pauli pb = b.get(q);
        count += pa != Pauli::I && pb != Pauli::I && pa != pb;
    }
    return count % 2 == 1;
}

}  // namespace

TEST(Lattice, Counts) {
    EXPECT_EQ(ChamonLattice(4).num_qubits(), 32u);
    EXPECT_EQ(ChamonLattice(4).num_stabilizers(), 32u);
    EXPECT_EQ(ChamonLattice(22).num_qubits(), 5324u);
}

TEST(Lattice, RejectsBadDistance) {
    EXPECT_THROW(ChamonLattice(3), std::invalid_argument);
    EXPECT_THROW(ChamonLattice(2), std::invalid_argument);
    EXPECT_THROW(ChamonLattice(0), std::invalid_argument);
    EXPECT_THROW(ChamonLattice(7), std::invalid_argument);
}

TEST(Lattice, IndexRoundTrip) {
    for (int d : {4, 6}) {
        ChamonLattice lattice(d);
        std::set<uint32_t> qubits, stabs;
        for (int x = 0; x < d; x++) {
            for (int y = 0; y < d; y++) {
                for (int z = 0; z < d; z++) {
                    Coord c{x, y, z};
                    if ((x + y + z + 3) % 2 == 1) {
                        uint32_t q = lattice.qubit_index(c);
                        EXPECT_EQ(lattice.qubit_coord(q), c);
                        qubits.insert(q);
                        EXPECT_THROW(lattice.stabilizer_index(c), std::invalid_argument);
                    } else {
                        uint32_t s = lattice.stabilizer_index(c);
                        EXPECT_EQ(lattice.stabilizer_coord(s), c);
                        stabs.insert(s);
                        EXPECT_THROW(lattice.qubit_index(c), std::invalid_argument);
                    }
                }
            }
        }
        EXPECT_EQ(qubits.size(), lattice.num_qubits());
        EXPECT_EQ(stabs.size(), lattice.num_stabilizers());
        EXPECT_EQ(*qubits.rbegin(), lattice.num_qubits() - 1);
    }
}

TEST(Lattice, StabilizerExample) {
    ChamonLattice lattice(4);
    PauliOp s = stabilizer_support(lattice, one_based(2, 2, 2));
    EXPECT_EQ(s.weight(), 6u);
    EXPECT_EQ(s.get(lattice.qubit_index(one_based(1, 2, 2))), Pauli::X);
    EXPECT_EQ(s.get(lattice.qubit_index(one_based(3, 2, 2))), Pauli::X);
    EXPECT_EQ(s.get(lattice.qubit_index(one_based(2, 1, 2))), Pauli::Y);
    EXPECT_EQ(s.get(lattice.qubit_index(one_based(2, 3, 2))), Pauli::Y);
    EXPECT_EQ(s.get(lattice.qubit_index(one_based(2, 2, 1))), Pauli::Z);
    EXPECT_EQ(s.get(lattice.qubit_index(one_based(2, 2, 3))), Pauli::Z);
}

TEST(Lattice, StabilizerWraps) {
    ChamonLattice lattice(4);
    PauliOp s = stabilizer_support(lattice, one_based(4, 4, 4));
    EXPECT_EQ(s.get(lattice.qubit_index(one_based(1, 4, 4))), Pauli::X);
    EXPECT_EQ(s.get(lattice.qubit_index(one_based(3, 4, 4))), Pauli::X);
    EXPECT_EQ(s.get(lattice.qubit_index(one_based(4, 1, 4))), Pauli::Y);
    EXPECT_EQ(s.get(lattice.qubit_index(one_based(4, 4, 1))), Pauli::Z);
    EXPECT_THROW(stabilizer_support(lattice, one_based(1, 2, 2)), std::invalid_argument);
}

TEST(Lattice, StabilizersCommute) {
    for (int d : {4, 6}) {
        ChamonLattice lattice(d);
        std::vector<PauliOp> stabs;
        for (uint32_t s = 0; s < lattice.num_stabilizers(); s++) {
            stabs.push_back(stabilizer_support(lattice, lattice.stabilizer_coord(s)));
        }
        for (size_t a = 0; a < stabs.size(); a++) {
            for (size_t b = a + 1; b < stabs.size(); b++) {
                ASSERT_FALSE(anticommute_by_letters(stabs[a], stabs[b])) << a << " " << b;
            }
        }
    }
}

TEST(Lattice, TermsAndDiamondsAreConsistent) {
    ChamonLattice lattice(6);
    std::vector<int> touched(lattice.num_qubits(), 0);
    for (uint32_t s = 0; s < lattice.num_stabilizers(); s++) {
        for (const QubitPauli &t : lattice.stabilizer_terms(s)) {
            touched[t.qubit]++;
        }
    }
    for (int count : touched) {
        EXPECT_EQ(count, 6);
    }
    // Diamond of (q, P) = stabilizers holding a term on q that anticommutes with P.
    for (uint32_t q = 0; q < lattice.num_qubits(); q++) {
        for (Pauli p : kNonTrivialPaulis) {
            std::set<uint32_t> expected;
            for (uint32_t s = 0; s < lattice.num_stabilizers(); s++) {
                for (const QubitPauli &t : lattice.stabilizer_terms(s)) {
                    if (t.qubit == q && t.pauli != p) {
                        expected.insert(s);
                    }
                }
            }
            const auto &diamond = lattice.diamond(q, p);
            EXPECT_EQ(std::set<uint32_t>(diamond.begin(), diamond.end()), expected);
        }
    }
}

TEST(Lattice, CheckMatrixShape) {
    ChamonLattice lattice(4);
    auto rows = check_matrix(lattice);
    ASSERT_EQ(rows.size(), 32u);
    size_t n = lattice.num_qubits();
    std::vector<int> column_use(n, 0);
    for (const auto &row : rows) {
        ASSERT_EQ(row.size(), 64u);
        size_t x_ones = 0, z_ones = 0;
        for (size_t q = 0; q < n; q++) {
            x_ones += row[q];
            z_ones += row[n + q];
            column_use[q] += row[q] || row[n + q];
        }
        EXPECT_EQ(x_ones, 4u);
        EXPECT_EQ(z_ones, 4u);
    }
    for (int c : column_use) {
        EXPECT_EQ(c, 6);
    }
}

TEST(Lattice, CheckMatrixSparseExport) {
    ChamonLattice lattice(4);
    std::ostringstream out;
    write_check_matrix_sparse(lattice, out);
    std::istringstream in(out.str());
    std::string line;
    size_t lines = 0;
    while (std::getline(in, line)) {
        std::istringstream cols(line);
        size_t c, count = 0, previous = 0;
        while (cols >> c) {
            if (count) {
                EXPECT_LT(previous, c);
            }
            previous = c;
            count++;
        }
        EXPECT_EQ(count, 8u);
        lines++;
    }
    EXPECT_EQ(lines, 32u);
}

TEST(Symmetries, PlaneCounts) {
    for (int d : {4, 6, 8}) {
        ChamonLattice lattice(d);
        auto planes = enumerate_symmetries(lattice);
        ASSERT_EQ(planes.size(), size_t(2 * d));
        std::vector<int> appearances(lattice.num_stabilizers(), 0);
        for (size_t i = 0; i < planes.size(); i++) {
            EXPECT_EQ(planes[i].members.size(), size_t(d * d));
            EXPECT_EQ(planes[i].offset % 2, 0);
            EXPECT_EQ(int(i), plane_index(lattice, planes[i].orientation, lattice.stabilizer_coord(planes[i].members[0])));
            for (uint32_t s : planes[i].members) {
                appearances[s]++;
            }
        }
        for (int a : appearances) {
            EXPECT_EQ(a, 4);
        }
    }
}

TEST(Symmetries, PlaneExample) {
    ChamonLattice lattice(4);
    EXPECT_EQ(plane_offset(lattice, 0, one_based(2, 2, 2)), 2);
    uint32_t s = lattice.stabilizer_index(one_based(2, 2, 2));
    auto planes = enumerate_symmetries(lattice);
    bool found = false;
    for (const auto &plane : planes) {
        if (plane.r == std::array<int, 3>{1, 1, 1} && plane.offset == 2) {
            found = std::find(plane.members.begin(), plane.members.end(), s) != plane.members.end();
        }
    }
    EXPECT_TRUE(found);
}

TEST(Symmetries, ProductIsIdentity) {
    for (int d : {4, 6, 8}) {
        ChamonLattice lattice(d);
        for (const auto &plane : enumerate_symmetries(lattice)) {
            PauliOp product(lattice.num_qubits());
            for (uint32_t s : plane.members) {
                product *= stabilizer_support(lattice, lattice.stabilizer_coord(s));
            }
            EXPECT_TRUE(product.is_identity()) << "d=" << d << " plane offset " << plane.offset;
        }
    }
}

TEST(Symmetries, MembershipMatchesDefinition) {
    ChamonLattice lattice(6);
    for (const auto &plane : enumerate_symmetries(lattice)) {
        for (uint32_t s = 0; s < lattice.num_stabilizers(); s++) {
            auto c = lattice.stabilizer_coord(s).to_one_based();
            int value = plane.r[0] * c[0] + plane.r[1] * c[1] + plane.r[2] * c[2];
            bool member = ((value % 6) + 6) % 6 == plane.offset;
            bool listed = std::find(plane.members.begin(), plane.members.end(), s) != plane.members.end();
            EXPECT_EQ(member, listed);
        }
    }
}
