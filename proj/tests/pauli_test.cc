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


#include "chamon/pauli.h"

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "chamon/gf2.h"
#include "chamon/noise.h"

using namespace chamon;

namespace {

Coord one_based(int x, int y, int z) {
    return Coord::from_one_based(x, y, z);
}

PauliOp single(const ChamonLattice &lattice, uint32_t q, Pauli p) {
    PauliOp op(lattice.num_qubits());
    op.set(q, p);
    return op;
}

PauliOp random_pauli(size_t n, CounterRng &rng) {
    PauliOp op(n);
    for (size_t q = 0; q < n; q++) {
        op.set(q, Pauli(rng.below(4)));
    }
    return op;
}

// Dense GF(2) rank on bool rows, independent of the packed implementation.
size_t dense_rank(std::vector<std::vector<bool>> rows) {
    size_t rank = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols && rank < rows.size(); c++) {
        size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot][c]) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[pivot], rows[rank]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && rows[r][c]) {
                for (size_t k = 0; k < cols; k++) {
                    rows[r][k] = rows[r][k] != rows[rank][k];
                }
            }
        }
        rank++;
    }
    return rank;
}

}  // namespace

TEST(PauliOp, Commutes) {
    PauliOp x(3), z(3);
    x.set(1, Pauli::X);
    z.set(1, Pauli::Z);
    EXPECT_TRUE(commutes(x, x));
    EXPECT_FALSE(commutes(x, z));
    PauliOp y(3);
    y.set(1, Pauli::Y);
    EXPECT_FALSE(commutes(x, y));
    EXPECT_THROW(commutes(x, PauliOp(4)), std::invalid_argument);
}

TEST(PauliOp, MultiplyAndWeight) {
    PauliOp a(4), b(4);
    a.set(0, Pauli::X);
    a.set(2, Pauli::Z);
    b.set(0, Pauli::Z);
    b.set(3, Pauli::Y);
    a *= b;
    EXPECT_EQ(a.get(0), Pauli::Y);
    EXPECT_EQ(a.get(2), Pauli::Z);
    EXPECT_EQ(a.get(3), Pauli::Y);
    EXPECT_EQ(a.weight(), 3u);
    EXPECT_EQ(a.str(), "YIZY");
    a *= a;
    EXPECT_TRUE(a.is_identity());
}

TEST(Syndrome, SingleXExample) {
    ChamonLattice lattice(4);
    uint32_t q = lattice.qubit_index(one_based(1, 2, 2));
    Syndrome s = syndrome_of(lattice, single(lattice, q, Pauli::X));
    std::set<uint32_t> expected = {
        lattice.stabilizer_index(one_based(1, 1, 2)),
        lattice.stabilizer_index(one_based(1, 3, 2)),
        lattice.stabilizer_index(one_based(1, 2, 1)),
        lattice.stabilizer_index(one_based(1, 2, 3)),
    };
    std::set<uint32_t> got;
    for (size_t k : s.ones()) {
        got.insert(uint32_t(k));
    }
    EXPECT_EQ(got, expected);
}

TEST(Syndrome, YAndZDiamonds) {
    ChamonLattice lattice(6);
    Coord c = one_based(3, 2, 2);
    uint32_t q = lattice.qubit_index(c);
    auto defects = [&](Pauli p) {
        std::set<Coord, decltype([](Coord a, Coord b) { return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z); })> out;
        for (size_t k : syndrome_of(lattice, single(lattice, q, p)).ones()) {
            out.insert(lattice.stabilizer_coord(uint32_t(k)));
        }
        return out;
    };
    auto y = defects(Pauli::Y);
    EXPECT_TRUE(y.count(lattice.shifted(c, 0, 1)) && y.count(lattice.shifted(c, 0, -1)));
    EXPECT_TRUE(y.count(lattice.shifted(c, 2, 1)) && y.count(lattice.shifted(c, 2, -1)));
    auto z = defects(Pauli::Z);
    EXPECT_TRUE(z.count(lattice.shifted(c, 0, 1)) && z.count(lattice.shifted(c, 0, -1)));
    EXPECT_TRUE(z.count(lattice.shifted(c, 1, 1)) && z.count(lattice.shifted(c, 1, -1)));
}

TEST(Syndrome, IdentityIsClean) {
    ChamonLattice lattice(4);
    EXPECT_TRUE(syndrome_of(lattice, PauliOp(lattice.num_qubits())).none());
}

TEST(Syndrome, MatchesBruteForceCommutation) {
    ChamonLattice lattice(4);
    CounterRng rng(7);
    for (int trial = 0; trial < 50; trial++) {
        PauliOp e = random_pauli(lattice.num_qubits(), rng);
        Syndrome s = syndrome_of(lattice, e);
        for (uint32_t k = 0; k < lattice.num_stabilizers(); k++) {
            EXPECT_EQ(s[k], !commutes(e, stabilizer_support(lattice, lattice.stabilizer_coord(k))));
        }
    }
}

TEST(Syndrome, Linearity) {
    ChamonLattice lattice(6);
    CounterRng rng(11);
    for (int trial = 0; trial < 1000; trial++) {
        PauliOp a = random_pauli(lattice.num_qubits(), rng);
        PauliOp b = random_pauli(lattice.num_qubits(), rng);
        PauliOp ab = a;
        ab *= b;
        ASSERT_EQ(syndrome_of(lattice, ab), syndrome_of(lattice, a) ^ syndrome_of(lattice, b));
    }
}

TEST(Syndrome, WeightOneAndPlaneParity) {
    for (int d : {4, 6}) {
        ChamonLattice lattice(d);
        auto planes = enumerate_symmetries(lattice);
        for (uint32_t q = 0; q < lattice.num_qubits(); q++) {
            for (Pauli p : kNonTrivialPaulis) {
                Syndrome s = syndrome_of(lattice, single(lattice, q, p));
                ASSERT_EQ(s.popcount(), 4u);
                std::vector<int> hit_planes_per_orientation(4, 0);
                for (const auto &plane : planes) {
                    int inside = 0;
                    for (uint32_t m : plane.members) {
                        inside += s[m];
                    }
                    ASSERT_TRUE(inside == 0 || inside == 2);
                    hit_planes_per_orientation[plane.orientation] += inside == 2;
                }
                for (int h : hit_planes_per_orientation) {
                    EXPECT_EQ(h, 2);
                }
            }
        }
    }
}

TEST(Syndrome, RandomErrorsHaveEvenPlaneCounts) {
    for (int d : {4, 6, 8}) {
        ChamonLattice lattice(d);
        auto planes = enumerate_symmetries(lattice);
        CounterRng rng(derive_key(3, {uint64_t(d)}));
        for (int trial = 0; trial < 1000; trial++) {
            Syndrome s = syndrome_of(lattice, random_pauli(lattice.num_qubits(), rng));
            for (const auto &plane : planes) {
                int inside = 0;
                for (uint32_t m : plane.members) {
                    inside += s[m];
                }
                ASSERT_EQ(inside % 2, 0);
            }
        }
    }
}

TEST(Symplectic, RoundTrip) {
    CounterRng rng(5);
    PauliOp op = random_pauli(70, rng);
    EXPECT_EQ(from_symplectic(to_symplectic(op)), op);
}

TEST(Logicals, CountMatchesIndependentRank) {
    for (int d : {4, 6}) {
        ChamonLattice lattice(d);
        size_t n = lattice.num_qubits();
        std::vector<std::vector<bool>> rows;
        for (uint32_t s = 0; s < n; s++) {
            PauliOp stab = stabilizer_support(lattice, lattice.stabilizer_coord(s));
            std::vector<bool> row(2 * n);
            for (size_t q = 0; q < n; q++) {
                row[q] = stab.x[q];
                row[n + q] = stab.z[q];
            }
            rows.push_back(row);
        }
        size_t k = n - dense_rank(rows);
        // Frozen from the dense oracle above.
        EXPECT_EQ(k, size_t(2 * d));
        LogicalBasis basis = derive_logicals(lattice);
        EXPECT_EQ(basis.k(), k);
        EXPECT_GE(basis.k(), 4u);
        EXPECT_TRUE(validate_logicals(lattice, basis, k));
    }
}

TEST(Logicals, PairingMatrixAndCommutation) {
    ChamonLattice lattice(4);
    LogicalBasis basis = derive_logicals(lattice);
    std::vector<PauliOp> stabs;
    for (uint32_t s = 0; s < lattice.num_stabilizers(); s++) {
        stabs.push_back(stabilizer_support(lattice, lattice.stabilizer_coord(s)));
    }
    for (size_t i = 0; i < basis.k(); i++) {
        for (const PauliOp *l : {&basis.pairs[i].first, &basis.pairs[i].second}) {
            for (const auto &s : stabs) {
                EXPECT_TRUE(commutes(*l, s));
            }
        }
        for (size_t j = 0; j < basis.k(); j++) {
            EXPECT_EQ(!commutes(basis.pairs[i].first, basis.pairs[j].second), i == j);
            EXPECT_TRUE(commutes(basis.pairs[i].first, basis.pairs[j].first));
            EXPECT_TRUE(commutes(basis.pairs[i].second, basis.pairs[j].second));
        }
    }
}

TEST(Logicals, NotInStabilizerGroup) {
    ChamonLattice lattice(4);
    LogicalBasis basis = derive_logicals(lattice);
    std::vector<BitVector> rows = check_matrix(lattice);
    size_t base = gf2_rank(rows);
    for (const auto &[a, b] : basis.pairs) {
        for (const PauliOp *l : {&a, &b}) {
            auto extended = rows;
            extended.push_back(to_symplectic(*l));
            EXPECT_EQ(gf2_rank(extended), base + 1);
        }
    }
}

TEST(Logicals, FailureClassification) {
    ChamonLattice lattice(4);
    LogicalBasis basis = derive_logicals(lattice);
    EXPECT_FALSE(is_logical_failure(lattice, basis, PauliOp(lattice.num_qubits())));
    EXPECT_FALSE(is_logical_failure(lattice, basis, stabilizer_support(lattice, one_based(2, 2, 2))));
    EXPECT_TRUE(is_logical_failure(lattice, basis, basis.pairs[0].first));
    EXPECT_TRUE(is_logical_failure(lattice, basis, basis.pairs.back().second));
    EXPECT_THROW(is_logical_failure(lattice, basis, single(lattice, 0, Pauli::X)), std::invalid_argument);
}

TEST(Logicals, CacheRoundTrip) {
    ChamonLattice lattice(4);
    LogicalBasis basis = derive_logicals(lattice);
    std::stringstream buffer;
    write_logicals(basis, buffer);
    auto loaded = read_logicals(lattice, buffer);
    ASSERT_TRUE(loaded.has_value());
    EXPECT_EQ(loaded->pairs, basis.pairs);

    std::istringstream wrong_d(buffer.str());
    EXPECT_FALSE(read_logicals(ChamonLattice(6), wrong_d).has_value());
    std::string text = buffer.str();
    std::istringstream truncated(text.substr(0, text.size() / 2));
    EXPECT_FALSE(read_logicals(lattice, truncated).has_value());
    std::istringstream garbage("not a cache file\n");
    EXPECT_FALSE(read_logicals(lattice, garbage).has_value());
}

TEST(Logicals, CorruptCacheIsRecomputed) {
    auto dir = std::filesystem::temp_directory_path() / "chamon_pauli_test_cache";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    {
        std::ofstream bad(dir / "logicals_d4.txt");
        bad << "chamon-logicals v1\n4\n8\nL 1 2 3\n";
    }
    ChamonLattice lattice(4);
    LogicalBasis basis = load_or_derive_logicals(lattice, dir);
    EXPECT_TRUE(validate_logicals(lattice, basis, 8));
    std::ifstream rewritten(dir / "logicals_d4.txt");
    auto again = read_logicals(lattice, rewritten);
    ASSERT_TRUE(again.has_value());
    EXPECT_EQ(again->pairs, basis.pairs);
    std::filesystem::remove_all(dir);
}
