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


#include "chamon/matchgraph.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "chamon/blossom.h"
#include "chamon/noise.h"
#include "chamon/pauli.h"

using namespace chamon;

namespace {

Coord one_based(int x, int y, int z) {
    return Coord::from_one_based(x, y, z);
}

bool on_plane(const ChamonLattice &lattice, const SymmetryPlane &plane, uint32_t s) {
    auto c = lattice.stabilizer_coord(s).to_one_based();
    int v = plane.r[0] * c[0] + plane.r[1] * c[1] + plane.r[2] * c[2];
    int d = lattice.d();
    return ((v % d) + d) % d == plane.offset;
}

// Plane adjacency rebuilt from syndromes of single-qubit errors.
std::map<uint32_t, std::set<uint32_t>> oracle_adjacency(const ChamonLattice &lattice, const SymmetryPlane &plane) {
    std::map<uint32_t, std::set<uint32_t>> adj;
    for (uint32_t q = 0; q < lattice.num_qubits(); q++) {
        for (Pauli p : kNonTrivialPaulis) {
            PauliOp e(lattice.num_qubits());
            e.set(q, p);
            std::vector<uint32_t> hit;
            for (size_t s : syndrome_of(lattice, e).ones()) {
                if (on_plane(lattice, plane, uint32_t(s))) {
                    hit.push_back(uint32_t(s));
                }
            }
            if (hit.size() == 2) {
                adj[hit[0]].insert(hit[1]);
                adj[hit[1]].insert(hit[0]);
            }
        }
    }
    return adj;
}

int bfs_hops(const std::map<uint32_t, std::set<uint32_t>> &adj, uint32_t from, uint32_t to) {
    std::map<uint32_t, int> dist{{from, 0}};
    std::deque<uint32_t> queue{from};
    while (!queue.empty()) {
        uint32_t u = queue.front();
        queue.pop_front();
        if (u == to) {
            return dist[u];
        }
        for (uint32_t v : adj.at(u)) {
            if (!dist.count(v)) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return -1;
}

DefectMetric random_metric(size_t m, CounterRng &rng) {
    DefectMetric metric;
    metric.defects.resize(m);
    std::iota(metric.defects.begin(), metric.defects.end(), 0);
    metric.distance.assign(m * m, 0.0);
    for (size_t i = 0; i < m; i++) {
        for (size_t j = i + 1; j < m; j++) {
            // Uniform in (0, 1].
            double w = 1.0 - rng.uniform();
            metric.distance[i * m + j] = w;
            metric.distance[j * m + i] = w;
        }
    }
    return metric;
}

double brute_force(const DefectMetric &metric, std::vector<size_t> left) {
    if (left.empty()) {
        return 0;
    }
    size_t a = left.back();
    left.pop_back();
    double best = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < left.size(); k++) {
        std::vector<size_t> rest = left;
        size_t b = rest[k];
        rest.erase(rest.begin() + long(k));
        best = std::min(best, metric.at(a, b) + brute_force(metric, rest));
    }
    return best;
}

// Bitmask dynamic program over subsets: exact for up to ~20 nodes.
double subset_dp(const DefectMetric &metric) {
    size_t m = metric.size();
    std::vector<double> best(size_t(1) << m, std::numeric_limits<double>::infinity());
    best[0] = 0;
    for (size_t mask = 0; mask < best.size(); mask++) {
        if (std::isinf(best[mask])) {
            continue;
        }
        size_t i = 0;
        while (i < m && (mask >> i & 1)) {
            i++;
        }
        if (i == m) {
            continue;
        }
        for (size_t j = i + 1; j < m; j++) {
            if (!(mask >> j & 1)) {
                size_t next = mask | (size_t(1) << i) | (size_t(1) << j);
                best[next] = std::min(best[next], best[mask] + metric.at(i, j));
            }
        }
    }
    return best.back();
}

}  // namespace

// X on (1,2,2) at d=4 flips (1,1,2), (1,2,1), (1,2,3) and (1,3,2). Along
// r=(1,1,1) the first two have coordinate sum 0 mod 4 and the last two 2 mod 4.
std::set<uint32_t> example_edge(const ChamonLattice &lattice, int offset) {
    auto planes = enumerate_symmetries(lattice);
    const SymmetryPlane *target = nullptr;
    int number = 0;
    for (size_t i = 0; i < planes.size(); i++) {
        if (planes[i].r == std::array<int, 3>{1, 1, 1} && planes[i].offset == offset) {
            target = &planes[i];
            number = int(i);
        }
    }
    if (!target) {
        return {};
    }
    PlaneGraph graph = build_plane_graph(lattice, *target, number);
    uint32_t q = lattice.qubit_index(one_based(1, 2, 2));
    std::set<uint32_t> ends;
    int hits = 0;
    for (const PlaneEdge &e : graph.edges) {
        if (std::find(e.sources.begin(), e.sources.end(), QubitPauli{q, Pauli::X}) != e.sources.end()) {
            ends = {graph.nodes[e.a], graph.nodes[e.b]};
            hits++;
        }
    }
    return hits == 1 ? ends : std::set<uint32_t>{};
}

TEST(PlaneGraph, ExampleEdge) {
    ChamonLattice lattice(4);
    auto s = [&](int x, int y, int z) { return lattice.stabilizer_index(one_based(x, y, z)); };
    EXPECT_EQ(example_edge(lattice, 0), (std::set<uint32_t>{s(1, 1, 2), s(1, 2, 1)}));
    EXPECT_EQ(example_edge(lattice, 2), (std::set<uint32_t>{s(1, 2, 3), s(1, 3, 2)}));
}

TEST(PlaneGraph, EdgesMatchOracleWithoutHyperedges) {
    for (int d : {4, 6}) {
        ChamonLattice lattice(d);
        auto planes = enumerate_symmetries(lattice);
        for (size_t i = 0; i < planes.size(); i++) {
            PlaneGraph graph = build_plane_graph(lattice, planes[i], int(i));
            // Every (q, P) meeting the plane appears as a source exactly once.
            std::map<std::pair<uint32_t, int>, int> source_count;
            size_t expected_sources = 0;
            for (uint32_t q = 0; q < lattice.num_qubits(); q++) {
                for (Pauli p : kNonTrivialPaulis) {
                    int inside = 0;
                    for (uint32_t s : lattice.diamond(q, p)) {
                        inside += on_plane(lattice, planes[i], s);
                    }
                    ASSERT_TRUE(inside == 0 || inside == 2);
                    expected_sources += inside == 2;
                }
            }
            size_t sources = 0;
            std::set<std::pair<uint32_t, uint32_t>> pairs;
            for (const PlaneEdge &e : graph.edges) {
                EXPECT_DOUBLE_EQ(e.weight, 1.0);
                EXPECT_TRUE(pairs.insert({e.a, e.b}).second) << "parallel edges were not merged";
                for (const QubitPauli &src : e.sources) {
                    std::set<uint32_t> hit;
                    for (uint32_t s : lattice.diamond(src.qubit, src.pauli)) {
                        if (on_plane(lattice, planes[i], s)) {
                            hit.insert(s);
                        }
                    }
                    EXPECT_EQ(hit, (std::set<uint32_t>{graph.nodes[e.a], graph.nodes[e.b]}));
                    EXPECT_EQ(++source_count[std::pair(src.qubit, int(src.pauli))], 1);
                    sources++;
                }
            }
            EXPECT_EQ(sources, expected_sources);
        }
    }
}

TEST(PlaneGraph, ProbabilityToWeight) {
    EXPECT_NEAR(probability_to_weight(0.5), 0.0, 1e-15);
    EXPECT_NEAR(probability_to_weight(0.1), std::log(9.0), 1e-12);
    EXPECT_NEAR(probability_to_weight(0.0), std::log((1 - 1e-6) / 1e-6), 1e-9);
    EXPECT_NEAR(probability_to_weight(1.0), -std::log((1 - 1e-6) / 1e-6), 1e-9);
}

TEST(PlaneGraph, MinMergeAndShift) {
    ChamonLattice lattice(6);
    auto planes = enumerate_symmetries(lattice);
    PlaneGraph graph = build_plane_graph(lattice, planes[3], 3);
    CounterRng rng(8);
    QubitWeights weights(3 * lattice.num_qubits());
    for (double &w : weights) {
        w = 0.5 + rng.uniform();
    }
    auto merged = graph.edge_weights_for(weights);
    for (size_t k = 0; k < graph.edges.size(); k++) {
        double expected = std::numeric_limits<double>::infinity();
        for (const QubitPauli &src : graph.edges[k].sources) {
            expected = std::min(expected, weights[3 * src.qubit + pauli_slot(src.pauli)]);
        }
        EXPECT_EQ(merged[k], expected);
    }
    for (double &w : weights) {
        w -= 2.0;
    }
    auto shifted = graph.edge_weights_for(weights);
    double lowest = *std::min_element(shifted.begin(), shifted.end());
    EXPECT_NEAR(lowest, 0.0, 1e-12);
    for (size_t k = 0; k < merged.size(); k++) {
        EXPECT_NEAR(shifted[k] - merged[k], shifted[0] - merged[0], 1e-12);
    }
    EXPECT_EQ(graph.edge_weights_for({}), std::vector<double>(graph.edges.size(), 1.0));
}

TEST(PlaneGraph, DumpFormat) {
    ChamonLattice lattice(4);
    auto planes = enumerate_symmetries(lattice);
    PlaneGraph graph = build_plane_graph(lattice, planes[0], 0);
    std::ostringstream out;
    write_plane_graph(lattice, graph, out);
    std::istringstream in(out.str());
    std::string line;
    size_t nodes = 0, edges = 0;
    while (std::getline(in, line)) {
        nodes += line.rfind("node ", 0) == 0;
        edges += line.rfind("edge ", 0) == 0;
    }
    EXPECT_EQ(nodes, graph.nodes.size());
    EXPECT_EQ(edges, graph.edges.size());
}

TEST(DefectDistances, UniformMatchesBfs) {
    ChamonLattice lattice(8);
    auto planes = enumerate_symmetries(lattice);
    CounterRng rng(21);
    for (size_t i : {size_t(0), size_t(5), size_t(11)}) {
        PlaneGraph graph = build_plane_graph(lattice, planes[i], int(i));
        auto adj = oracle_adjacency(lattice, planes[i]);
        for (int trial = 0; trial < 350; trial++) {
            uint32_t a = graph.nodes[rng.below(graph.nodes.size())];
            uint32_t b = graph.nodes[rng.below(graph.nodes.size())];
            std::vector<uint32_t> defects{a, b};
            DefectMetric metric = defect_distances(graph, defects);
            int hops = bfs_hops(adj, a, b);
            ASSERT_EQ(metric.at(0, 1), double(hops));
            ASSERT_EQ(metric.at(1, 0), double(hops));
            auto path = metric.path(graph, 0, 1);
            ASSERT_EQ(path.size(), size_t(hops) + 1);
            EXPECT_EQ(path.front(), a);
            EXPECT_EQ(path.back(), b);
            for (size_t k = 0; k + 1 < path.size(); k++) {
                EXPECT_TRUE(adj.at(path[k]).count(path[k + 1]));
            }
        }
    }
}

TEST(DefectDistances, WeightedMatchesBellmanFord) {
    ChamonLattice lattice(6);
    auto planes = enumerate_symmetries(lattice);
    CounterRng rng(33);
    PlaneGraph graph = build_plane_graph(lattice, planes[7], 7);
    std::vector<double> w(graph.edges.size());
    for (double &x : w) {
        x = 0.01 + 5 * rng.uniform();
    }
    std::vector<uint32_t> defects;
    for (size_t k = 0; k < graph.nodes.size(); k += 3) {
        defects.push_back(graph.nodes[k]);
    }
    DefectMetric metric = defect_distances(graph, defects, w);
    size_t n = graph.nodes.size();
    for (size_t i = 0; i < defects.size(); i++) {
        std::vector<double> dist(n, std::numeric_limits<double>::infinity());
        dist[size_t(graph.local_index[defects[i]])] = 0;
        for (size_t round = 0; round < n; round++) {
            for (size_t k = 0; k < graph.edges.size(); k++) {
                const PlaneEdge &e = graph.edges[k];
                dist[e.b] = std::min(dist[e.b], dist[e.a] + w[k]);
                dist[e.a] = std::min(dist[e.a], dist[e.b] + w[k]);
            }
        }
        for (size_t j = 0; j < defects.size(); j++) {
            EXPECT_NEAR(metric.at(i, j), dist[size_t(graph.local_index[defects[j]])], 1e-9);
            if (i != j) {
                auto path = metric.path(graph, i, j);
                EXPECT_EQ(path.front(), defects[i]);
                EXPECT_EQ(path.back(), defects[j]);
            }
            for (size_t k = 0; k < defects.size(); k++) {
                EXPECT_LE(metric.at(i, j), metric.at(i, k) + metric.at(k, j) + 1e-9);
            }
        }
    }
}

TEST(DefectDistances, AdjacentPairAndErrors) {
    ChamonLattice lattice(4);
    auto planes = enumerate_symmetries(lattice);
    PlaneGraph graph = build_plane_graph(lattice, planes[0], 0);
    std::vector<double> w(graph.edges.size(), 2.5);
    w[0] = 0.75;
    std::vector<uint32_t> pair{graph.nodes[graph.edges[0].a], graph.nodes[graph.edges[0].b]};
    EXPECT_DOUBLE_EQ(defect_distances(graph, pair, w).at(0, 1), 0.75);
    uint32_t off_plane = 0;
    while (graph.local_index[off_plane] >= 0) {
        off_plane++;
    }
    std::vector<uint32_t> bad{graph.nodes[0], off_plane};
    EXPECT_THROW(defect_distances(graph, bad), std::invalid_argument);
    EXPECT_THROW(defect_distances(graph, pair, std::vector<double>(3, 1.0)), std::invalid_argument);
}

TEST(Matching, TrivialSizes) {
    DefectMetric empty;
    MatchingResult none = min_weight_perfect_matching(empty);
    EXPECT_TRUE(none.pairs.empty());
    EXPECT_EQ(none.total_weight, 0.0);

    DefectMetric two;
    two.defects = {9, 4};
    two.distance = {0, 3.5, 3.5, 0};
    MatchingResult one = min_weight_perfect_matching(two);
    ASSERT_EQ(one.pairs.size(), 1u);
    EXPECT_EQ(one.pairs[0], (std::pair<uint32_t, uint32_t>{4, 9}));
    EXPECT_DOUBLE_EQ(one.total_weight, 3.5);
}

TEST(Matching, BruteForceAgreement) {
    CounterRng rng(1234);
    for (int instance = 0; instance < 1000; instance++) {
        size_t m = 2 * (1 + rng.below(4));
        DefectMetric metric = random_metric(m, rng);
        MatchingResult result = min_weight_perfect_matching(metric);
        std::vector<size_t> all(m);
        std::iota(all.begin(), all.end(), 0);
        ASSERT_NEAR(result.total_weight, brute_force(metric, all), 1e-5) << "instance " << instance;
        std::set<uint32_t> covered;
        for (auto [a, b] : result.pairs) {
            covered.insert(a);
            covered.insert(b);
        }
        ASSERT_EQ(covered.size(), m);
    }
}

TEST(Matching, SubsetDpAgreementLarger) {
    CounterRng rng(77);
    for (int instance = 0; instance < 100; instance++) {
        size_t m = 10 + 2 * rng.below(4);
        DefectMetric metric = random_metric(m, rng);
        ASSERT_NEAR(min_weight_perfect_matching(metric).total_weight, subset_dp(metric), 1e-5) << instance;
    }
}

TEST(Matching, BeatsRandomAlternatives) {
    CounterRng rng(555);
    for (int instance = 0; instance < 20; instance++) {
        size_t m = 2 * (5 + rng.below(20));
        DefectMetric metric = random_metric(m, rng);
        double best = min_weight_perfect_matching(metric).total_weight;
        std::vector<size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        for (int alt = 0; alt < 1000; alt++) {
            for (size_t k = m - 1; k > 0; k--) {
                std::swap(order[k], order[rng.below(k + 1)]);
            }
            double w = 0;
            for (size_t k = 0; k < m; k += 2) {
                w += metric.at(order[k], order[k + 1]);
            }
            ASSERT_LE(best, w + 1e-5);
        }
    }
}

TEST(Matching, ScaleInvariantPairing) {
    CounterRng rng(4321);
    for (int instance = 0; instance < 200; instance++) {
        size_t m = 2 * (1 + rng.below(12));
        DefectMetric metric = random_metric(m, rng);
        auto base = min_weight_perfect_matching(metric).pairs;
        for (double lambda : {0.5, 3.0, 17.0}) {
            DefectMetric scaled = metric;
            for (double &x : scaled.distance) {
                x *= lambda;
            }
            ASSERT_EQ(min_weight_perfect_matching(scaled).pairs, base) << instance << " " << lambda;
        }
    }
}

TEST(Blossom, RejectsNegativeWeights) {
    BlossomMatcher matcher;
    std::vector<int64_t> w = {0, -1, 2, 1, -1, 0, 3, 1, 2, 3, 0, 1, 1, 1, 1, 0};
    EXPECT_THROW(matcher.solve(4, w), std::invalid_argument);
}
