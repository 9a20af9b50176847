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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "chamon/blossom.h"

namespace chamon {

namespace {

constexpr uint32_t kNoEdge = std::numeric_limits<uint32_t>::max();
constexpr double kWeightResolution = 1 << 20;

}  // namespace

double probability_to_weight(double probability) {
    double p = std::clamp(probability, 1e-6, 1.0 - 1e-6);
    return -std::log(p / (1.0 - p));
}

std::vector<double> PlaneGraph::edge_weights_for(const QubitWeights &weights) const {
    std::vector<double> out(edges.size(), 1.0);
    if (weights.empty()) {
        return out;
    }
    double lowest = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < edges.size(); k++) {
        double w = std::numeric_limits<double>::infinity();
        for (const QubitPauli &src : edges[k].sources) {
            w = std::min(w, weights[3 * size_t(src.qubit) + pauli_slot(src.pauli)]);
        }
        out[k] = w;
        lowest = std::min(lowest, w);
    }
    if (lowest < 0) {
        for (double &w : out) {
            w -= lowest;
        }
    }
    return out;
}

void PlaneGraph::apply_weights(const QubitWeights &weights) {
    uniform = weights.empty();
    std::vector<double> w = edge_weights_for(weights);
    for (size_t k = 0; k < edges.size(); k++) {
        edges[k].weight = w[k];
    }
}

PlaneGraph build_plane_graph(
    const ChamonLattice &lattice, const SymmetryPlane &plane, int plane_number, const QubitWeights &weights) {
    if (!weights.empty() && weights.size() != 3 * lattice.num_qubits()) {
        throw std::invalid_argument("build_plane_graph: weight table must have 3n entries");
    }
    PlaneGraph graph;
    graph.plane = plane_number;
    graph.nodes = plane.members;
    std::sort(graph.nodes.begin(), graph.nodes.end());
    graph.local_index.assign(lattice.num_stabilizers(), -1);
    for (size_t i = 0; i < graph.nodes.size(); i++) {
        graph.local_index[graph.nodes[i]] = int32_t(i);
    }

    std::map<std::pair<uint32_t, uint32_t>, size_t> edge_of_pair;
    for (uint32_t q = 0; q < lattice.num_qubits(); q++) {
        for (Pauli p : kNonTrivialPaulis) {
            uint32_t hit[4];
            size_t count = 0;
            for (uint32_t s : lattice.diamond(q, p)) {
                if (graph.local_index[s] >= 0) {
                    hit[count++] = uint32_t(graph.local_index[s]);
                }
            }
            if (count == 0) {
                continue;
            }
            if (count != 2) {
                throw std::logic_error("build_plane_graph: single-qubit error meets a plane in an odd or >2 defect set");
            }
            auto key = std::minmax(hit[0], hit[1]);
            auto [it, inserted] = edge_of_pair.try_emplace({key.first, key.second}, graph.edges.size());
            if (inserted) {
                graph.edges.push_back({key.first, key.second, 1.0, {}});
            }
            graph.edges[it->second].sources.push_back({q, p});
        }
    }

    std::vector<uint32_t> degree(graph.nodes.size() + 1, 0);
    for (const auto &e : graph.edges) {
        degree[e.a + 1]++;
        degree[e.b + 1]++;
    }
    for (size_t i = 1; i < degree.size(); i++) {
        degree[i] += degree[i - 1];
    }
    graph.adj_offsets = degree;
    graph.adj_edges.assign(2 * graph.edges.size(), 0);
    graph.adj_nodes.assign(2 * graph.edges.size(), 0);
    std::vector<uint32_t> cursor(degree.begin(), degree.end() - 1);
    for (uint32_t k = 0; k < graph.edges.size(); k++) {
        uint32_t a = graph.edges[k].a;
        uint32_t b = graph.edges[k].b;
        graph.adj_nodes[cursor[a]] = b;
        graph.adj_edges[cursor[a]++] = k;
        graph.adj_nodes[cursor[b]] = a;
        graph.adj_edges[cursor[b]++] = k;
    }

    size_t m = graph.nodes.size();
    graph.hop_distance.assign(m * m, std::numeric_limits<uint16_t>::max());
    graph.hop_parent_edge.assign(m * m, kNoEdge);
    std::vector<uint32_t> frontier;
    for (uint32_t source = 0; source < m; source++) {
        uint16_t *dist = &graph.hop_distance[size_t(source) * m];
        uint32_t *parent = &graph.hop_parent_edge[size_t(source) * m];
        frontier.assign(1, source);
        dist[source] = 0;
        for (size_t head = 0; head < frontier.size(); head++) {
            uint32_t u = frontier[head];
            for (uint32_t k = graph.adj_offsets[u]; k < graph.adj_offsets[u + 1]; k++) {
                uint32_t e = graph.adj_edges[k];
                uint32_t v = graph.adj_nodes[k];
                if (dist[v] == std::numeric_limits<uint16_t>::max()) {
                    dist[v] = uint16_t(dist[u] + 1);
                    parent[v] = e;
                    frontier.push_back(v);
                }
            }
        }
    }
    graph.apply_weights(weights);
    return graph;
}

std::vector<uint32_t> DefectMetric::path(const PlaneGraph &graph, size_t i, size_t j) const {
    if (i > j) {
        std::vector<uint32_t> reversed = path(graph, j, i);
        std::reverse(reversed.begin(), reversed.end());
        return reversed;
    }
    const uint32_t *parents = parent_edge.data() + i * num_plane_nodes;
    uint32_t start = uint32_t(graph.local_index[defects[i]]);
    uint32_t node = uint32_t(graph.local_index[defects[j]]);
    std::vector<uint32_t> out{graph.nodes[node]};
    while (node != start) {
        uint32_t e = parents[node];
        if (e == kNoEdge) {
            throw std::logic_error("DefectMetric::path: target not reached");
        }
        node = graph.other_end(e, node);
        out.push_back(graph.nodes[node]);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

DefectMetric defect_distances(
    const PlaneGraph &graph, std::span<const uint32_t> defects, std::span<const double> edge_weights) {
    if (!edge_weights.empty() && edge_weights.size() != graph.edges.size()) {
        throw std::invalid_argument("defect_distances: one weight per edge required");
    }
    DefectMetric metric;
    metric.defects.assign(defects.begin(), defects.end());
    size_t m = defects.size();
    size_t num_nodes = graph.num_nodes();
    metric.num_plane_nodes = num_nodes;
    metric.distance.assign(m * m, 0.0);
    metric.parent_edge.assign(m * num_nodes, kNoEdge);

    std::vector<int32_t> defect_slot(num_nodes, -1);
    for (size_t i = 0; i < m; i++) {
        if (defects[i] >= graph.local_index.size() || graph.local_index[defects[i]] < 0) {
            throw std::invalid_argument("defect_distances: defect is not on this plane");
        }
        defect_slot[graph.local_index[defects[i]]] = int32_t(i);
    }

    if (edge_weights.empty() && graph.uniform) {
        for (size_t i = 0; i < m; i++) {
            size_t row = size_t(graph.local_index[defects[i]]) * num_nodes;
            for (size_t j = 0; j < m; j++) {
                metric.distance[i * m + j] = graph.hop_distance[row + size_t(graph.local_index[defects[j]])];
            }
            std::copy_n(graph.hop_parent_edge.begin() + row, num_nodes, metric.parent_edge.begin() + i * num_nodes);
        }
        return metric;
    }

    // Per-slot weights keep the inner loop on contiguous arrays.
    std::vector<double> slot_weight(graph.adj_edges.size());
    for (size_t k = 0; k < slot_weight.size(); k++) {
        uint32_t e = graph.adj_edges[k];
        slot_weight[k] = edge_weights.empty() ? graph.edges[e].weight : edge_weights[e];
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(num_nodes);
    using Item = std::pair<double, uint32_t>;
    std::vector<Item> heap;
    heap.reserve(graph.adj_edges.size());
    auto later = [](const Item &x, const Item &y) { return x.first > y.first; };
    for (size_t i = 0; i < m; i++) {
        std::fill(dist.begin(), dist.end(), kInf);
        uint32_t *parents = metric.parent_edge.data() + i * num_nodes;
        uint32_t source = uint32_t(graph.local_index[defects[i]]);
        dist[source] = 0;
        heap.assign(1, {0.0, source});
        // Distances are symmetric, so only defects after i need settling here.
        size_t remaining = m - i;
        while (!heap.empty() && remaining > 0) {
            std::pop_heap(heap.begin(), heap.end(), later);
            auto [du, u] = heap.back();
            heap.pop_back();
            if (du > dist[u]) {
                continue;
            }
            if (defect_slot[u] >= int32_t(i)) {
                size_t j = size_t(defect_slot[u]);
                metric.distance[i * m + j] = du;
                metric.distance[j * m + i] = du;
                remaining--;
            }
            for (uint32_t k = graph.adj_offsets[u]; k < graph.adj_offsets[u + 1]; k++) {
                uint32_t v = graph.adj_nodes[k];
                double dv = du + slot_weight[k];
                if (dv < dist[v]) {
                    dist[v] = dv;
                    parents[v] = graph.adj_edges[k];
                    heap.push_back({dv, v});
                    std::push_heap(heap.begin(), heap.end(), later);
                }
            }
        }
        if (remaining > 0) {
            throw std::logic_error("defect_distances: plane graph is disconnected");
        }
    }
    return metric;
}

std::vector<int> min_weight_perfect_matching_mates(const DefectMetric &metric) {
    int m = int(metric.size());
    std::vector<int64_t> scaled(size_t(m) * m, 0);
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            // Use the upper triangle for both halves so the matrix is exactly symmetric.
            double w = i < j ? metric.at(i, j) : metric.at(j, i);
            scaled[size_t(i) * m + j] = i == j ? 0 : std::llround(w * kWeightResolution);
        }
    }
    BlossomMatcher matcher;
    return matcher.solve(m, scaled);
}

MatchingResult min_weight_perfect_matching(const DefectMetric &metric) {
    std::vector<int> mate = min_weight_perfect_matching_mates(metric);
    MatchingResult result;
    for (size_t i = 0; i < mate.size(); i++) {
        size_t j = size_t(mate[i]);
        if (i < j) {
            uint32_t a = metric.defects[i];
            uint32_t b = metric.defects[j];
            result.pairs.emplace_back(std::min(a, b), std::max(a, b));
            result.total_weight += metric.at(i, j);
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    return result;
}

void write_plane_graph(const ChamonLattice &lattice, const PlaneGraph &graph, std::ostream &out) {
    out << "plane " << graph.plane << " nodes " << graph.nodes.size() << " edges " << graph.edges.size() << '\n';
    for (size_t i = 0; i < graph.nodes.size(); i++) {
        auto c = lattice.stabilizer_coord(graph.nodes[i]).to_one_based();
        out << "node " << i << ' ' << graph.nodes[i] << ' ' << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
    }
    for (const auto &e : graph.edges) {
        out << "edge " << e.a << ' ' << e.b << ' ' << e.weight;
        for (const auto &src : e.sources) {
            out << ' ' << src.qubit << pauli_char(src.pauli);
        }
        out << '\n';
    }
}

}  // namespace chamon
