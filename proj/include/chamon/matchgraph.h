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

#ifndef CHAMON_MATCHGRAPH_H
#define CHAMON_MATCHGRAPH_H

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "chamon/lattice.h"

namespace chamon {

/// Per-(qubit, Pauli) weights indexed by 3 * qubit + pauli_slot(P).
/// An empty vector means every weight is 1.0.
using QubitWeights = std::vector<double>;

/// Log-likelihood weight -ln(p / (1 - p)) with p clamped to [1e-6, 1 - 1e-6].
double probability_to_weight(double probability);

/// One merged edge of a plane graph: all single-qubit errors whose diamond
/// meets the plane in exactly the stabilizers `a` and `b`.
struct PlaneEdge {
    uint32_t a;
    uint32_t b;
    double weight;
    std::vector<QubitPauli> sources;
};

/// Decoding graph of one symmetry plane. Nodes are the plane's stabilizers
/// (ascending); endpoints in `edges` are local node indices.
struct PlaneGraph {
    int plane;
    std::vector<uint32_t> nodes;
    std::vector<PlaneEdge> edges;
    /// Stabilizer index -> local node index, or -1 off the plane.
    std::vector<int32_t> local_index;
    /// CSR adjacency: neighbours of node u are adj_edges[adj_offsets[u] .. adj_offsets[u + 1]).
    std::vector<uint32_t> adj_offsets;
    std::vector<uint32_t> adj_edges;
    /// Neighbour reached through each adjacency slot, parallel to adj_edges.
    std::vector<uint32_t> adj_nodes;
    /// True while every edge weight is 1.0, so the hop tables below apply.
    bool uniform = true;
    /// Row-major num_nodes x num_nodes breadth-first hop counts and the parent
    /// edge of every node on the BFS tree of each source.
    std::vector<uint16_t> hop_distance;
    std::vector<uint32_t> hop_parent_edge;

    size_t num_nodes() const {
        return nodes.size();
    }
    uint32_t other_end(uint32_t edge, uint32_t node) const {
        return edges[edge].a == node ? edges[edge].b : edges[edge].a;
    }

    /// Each edge gets the min of its source weights; the whole plane is then
    /// shifted up if that left a negative weight.
    std::vector<double> edge_weights_for(const QubitWeights &weights) const;
    void apply_weights(const QubitWeights &weights);
};

/// Throws std::logic_error if some single-qubit error meets the plane in a
/// number of stabilizers other than 0 or 2.
PlaneGraph build_plane_graph(
    const ChamonLattice &lattice, const SymmetryPlane &plane, int plane_number, const QubitWeights &weights = {});

/// Shortest-path metric restricted to a set of defects on one plane.
struct DefectMetric {
    /// Stabilizer indices of the defects, in the caller's order.
    std::vector<uint32_t> defects;
    /// Row-major m x m distances.
    std::vector<double> distance;
    /// Row i of an m x num_nodes table: predecessor edge of each node on the
    /// shortest-path tree from defect i, or UINT32_MAX. Searches stop once the
    /// defects after i are settled, so row i is only valid toward those; use path().
    std::vector<uint32_t> parent_edge;
    size_t num_plane_nodes = 0;

    size_t size() const {
        return defects.size();
    }
    double at(size_t i, size_t j) const {
        return distance[i * defects.size() + j];
    }
    /// Stabilizers along the shortest path from defect i to defect j, both ends included.
    std::vector<uint32_t> path(const PlaneGraph &graph, size_t i, size_t j) const;
};

/// Dijkstra from every defect over the plane graph, using `edge_weights` when
/// given and the graph's own weights otherwise. Throws std::invalid_argument
/// when a defect is not on the plane.
DefectMetric defect_distances(
    const PlaneGraph &graph, std::span<const uint32_t> defects, std::span<const double> edge_weights = {});

struct MatchingResult {
    /// Stabilizer-index pairs, smaller index first, sorted.
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    double total_weight = 0;
};

/// Exact minimum-weight perfect matching on the complete defect graph.
/// Distances are rounded to multiples of 2^-20 before solving.
MatchingResult min_weight_perfect_matching(const DefectMetric &metric);

/// Same, as local pair indices into `metric.defects` (mate[i]).
std::vector<int> min_weight_perfect_matching_mates(const DefectMetric &metric);

/// Line-oriented dump: "node <local> <stabilizer> <x> <y> <z>" then
/// "edge <a> <b> <weight> <qubit><P> ...".
void write_plane_graph(const ChamonLattice &lattice, const PlaneGraph &graph, std::ostream &out);

}  // namespace chamon

#endif
