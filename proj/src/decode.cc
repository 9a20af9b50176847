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

#include "chamon/decode.h"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "chamon/pauli.h"

namespace chamon {

std::string_view decoder_name(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::basic:
            return "basic";
        case DecoderKind::greedy:
            return "greedy";
        case DecoderKind::belief:
            return "belief";
    }
    return "?";
}

DecoderKind parse_decoder(std::string_view name) {
    if (name == "basic") {
        return DecoderKind::basic;
    }
    if (name == "greedy") {
        return DecoderKind::greedy;
    }
    if (name == "belief") {
        return DecoderKind::belief;
    }
    throw std::invalid_argument("unknown decoder '" + std::string(name) + "' (expected basic, greedy or belief)");
}

std::string_view status_name(DecodeStatus status) {
    switch (status) {
        case DecodeStatus::corrected:
            return "corrected";
        case DecodeStatus::sweep_residual_failure:
            return "sweep_residual_failure";
        case DecodeStatus::no_box_failure_guess:
            return "no_box_failure_guess";
    }
    return "?";
}

namespace {

class Stopwatch {
   public:
    int64_t lap() {
        auto now = std::chrono::steady_clock::now();
        int64_t ns = std::chrono::duration_cast<std::chrono::nanoseconds>(now - start_).count();
        start_ = now;
        return ns;
    }

   private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct DisjointSets {
    std::vector<uint32_t> parent;

    explicit DisjointSets(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
};

}  // namespace

std::vector<Cluster> cluster_defects(const DefectGraph &graph) {
    std::vector<uint32_t> vertices = graph.vertices;
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    auto slot = [&](uint32_t s) {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), s);
        if (it == vertices.end() || *it != s) {
            throw std::invalid_argument("cluster_defects: edge endpoint is not a vertex");
        }
        return uint32_t(it - vertices.begin());
    };

    DisjointSets sets(vertices.size());
    for (const auto &e : graph.edges) {
        sets.unite(slot(e.a), slot(e.b));
    }

    // Roots are the smallest slot of each component, so clusters come out ordered.
    std::vector<int32_t> cluster_of(vertices.size(), -1);
    std::vector<Cluster> clusters;
    for (uint32_t i = 0; i < vertices.size(); i++) {
        uint32_t root = sets.find(i);
        if (cluster_of[root] < 0) {
            cluster_of[root] = int32_t(clusters.size());
            clusters.emplace_back();
        }
        Cluster &c = clusters[cluster_of[root]];
        c.defects.push_back(vertices[i]);
        c.support.push_back(vertices[i]);
    }
    for (const auto &e : graph.edges) {
        Cluster &c = clusters[cluster_of[sets.find(slot(e.a))]];
        c.support.insert(c.support.end(), e.path.begin(), e.path.end());
    }
    for (Cluster &c : clusters) {
        std::sort(c.support.begin(), c.support.end());
        c.support.erase(std::unique(c.support.begin(), c.support.end()), c.support.end());
    }
    return clusters;
}

std::array<std::optional<Arc>, 3> covering_arcs(const ChamonLattice &lattice, const std::vector<uint32_t> &support) {
    int d = lattice.d();
    std::array<std::optional<Arc>, 3> arcs;
    if (support.empty()) {
        for (auto &a : arcs) {
            a = Arc{0, 1};
        }
        return arcs;
    }
    for (int axis = 0; axis < 3; axis++) {
        std::vector<uint8_t> occupied(d, 0);
        for (uint32_t s : support) {
            occupied[lattice.stabilizer_coord(s)[axis]] = 1;
        }
        int start = int(std::find(occupied.begin(), occupied.end(), 1) - occupied.begin());
        // Largest run of empty positions; the arc starts right after it.
        int best_gap = 0;
        int best_lo = start;
        int run = 0;
        for (int step = 1; step <= d; step++) {
            int pos = (start + step) % d;
            if (!occupied[pos]) {
                run++;
            } else {
                if (run > best_gap) {
                    best_gap = run;
                    best_lo = pos;
                }
                run = 0;
            }
        }
        if (best_gap > 0) {
            arcs[axis] = Arc{best_lo, d - best_gap};
        }
    }
    return arcs;
}

std::optional<Box> bounding_box(const ChamonLattice &lattice, const Cluster &cluster) {
    auto arcs = covering_arcs(lattice, cluster.support);
    Box box;
    for (int axis = 0; axis < 3; axis++) {
        if (!arcs[axis]) {
            return std::nullopt;
        }
        box.axes[axis] = *arcs[axis];
    }
    return box;
}

namespace {

/// One sweep phase along `axis`: repeatedly takes the highest layer (box-local)
/// holding defects and replaces each defect u there by a single-qubit Pauli on
/// u - axis, until every defect sits in local layers 0 and 1.
class Sweeper {
   public:
    Sweeper(const ChamonLattice &lattice, const Box &box, std::span<const uint32_t> defects, SweepResult &out)
        : lattice_(lattice), box_(box), d_(lattice.d()), out_(out), live_(defects.begin(), defects.end()) {
    }

    /// `preferred` flips the two same-layer neighbours along `preferred_axis`,
    /// `alternative` those along `alternative_axis`. The alternative is used only
    /// when its neighbours stay in the box and the preferred ones do not.
    void sweep(int axis, Pauli preferred, int preferred_axis, Pauli alternative, int alternative_axis) {
        const Arc &arc = box_.axes[axis];
        int o1 = axis == 2 ? 0 : 1;
        int o2 = axis == 2 ? 1 : 2;
        while (true) {
            int top = -1;
            for (uint32_t s : live_) {
                top = std::max(top, arc.local(lattice_.stabilizer_coord(s)[axis], d_));
            }
            if (top <= 1) {
                return;
            }
            std::vector<std::pair<std::array<int, 2>, uint32_t>> layer;
            for (uint32_t s : live_) {
                Coord c = lattice_.stabilizer_coord(s);
                if (arc.local(c[axis], d_) == top) {
                    layer.push_back({{box_.axes[o1].local(c[o1], d_), box_.axes[o2].local(c[o2], d_)}, s});
                }
            }
            std::sort(layer.begin(), layer.end());
            for (const auto &[key, s] : layer) {
                Coord q_coord = lattice_.shifted(lattice_.stabilizer_coord(s), axis, -1);
                uint32_t q = lattice_.qubit_index(q_coord);
                bool preferred_ok = laterals_inside(q_coord, preferred_axis);
                bool alternative_ok = laterals_inside(q_coord, alternative_axis);
                apply(q, (alternative_ok && !preferred_ok) ? alternative : preferred);
            }
        }
    }

    void finish() {
        out_.residual = Syndrome(lattice_.num_stabilizers());
        for (uint32_t s : live_) {
            out_.residual.set(s);
        }
    }

   private:
    bool laterals_inside(Coord q, int lateral_axis) const {
        const Arc &arc = box_.axes[lateral_axis];
        return arc.contains(lattice_.shifted(q, lateral_axis, -1)[lateral_axis], d_) &&
               arc.contains(lattice_.shifted(q, lateral_axis, +1)[lateral_axis], d_);
    }

    void apply(uint32_t q, Pauli p) {
        out_.correction.apply(q, p);
        out_.moves++;
        for (uint32_t s : lattice_.diamond(q, p)) {
            if (!live_.erase(s)) {
                live_.insert(s);
            }
            Coord c = lattice_.stabilizer_coord(s);
            for (int axis = 0; axis < 3; axis++) {
                if (!box_.axes[axis].contains(c[axis], d_)) {
                    out_.box_escapes++;
                    break;
                }
            }
        }
    }

    const ChamonLattice &lattice_;
    const Box &box_;
    int d_;
    SweepResult &out_;
    std::set<uint32_t> live_;
};

}  // namespace

SweepResult sweep_correct(const ChamonLattice &lattice, std::span<const uint32_t> defects, const Box &box) {
    SweepResult result;
    result.correction = PauliOp(lattice.num_qubits());
    Sweeper sweeper(lattice, box, defects, result);
    // z-sweep: X on u - z flips u -+ y at z - 1, Y flips u -+ x.
    sweeper.sweep(2, Pauli::X, 1, Pauli::Y, 0);
    // x-sweep: Z on u - x flips u -+ y at x - 1, Y flips u -+ z.
    sweeper.sweep(0, Pauli::Z, 1, Pauli::Y, 2);
    sweeper.finish();
    return result;
}

ChamonDecoder::ChamonDecoder(const ChamonLattice &lattice)
    : lattice_(lattice), planes_(enumerate_symmetries(lattice)), tanner_(lattice) {
    graphs_.reserve(planes_.size());
    for (size_t p = 0; p < planes_.size(); p++) {
        graphs_.push_back(build_plane_graph(lattice_, planes_[p], int(p)));
    }
    plane_of_.resize(4 * lattice_.num_stabilizers());
    for (uint32_t s = 0; s < lattice_.num_stabilizers(); s++) {
        for (int o = 0; o < 4; o++) {
            plane_of_[4 * s + o] = uint16_t(plane_index(lattice_, o, lattice_.stabilizer_coord(s)));
        }
    }
}

std::vector<QubitPauli> ChamonDecoder::find_diamonds(const Syndrome &syndrome) const {
    std::vector<QubitPauli> found;
    if (syndrome.none()) {
        return found;
    }
    for (uint32_t q = 0; q < lattice_.num_qubits(); q++) {
        for (Pauli p : kNonTrivialPaulis) {
            const auto &diamond = lattice_.diamond(q, p);
            if (syndrome[diamond[0]] && syndrome[diamond[1]] && syndrome[diamond[2]] && syndrome[diamond[3]]) {
                found.push_back({q, p});
            }
        }
    }
    return found;
}

QubitWeights ChamonDecoder::belief_weights(const SoftOutput &soft) const {
    QubitWeights weights(3 * lattice_.num_qubits());
    for (size_t q = 0; q < lattice_.num_qubits(); q++) {
        for (Pauli p : kNonTrivialPaulis) {
            weights[3 * q + pauli_slot(p)] = probability_to_weight(soft.prob(q, p));
        }
    }
    return weights;
}

DefectGraph ChamonDecoder::match_planes(const Syndrome &syndrome, const QubitWeights &weights) const {
    DefectGraph graph;
    graph.vertices = [&] {
        std::vector<uint32_t> v;
        for (size_t s : syndrome.ones()) {
            v.push_back(uint32_t(s));
        }
        return v;
    }();
    std::vector<std::vector<uint32_t>> buckets(planes_.size());
    for (uint32_t s : graph.vertices) {
        for (int o = 0; o < 4; o++) {
            buckets[plane_of_[4 * s + o]].push_back(s);
        }
    }
    for (size_t p = 0; p < planes_.size(); p++) {
        if (buckets[p].empty()) {
            continue;
        }
        const PlaneGraph &plane_graph = graphs_[p];
        std::vector<double> edge_weights;
        if (!weights.empty()) {
            edge_weights = plane_graph.edge_weights_for(weights);
        }
        DefectMetric metric = defect_distances(plane_graph, buckets[p], edge_weights);
        std::vector<int> mate = min_weight_perfect_matching_mates(metric);
        for (size_t i = 0; i < mate.size(); i++) {
            size_t j = size_t(mate[i]);
            if (i < j) {
                graph.edges.push_back({metric.defects[i], metric.defects[j], int(p), metric.path(plane_graph, i, j)});
            }
        }
    }
    return graph;
}

DecodeOutcome ChamonDecoder::correct_clusters(const DefectGraph &graph, CounterRng &rng) const {
    DecodeOutcome outcome;
    outcome.correction = PauliOp(lattice_.num_qubits());
    outcome.residual = Syndrome(lattice_.num_stabilizers());
    auto &diag = outcome.diagnostics;
    diag.defects = graph.vertices.size();
    diag.matched_pairs = graph.edges.size();

    Stopwatch clock;
    std::vector<Cluster> clusters = cluster_defects(graph);
    diag.clusters = clusters.size();
    bool guessed_any = false;
    for (Cluster &c : clusters) {
        diag.largest_cluster = std::max(diag.largest_cluster, c.defects.size());
        auto arcs = covering_arcs(lattice_, c.support);
        bool guessed = !arcs[0] || !arcs[1] || !arcs[2];
        Box box;
        for (int axis = 0; axis < 3; axis++) {
            // No enclosing box: guess a random one that leaves out a single layer per axis.
            box.axes[axis] = guessed ? Arc{int(rng.below(uint64_t(lattice_.d()))), lattice_.d() - 1} : *arcs[axis];
        }
        if (guessed) {
            diag.guessed_boxes++;
            guessed_any = true;
        } else {
            c.box = box;
        }
        // Boxes of guessed clusters are not recorded: the cluster has no enclosing box.
        SweepResult sweep = sweep_correct(lattice_, c.defects, box);
        outcome.correction *= sweep.correction;
        outcome.residual ^= sweep.residual;
        diag.sweep_moves += sweep.moves;
        diag.box_escapes += sweep.box_escapes;
    }
    diag.sweep_ns = clock.lap();

    if (outcome.residual.any()) {
        outcome.status = guessed_any ? DecodeStatus::no_box_failure_guess : DecodeStatus::sweep_residual_failure;
    }
    return outcome;
}

DecodeOutcome ChamonDecoder::decode_with_weights(
    const Syndrome &syndrome, const QubitWeights &weights, CounterRng &rng) const {
    if (syndrome.size() != lattice_.num_stabilizers()) {
        throw std::invalid_argument("decode: syndrome length mismatch");
    }
    Stopwatch clock;
    DefectGraph graph = match_planes(syndrome, weights);
    int64_t matching_ns = clock.lap();
    DecodeOutcome outcome = correct_clusters(graph, rng);
    outcome.diagnostics.matching_ns = matching_ns;
    return outcome;
}

DecodeOutcome ChamonDecoder::decode_basic(const Syndrome &syndrome, CounterRng &rng) const {
    return decode_with_weights(syndrome, {}, rng);
}

DecodeOutcome ChamonDecoder::decode_greedy(const Syndrome &syndrome, CounterRng &rng) const {
    std::vector<QubitPauli> diamonds = find_diamonds(syndrome);
    PauliOp greedy(lattice_.num_qubits());
    Syndrome remaining = syndrome;
    for (const QubitPauli &qp : diamonds) {
        greedy.apply(qp.qubit, qp.pauli);
        for (uint32_t s : lattice_.diamond(qp.qubit, qp.pauli)) {
            remaining.flip(s);
        }
    }
    DecodeOutcome outcome = decode_with_weights(remaining, {}, rng);
    outcome.correction *= greedy;
    outcome.diagnostics.greedy_flips = diamonds.size();
    outcome.diagnostics.defects = syndrome.popcount();
    return outcome;
}

DecodeOutcome ChamonDecoder::decode_belief(const Syndrome &syndrome, double p, CounterRng &rng) const {
    if (syndrome.none()) {
        return decode_with_weights(syndrome, {}, rng);
    }
    Stopwatch clock;
    std::vector<double> priors = depolarizing_bit_priors(lattice_.num_qubits(), p);
    for (double &prior : priors) {
        prior = std::clamp(prior, 1e-9, 1.0 - 1e-9);
    }
    BpResult bp = bp_decode(tanner_, syndrome, priors, bp_iterations());
    int64_t bp_ns = clock.lap();
    DecodeOutcome outcome = decode_with_weights(syndrome, belief_weights(bp.soft), rng);
    outcome.diagnostics.bp_ns = bp_ns;
    outcome.diagnostics.bp_iterations = bp.iterations;
    outcome.diagnostics.bp_converged = bp.converged;
    return outcome;
}

DecodeOutcome ChamonDecoder::decode(DecoderKind kind, const Syndrome &syndrome, double p, CounterRng &rng) const {
    switch (kind) {
        case DecoderKind::basic:
            return decode_basic(syndrome, rng);
        case DecoderKind::greedy:
            return decode_greedy(syndrome, rng);
        case DecoderKind::belief:
            return decode_belief(syndrome, p, rng);
    }
    throw std::invalid_argument("decode: unknown decoder kind");
}

}  // namespace chamon
