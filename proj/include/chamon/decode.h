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

#ifndef CHAMON_DECODE_H
#define CHAMON_DECODE_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chamon/bp.h"
#include "chamon/lattice.h"
#include "chamon/matchgraph.h"
#include "chamon/noise.h"
#include "chamon/pauli_op.h"

namespace chamon {

enum class DecoderKind { basic, greedy, belief };

std::string_view decoder_name(DecoderKind kind);
/// Throws std::invalid_argument for unknown names.
DecoderKind parse_decoder(std::string_view name);

/// Union over all plane matchings of the matched defect pairs.
struct DefectGraph {
    struct Edge {
        uint32_t a;
        uint32_t b;
        int plane;
        /// Stabilizers on the shortest plane path from a to b, ends included.
        std::vector<uint32_t> path;
    };
    std::vector<uint32_t> vertices;
    std::vector<Edge> edges;
};

/// Arc of consecutive positions lo, lo + 1, ..., lo + length - 1 (mod d).
struct Arc {
    int lo = 0;
    int length = 1;

    /// Offset of `position` from lo, in [0, d).
    int local(int position, int d) const {
        int t = (position - lo) % d;
        return t < 0 ? t + d : t;
    }
    bool contains(int position, int d) const {
        return local(position, d) < length;
    }
};

/// Per-axis arcs (x, y, z) enclosing a cluster.
struct Box {
    std::array<Arc, 3> axes;
};

struct Cluster {
    /// Defect stabilizers, ascending.
    std::vector<uint32_t> defects;
    /// Defects plus every stabilizer on the cluster's matched-edge paths, ascending.
    std::vector<uint32_t> support;
    /// nullopt when some axis would need the whole circle.
    std::optional<Box> box;
};

/// Connected components of the defect graph, ordered by smallest member.
/// Boxes are left empty; see bounding_box.
std::vector<Cluster> cluster_defects(const DefectGraph &graph);

/// Minimal covering arc per axis of the cluster support. nullopt if any axis is fully covered.
std::optional<Box> bounding_box(const ChamonLattice &lattice, const Cluster &cluster);

/// Per-axis covering arcs; an axis that needs the full circle is nullopt.
std::array<std::optional<Arc>, 3> covering_arcs(const ChamonLattice &lattice, const std::vector<uint32_t> &support);

struct SweepResult {
    PauliOp correction;
    Syndrome residual;
    size_t moves = 0;
    /// Flipped stabilizers that landed outside the box.
    size_t box_escapes = 0;
};

/// Broom-style local corrector: pushes defects down in z into the bottom two
/// z-layers of the box, then down in x into the bottom two x-layers.
SweepResult sweep_correct(const ChamonLattice &lattice, std::span<const uint32_t> defects, const Box &box);

enum class DecodeStatus { corrected, sweep_residual_failure, no_box_failure_guess };

std::string_view status_name(DecodeStatus status);

struct DecodeDiagnostics {
    size_t defects = 0;
    size_t greedy_flips = 0;
    size_t matched_pairs = 0;
    size_t clusters = 0;
    size_t largest_cluster = 0;
    size_t guessed_boxes = 0;
    size_t sweep_moves = 0;
    size_t box_escapes = 0;
    int bp_iterations = 0;
    bool bp_converged = false;
    int64_t bp_ns = 0;
    int64_t matching_ns = 0;
    int64_t cluster_ns = 0;
    int64_t sweep_ns = 0;
};

struct DecodeOutcome {
    PauliOp correction;
    DecodeStatus status = DecodeStatus::corrected;
    /// Syndrome left uncorrected; zero exactly when status is corrected.
    Syndrome residual;
    DecodeDiagnostics diagnostics;
};

/// Matching-on-symmetries decoder and its greedy and belief-propagation variants.
///
/// Holds the planes, plane graphs and Tanner graph for one lattice. All decode
/// methods are const and safe to call concurrently; randomness for guessed
/// boxes comes from the caller's generator.
class ChamonDecoder {
   public:
    explicit ChamonDecoder(const ChamonLattice &lattice);

    const ChamonLattice &lattice() const {
        return lattice_;
    }
    const std::vector<SymmetryPlane> &planes() const {
        return planes_;
    }
    const std::vector<PlaneGraph> &plane_graphs() const {
        return graphs_;
    }
    const TannerGraph &tanner_graph() const {
        return tanner_;
    }
    int bp_iterations() const {
        return 10 * lattice_.d();
    }

    DecodeOutcome decode_basic(const Syndrome &syndrome, CounterRng &rng) const;
    DecodeOutcome decode_greedy(const Syndrome &syndrome, CounterRng &rng) const;
    DecodeOutcome decode_belief(const Syndrome &syndrome, double p, CounterRng &rng) const;
    DecodeOutcome decode(DecoderKind kind, const Syndrome &syndrome, double p, CounterRng &rng) const;

    /// Every (qubit, Pauli) whose four diamond defects are all present in `syndrome`.
    std::vector<QubitPauli> find_diamonds(const Syndrome &syndrome) const;

    /// Per-(qubit, Pauli) matching weights from BP marginals.
    QubitWeights belief_weights(const SoftOutput &soft) const;

    /// Matches the defects of every plane and collects the matched pairs.
    DefectGraph match_planes(const Syndrome &syndrome, const QubitWeights &weights) const;

    /// Clustering, boxes and sweeping shared by all three pipelines.
    DecodeOutcome correct_clusters(const DefectGraph &graph, CounterRng &rng) const;

   private:
    DecodeOutcome decode_with_weights(const Syndrome &syndrome, const QubitWeights &weights, CounterRng &rng) const;

    ChamonLattice lattice_;
    std::vector<SymmetryPlane> planes_;
    std::vector<PlaneGraph> graphs_;
    /// plane_of_[4 * s + o]: plane index of stabilizer s in orientation o.
    std::vector<uint16_t> plane_of_;
    TannerGraph tanner_;
};

}  // namespace chamon

#endif
