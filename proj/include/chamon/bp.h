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

#ifndef CHAMON_BP_H
#define CHAMON_BP_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "chamon/lattice.h"
#include "chamon/pauli_op.h"

namespace chamon {

/// Binary Tanner graph of the symplectic check matrix.
///
/// Variable v < n is the x-bit of qubit v, variable n + q is the z-bit of
/// qubit q. Check i sees exactly the bits whose flip toggles syndrome bit i:
/// x-bits under its Y/Z terms and z-bits under its X/Y terms (degree 8).
struct TannerGraph {
    static constexpr int kCheckDegree = 8;
    static constexpr int kVariableDegree = 4;

    size_t num_qubits = 0;
    /// check_vars[8 * c + k]: k-th variable of check c.
    std::vector<uint32_t> check_vars;
    /// var_edges[4 * v + k]: edge slot (8 * c + position) of the k-th check of v.
    std::vector<uint32_t> var_edges;

    explicit TannerGraph(const ChamonLattice &lattice);

    size_t num_checks() const {
        return num_qubits;
    }
    size_t num_variables() const {
        return 2 * num_qubits;
    }
};

/// Per-qubit posterior over {I, X, Y, Z}, stored in that order.
struct SoftOutput {
    std::vector<std::array<double, 4>> probabilities;

    double prob(size_t q, Pauli p) const {
        switch (p) {
            case Pauli::I:
                return probabilities[q][0];
            case Pauli::X:
                return probabilities[q][1];
            case Pauli::Y:
                return probabilities[q][2];
            default:
                return probabilities[q][3];
        }
    }
};

struct BpResult {
    SoftOutput soft;
    PauliOp hard_decision;
    bool converged = false;
    int iterations = 0;
    /// Final posterior log-likelihood ratio ln(P(0)/P(1)) of every variable bit.
    std::vector<double> posterior_llr;
};

/// Depolarizing marginal: each x-bit and z-bit is set with probability 2p/3.
std::vector<double> depolarizing_bit_priors(size_t num_qubits, double p);

inline constexpr double kLlrClamp = 30.0;

/// Product-sum belief propagation with a flooding schedule. Stops early as soon
/// as the hard decision reproduces the syndrome.
///
/// Throws std::invalid_argument when max_iters <= 0 or a prior is outside (0, 1).
BpResult bp_decode(const TannerGraph &graph, const Syndrome &syndrome, std::span<const double> priors, int max_iters);

/// One line per qubit: "<q> <llr_x> <llr_z>".
void write_llrs(const BpResult &result, std::ostream &out);

}  // namespace chamon

#endif
